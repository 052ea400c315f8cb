#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cact/change_action.hpp"
#include "cact/differential.hpp"
#include "cact/finite.hpp"
#include "cact/monoid.hpp"

namespace cact {

using nlohmann::json;

constexpr int document_version = 1;

// Canonical form: nlohmann's object keys are sorted and dump() emits no
// insignificant whitespace, so dumping is byte-stable by construction.
inline std::string canonical_dump(const json& j) { return j.dump(); }

inline json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("document is not valid JSON");
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

inline std::vector<std::string> default_names(elem n) {
  std::vector<std::string> names;
  for (elem i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

namespace detail {

inline const json& expect_field(const json& j, const char* key) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline void expect_version(const json& j) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find("v");
  if (it == j.end()) return;  // unversioned documents are accepted as v1
  if (!it->is_number_integer() || it->get<std::int64_t>() != document_version)
    throw SchemaError("unsupported document version");
}

inline elem expect_index(const json& j, elem bound, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw SchemaError(std::string(what) + " must be a nonnegative integer");
  std::int64_t v = j.get<std::int64_t>();
  if (std::uint64_t(v) >= bound)
    throw SchemaError(std::string(what) + " index " + std::to_string(v) + " out of range");
  return elem(v);
}

inline std::vector<std::string> expect_names(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<std::string> names;
  for (const auto& e : j) {
    if (!e.is_string()) throw SchemaError(std::string(what) + " entries must be strings");
    names.push_back(e.get<std::string>());
  }
  return names;
}

// rows x cols table of element indices below bound.
inline std::vector<elem> expect_table(const json& j, std::size_t rows, std::size_t cols,
                                      elem bound, const char* what) {
  if (!j.is_array() || j.size() != rows)
    throw SchemaError(std::string(what) + " must have " + std::to_string(rows) + " rows");
  std::vector<elem> out;
  out.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols)
      throw SchemaError(std::string(what) + " rows must have " + std::to_string(cols) +
                        " entries");
    for (const auto& cell : row) out.push_back(expect_index(cell, bound, what));
  }
  return out;
}

inline json table_to_json(const std::vector<elem>& table, std::size_t rows, std::size_t cols) {
  json out = json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(table[r * cols + c]);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

inline FiniteMonoid monoid_from_json(const json& j, std::vector<std::string>* names_out = nullptr) {
  std::vector<std::string> names = detail::expect_names(detail::expect_field(j, "elements"),
                                                        "delta elements");
  FiniteMonoid m;
  m.n = elem(names.size());
  m.plus = detail::expect_table(detail::expect_field(j, "plus"), m.n, m.n, m.n, "plus table");
  m.zero = detail::expect_index(detail::expect_field(j, "zero"), m.n, "zero");
  if (names_out) *names_out = std::move(names);
  return m;
}

inline json monoid_to_json(const FiniteMonoid& m, const std::vector<std::string>& names) {
  json j;
  j["elements"] = names;
  j["plus"] = detail::table_to_json(m.plus, m.n, m.n);
  j["zero"] = m.zero;
  return j;
}

// A change action plus the element names that travelled with its document.
struct NamedChangeAction {
  FiniteChangeAction action;
  std::vector<std::string> base_names;
  std::vector<std::string> delta_names;
};

inline NamedChangeAction named(FiniteChangeAction a) {
  NamedChangeAction n;
  n.base_names = default_names(a.base_n);
  n.delta_names = default_names(a.delta.n);
  n.action = std::move(a);
  return n;
}

inline NamedChangeAction action_from_json(const json& j) {
  detail::expect_version(j);
  NamedChangeAction out;
  out.base_names = detail::expect_names(detail::expect_field(j, "elements"), "elements");
  out.action.base_n = elem(out.base_names.size());
  out.action.delta = monoid_from_json(detail::expect_field(j, "delta"), &out.delta_names);
  out.action.action = detail::expect_table(detail::expect_field(j, "action"), out.action.base_n,
                                           out.action.delta.n, out.action.base_n, "action table");
  return out;
}

inline json action_to_json(const NamedChangeAction& a) {
  json j;
  j["v"] = document_version;
  j["elements"] = a.base_names;
  j["delta"] = monoid_to_json(a.action.delta, a.delta_names);
  j["action"] = detail::table_to_json(a.action.action, a.action.base_n, a.action.delta.n);
  return j;
}

// A map document carries tables only; shapes are fixed when binding to a
// domain and codomain. The derivative rows are indexed by base point, the
// columns by change.
struct MapDoc {
  std::vector<elem> f;
  std::optional<std::vector<elem>> df;
  std::size_t df_cols = 0;
};

inline MapDoc map_from_json(const json& j) {
  detail::expect_version(j);
  const json& ftab = detail::expect_field(j, "f");
  if (!ftab.is_array()) throw SchemaError("\"f\" must be an array");
  MapDoc doc;
  for (const auto& cell : ftab) {
    if (!cell.is_number_integer() || cell.get<std::int64_t>() < 0)
      throw SchemaError("\"f\" entries must be nonnegative integers");
    doc.f.push_back(elem(cell.get<std::int64_t>()));
  }
  auto it = j.find("df");
  if (it != j.end()) {
    if (!it->is_array() || it->size() != doc.f.size())
      throw SchemaError("\"df\" must have one row per base element");
    std::vector<elem> df;
    std::size_t cols = it->empty() ? 0 : (*it)[0].size();
    for (const auto& row : *it) {
      if (!row.is_array() || row.size() != cols)
        throw SchemaError("\"df\" rows must all have the same length");
      for (const auto& cell : row) {
        if (!cell.is_number_integer() || cell.get<std::int64_t>() < 0)
          throw SchemaError("\"df\" entries must be nonnegative integers");
        df.push_back(elem(cell.get<std::int64_t>()));
      }
    }
    doc.df = std::move(df);
    doc.df_cols = cols;
  }
  return doc;
}

// Checks ranges and shapes against the bound carriers; requires a derivative.
inline DifferentialMap bind_map(const NamedChangeAction& dom, const NamedChangeAction& cod,
                                const MapDoc& doc) {
  if (!doc.df) throw SchemaError("map document lacks a \"df\" table");
  DifferentialMap m{dom.action, cod.action, doc.f, *doc.df};
  if (doc.f.size() != dom.action.base_n)
    throw SchemaError("\"f\" length does not match the domain carrier");
  if (doc.df_cols != dom.action.delta.n && !doc.df->empty())
    throw SchemaError("\"df\" row length does not match the domain changes");
  for (elem v : doc.f)
    if (v >= cod.action.base_n) throw SchemaError("\"f\" value out of codomain range");
  for (elem v : *doc.df)
    if (v >= cod.action.delta.n) throw SchemaError("\"df\" value out of codomain change range");
  require_shapes(m);
  return m;
}

inline json map_to_json(const DifferentialMap& m) {
  json j;
  j["v"] = document_version;
  j["f"] = m.f;
  j["df"] = detail::table_to_json(m.df, m.dom.base_n, m.dom.delta.n);
  return j;
}

inline const char* mode_name(CheckMode mode) {
  return mode == CheckMode::exhaustive ? "exhaustive" : "sampled";
}

inline json check_report_to_json(const CheckReport& r) {
  json j;
  j["law"] = r.law;
  j["passed"] = r.passed;
  j["checked"] = r.checked;
  j["mode"] = mode_name(r.mode);
  j["seed"] = r.seed;
  if (r.witness)
    j["witness"] = *r.witness;
  else
    j["witness"] = nullptr;
  return j;
}

}  // namespace cact
