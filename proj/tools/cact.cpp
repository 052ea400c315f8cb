#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "cact/boolean.hpp"
#include "cact/change_action.hpp"
#include "cact/differential.hpp"
#include "cact/finite.hpp"
#include "cact/int_poly.hpp"
#include "cact/io.hpp"
#include "cact/kleene.hpp"
#include "cact/model.hpp"
#include "cact/monoid.hpp"
#include "cact/tower.hpp"

namespace {

using namespace cact;

struct Ctx {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::uint64_t max_space = default_max_space;

  bool json_out() const { return format == "json"; }
  CheckOptions opts() const { return CheckOptions{max_space, default_samples, seed}; }
};

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string witness_text(const CheckReport& r) {
  if (!r.witness) return "";
  std::string s = "  witness (";
  for (std::size_t i = 0; i < r.witness->size(); ++i) {
    if (i) s += ", ";
    s += std::to_string((*r.witness)[i]);
  }
  return s + ")";
}

CheckReport relabel(CheckReport r, const char* law) {
  r.law = law;
  return r;
}

// Collects per-law reports, printing them in text mode and accumulating them
// for the final document in json mode.
struct Reporter {
  const Ctx& ctx;
  json checks = json::array();
  bool all_passed = true;

  void add(const CheckReport& r) {
    all_passed = all_passed && r.passed;
    if (ctx.json_out()) {
      checks.push_back(check_report_to_json(r));
    } else {
      std::cout << r.law << ": " << verdict(r.passed) << witness_text(r) << "  (checked "
                << r.checked << ", " << mode_name(r.mode) << ")\n";
    }
  }

  int finish(json doc) {
    doc["seed"] = ctx.seed;
    doc["checks"] = std::move(checks);
    doc["passed"] = all_passed;
    if (ctx.json_out())
      std::cout << canonical_dump(doc) << "\n";
    else
      std::cout << "result: " << verdict(all_passed) << "\n";
    return all_passed ? 0 : 1;
  }
};

int cmd_check_action(const Ctx& ctx, const std::string& path) {
  NamedChangeAction a = action_from_json(load_json_file(path));
  CheckOptions opt = ctx.opts();
  Reporter rep{ctx};
  rep.add(relabel(a.action.delta.check_associativity(opt), "delta associativity"));
  rep.add(relabel(a.action.delta.check_unit(opt), "delta unit"));
  rep.add(a.action.check_action_unit(opt));
  rep.add(a.action.check_action_compatibility(opt));
  json doc;
  doc["command"] = "check-action";
  return rep.finish(std::move(doc));
}

int cmd_check_map(const Ctx& ctx, const std::string& dom_path, const std::string& cod_path,
                  const std::string& map_path, bool require_stable) {
  NamedChangeAction dom = action_from_json(load_json_file(dom_path));
  NamedChangeAction cod = action_from_json(load_json_file(cod_path));
  DifferentialMap m = bind_map(dom, cod, map_from_json(load_json_file(map_path)));
  CheckOptions opt = ctx.opts();
  Reporter rep{ctx};
  rep.add(check_derivative_condition(m, opt));
  CheckReport reg = check_regularity(m, opt);
  if (reg.passed) reg.law = "regularity";
  rep.add(reg);
  if (require_stable) rep.add(check_stability(m, opt));
  json doc;
  doc["command"] = "check-map";
  return rep.finish(std::move(doc));
}

int cmd_fd(const Ctx& ctx, const std::string& expr, std::optional<std::int64_t> at,
           std::int64_t delta, const std::vector<std::int64_t>& table) {
  IntPoly p = parse_int_poly(expr);
  json doc;
  doc["command"] = "fd";
  doc["delta"] = delta;
  if (!table.empty()) {
    std::int64_t lo = table[0], hi = table[1];
    if (lo > hi) throw SchemaError("--table range is empty");
    json rows = json::array();
    for (std::int64_t x = lo; x <= hi; ++x) {
      bigint d = finite_difference(p, x, delta);
      if (ctx.json_out())
        rows.push_back({{"x", x}, {"value", d.str()}});
      else
        std::cout << x << " " << d << "\n";
    }
    doc["table"] = std::move(rows);
  } else if (at) {
    bigint d = finite_difference(p, *at, delta);
    doc["at"] = *at;
    doc["value"] = d.str();
    if (!ctx.json_out()) std::cout << d << "\n";
  } else {
    throw SchemaError("fd needs --at or --table");
  }
  if (ctx.json_out()) std::cout << canonical_dump(doc) << "\n";
  return 0;
}

int cmd_bool(const Ctx& ctx, elem vars, const std::string& bits, elem dvar) {
  BoolAlgebra b(1);
  std::vector<elem> f = parse_truth_bits(bits, vars);
  std::vector<elem> d = boolean_derivative(b, vars, 1, f, dvar);
  std::string rendered = render_truth_bits(d);
  CheckReport eq = boolean_equivalence_check(b, vars, 1, f, dvar, ctx.opts());
  Reporter rep{ctx};
  if (!ctx.json_out()) std::cout << "derivative: " << rendered << "\n";
  rep.add(eq);
  json doc;
  doc["command"] = "bool";
  doc["derivative"] = rendered;
  return rep.finish(std::move(doc));
}

elem variable_index(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name.size() > 1 && name[0] == 'x') {
    std::uint64_t idx = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') throw SchemaError("unknown variable '" + name + "'");
      idx = idx * 10 + (name[i] - '0');
      if (idx > 1000) throw SchemaError("unknown variable '" + name + "'");
    }
    if (idx >= 1) return elem(idx - 1);
  }
  throw SchemaError("unknown variable '" + name + "'");
}

int cmd_kpoly(const Ctx& ctx, const std::string& algebra, const std::string& poly,
              const std::string& dvar, bool taylor, bool regular, bool nonadd) {
  KleeneAlgebra k = make_named_kleene(algebra);
  KleenePoly p = parse_kleene_poly(poly, k);
  elem arity = std::max<elem>(max_variable_plus_one(p), 1);
  elem i = variable_index(dvar);
  std::string deriv = poly_to_string(formal_derivative(p, i), arity, k.elem_names);
  Reporter rep{ctx};
  if (!ctx.json_out()) std::cout << "derivative: " << deriv << "\n";
  CheckOptions opt = ctx.opts();
  if (taylor) rep.add(taylor_check(p, arity, k, opt));
  if (regular) rep.add(kleene_regularity_check(p, k, opt));
  json doc;
  doc["command"] = "kpoly";
  doc["algebra"] = algebra;
  doc["derivative"] = deriv;
  if (nonadd) {
    std::optional<NonAdditivityWitness> w = nonadditivity_witness(k);
    if (ctx.json_out()) {
      json jw;
      jw["found"] = bool(w);
      if (w) {
        jw["p"] = w->p_text;
        jw["a"] = k.elem_names[w->a];
        jw["b"] = k.elem_names[w->b];
        jw["c"] = k.elem_names[w->c];
        jw["joint"] = k.elem_names[w->joint];
        jw["separate"] = k.elem_names[w->separate];
      }
      doc["nonadditivity"] = std::move(jw);
    } else if (w) {
      std::cout << "non-additivity witness: p = " << w->p_text << ", a = " << k.elem_names[w->a]
                << ", b = " << k.elem_names[w->b] << ", c = " << k.elem_names[w->c] << "\n";
      std::cout << "dp(a, b + c) = " << k.elem_names[w->joint] << "\n";
      std::cout << "dp(a, b) + dp(a, c) = " << k.elem_names[w->separate] << "\n";
    } else {
      std::cout << "no non-additivity witness found\n";
    }
  }
  return rep.finish(std::move(doc));
}

int cmd_tower(const Ctx& ctx, const std::string& model, const std::string& map_path,
              const std::string& poly, int depth, bool check_assoc, bool check_id) {
  std::unique_ptr<GroupModel> gm;
  std::unique_ptr<TrivialModel> tm;
  std::optional<KleeneModel> km;
  std::optional<IteratedTower> itw;
  std::optional<KleeneIterated> kit;

  auto load_endo_table = [&](elem carrier) {
    if (map_path.empty()) throw SchemaError("this model needs --map with a map document");
    MapDoc doc = map_from_json(load_json_file(map_path));
    if (doc.f.size() != carrier) throw SchemaError("map table size does not match the model carrier");
    for (elem v : doc.f)
      if (v >= carrier) throw SchemaError("map value out of range for the model carrier");
    return doc.f;
  };

  if (model.rfind("group:Z", 0) == 0) {
    std::uint64_t n = 0;
    for (std::size_t i = 7; i < model.size(); ++i) {
      if (model[i] < '0' || model[i] > '9') throw SchemaError("bad model '" + model + "'");
      n = n * 10 + (model[i] - '0');
      if (n > 1'000'000) throw SchemaError("bad model '" + model + "'");
    }
    if (n == 0) throw SchemaError("bad model '" + model + "'");
    gm = std::make_unique<GroupModel>();
    ObjId o = gm->add_group(cyclic_group(elem(n)));
    itw = iterate_model(*gm, o, o, load_endo_table(elem(n)), depth, ctx.max_space);
  } else if (model.rfind("trivial:", 0) == 0) {
    std::uint64_t n = 0;
    for (std::size_t i = 8; i < model.size(); ++i) {
      if (model[i] < '0' || model[i] > '9') throw SchemaError("bad model '" + model + "'");
      n = n * 10 + (model[i] - '0');
      if (n > 1'000'000) throw SchemaError("bad model '" + model + "'");
    }
    if (n == 0) throw SchemaError("bad model '" + model + "'");
    tm = std::make_unique<TrivialModel>();
    ObjId o = tm->add_size(elem(n));
    itw = iterate_model(*tm, o, o, load_endo_table(elem(n)), depth, ctx.max_space);
  } else if (model.rfind("kleene:", 0) == 0) {
    if (poly.empty()) throw SchemaError("kleene models need --poly with a polynomial");
    km.emplace(make_named_kleene(model.substr(7)));
    KleenePoly p = parse_kleene_poly(poly, km->algebra());
    elem arity = std::max<elem>(max_variable_plus_one(p), 1);
    kit = kleene_iterate(*km, PolyMorphism{arity, {std::move(p)}}, depth, ctx.max_space);
    itw = kit->tower;
  } else {
    throw SchemaError("unknown model '" + model +
                      "' (expected group:Zk, trivial:n or kleene:<algebra>)");
  }

  json doc;
  doc["command"] = "tower";
  doc["model"] = model;
  doc["depth"] = depth;
  json sizes = json::array();
  std::string sizes_line;
  for (int j = 0; j <= depth; ++j) {
    std::uint64_t s = pr_d_size(itw->dom_tower, j);
    sizes.push_back(s);
    if (j) sizes_line += " ";
    sizes_line += std::to_string(s);
  }
  doc["sizes"] = std::move(sizes);
  if (!ctx.json_out()) {
    std::cout << "tower depth " << depth << "\n";
    std::cout << "derivative space sizes: " << sizes_line << "\n";
  }
  if (kit) {
    json comps = json::array();
    for (int j = 0; j <= depth; ++j) {
      const PolyMorphism& pm = kit->polys[j];
      std::string text;
      for (std::size_t c = 0; c < pm.comps.size(); ++c) {
        if (c) text += "; ";
        text += poly_to_string(pm.comps[c], pm.arity, km->algebra().elem_names);
      }
      comps.push_back(text);
      if (!ctx.json_out()) std::cout << "component " << j << ": " << text << "\n";
    }
    doc["components"] = std::move(comps);
  }

  Reporter rep{ctx};
  rep.add(omega_differentiable(itw->map, ctx.opts()));
  std::uint64_t cells = 0;
  for (const auto& c : itw->map.comps) cells += c.size();
  if (check_id) {
    OmegaMap left = compose_omega(itw->map, identity_omega(itw->dom_tower));
    OmegaMap right = compose_omega(identity_omega(itw->cod_tower), itw->map);
    bool ok = same_omega_map(left, itw->map) && same_omega_map(right, itw->map);
    rep.add(CheckReport{ok, std::nullopt, 2 * cells, CheckMode::exhaustive, ctx.seed,
                        "identity laws"});
  }
  if (check_assoc) {
    if (!same_tower(itw->dom_tower, itw->cod_tower))
      throw SchemaError("associativity check needs an endomap");
    OmegaMap ff = compose_omega(itw->map, itw->map);
    bool ok = same_omega_map(compose_omega(ff, itw->map), compose_omega(itw->map, ff));
    rep.add(CheckReport{ok, std::nullopt, cells, CheckMode::exhaustive, ctx.seed,
                        "composition associativity"});
  }
  return rep.finish(std::move(doc));
}

int cmd_incr(const Ctx& ctx, const std::string& dom_path, const std::string& cod_path,
             const std::string& map_path, elem start, const std::vector<elem>& changes) {
  NamedChangeAction dom = action_from_json(load_json_file(dom_path));
  NamedChangeAction cod = action_from_json(load_json_file(cod_path));
  DifferentialMap m = bind_map(dom, cod, map_from_json(load_json_file(map_path)));
  if (start >= m.dom.base_n) throw SchemaError("start index out of range");
  for (elem d : changes)
    if (d >= m.dom.delta.n) throw SchemaError("change index out of range");
  FoldTrace tr = incremental_fold(m, start, changes);
  json doc;
  doc["command"] = "incr";
  doc["start"] = start;
  json steps = json::array();
  if (!ctx.json_out())
    std::cout << "start: a = " << dom.base_names[start] << ", f(a) = "
              << cod.base_names[m.f[start]] << "\n";
  for (std::size_t k = 0; k < tr.steps.size(); ++k) {
    const FoldStep& s = tr.steps[k];
    steps.push_back({{"a", s.a}, {"d", s.d}, {"y", s.y}, {"dy", s.dy}});
    if (!ctx.json_out())
      std::cout << "step " << k + 1 << ": a = " << dom.base_names[s.a] << ", d = "
                << dom.delta_names[s.d] << ", y = " << cod.base_names[s.y] << ", dy = "
                << cod.delta_names[s.dy] << "\n";
  }
  doc["steps"] = std::move(steps);
  doc["final_a"] = tr.final_a;
  doc["final_y"] = tr.final_y;
  doc["recomputed"] = m.f[tr.final_a];
  doc["passed"] = tr.matches_recompute;
  doc["seed"] = ctx.seed;
  if (ctx.json_out()) {
    std::cout << canonical_dump(doc) << "\n";
  } else {
    std::cout << "final: a = " << dom.base_names[tr.final_a] << ", y = "
              << cod.base_names[tr.final_y] << "\n";
    std::cout << "recomputed f(a) = " << cod.base_names[m.f[tr.final_a]] << "\n";
    std::cout << "result: " << verdict(tr.matches_recompute) << "\n";
  }
  return tr.matches_recompute ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite change actions, derivatives and derivative towers"};
  app.require_subcommand(1);
  Ctx ctx;
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", ctx.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--max-space", ctx.max_space, "largest index space swept exhaustively")
      ->capture_default_str();

  auto* sc_action = app.add_subcommand("check-action", "check the laws of a change action");
  sc_action->fallthrough();
  std::string action_path;
  sc_action->add_option("path", action_path, "change-action document")->required();

  auto* sc_map = app.add_subcommand("check-map", "check a map with a candidate derivative");
  sc_map->fallthrough();
  std::string map_dom, map_cod, map_path;
  bool require_stable = false;
  sc_map->add_option("--dom", map_dom, "domain change-action document")->required();
  sc_map->add_option("--cod", map_cod, "codomain change-action document")->required();
  sc_map->add_option("path", map_path, "map document")->required();
  sc_map->add_flag("--require-stable", require_stable, "also require stability");

  auto* sc_fd = app.add_subcommand("fd", "finite differences of integer polynomials");
  sc_fd->fallthrough();
  std::string fd_expr;
  std::optional<std::int64_t> fd_at;
  std::int64_t fd_delta = 1;
  std::vector<std::int64_t> fd_table;
  sc_fd->add_option("--expr", fd_expr, "integer polynomial in x")->required();
  sc_fd->add_option("--at", fd_at, "base point");
  sc_fd->add_option("--delta", fd_delta, "change applied to the base point")
      ->capture_default_str();
  sc_fd->add_option("--table", fd_table, "difference table over an inclusive range")
      ->expected(2);

  auto* sc_bool = app.add_subcommand("bool", "Boolean derivative of a truth table");
  sc_bool->fallthrough();
  elem bool_vars = 0, bool_dvar = 0;
  std::string bool_bits;
  sc_bool->add_option("--vars", bool_vars, "number of variables")->required();
  sc_bool->add_option("--table", bool_bits, "row-major 0/1 truth table")->required();
  sc_bool->add_option("--dvar", bool_dvar, "variable to differentiate, counted from 1")
      ->required();

  auto* sc_kpoly = app.add_subcommand("kpoly", "polynomials over a commutative Kleene algebra");
  sc_kpoly->fallthrough();
  std::string kp_algebra, kp_poly, kp_dvar = "x";
  bool kp_taylor = false, kp_regular = false, kp_nonadd = false;
  sc_kpoly->add_option("--algebra", kp_algebra, "boolean, tropical:B or sumset:B")->required();
  sc_kpoly->add_option("--poly", kp_poly, "polynomial expression")->required();
  sc_kpoly->add_option("--dvar", kp_dvar, "variable to differentiate")->capture_default_str();
  sc_kpoly->add_flag("--taylor", kp_taylor, "check the Taylor expansion identity");
  sc_kpoly->add_flag("--regular", kp_regular, "check the derivative regularity equation");
  sc_kpoly->add_flag("--nonadd", kp_nonadd, "search for a non-additive derivative");

  auto* sc_tower = app.add_subcommand("tower", "iterated derivatives of one map");
  sc_tower->fallthrough();
  std::string tw_model, tw_map, tw_poly;
  int tw_depth = 0;
  bool tw_assoc = false, tw_id = false;
  sc_tower->add_option("--model", tw_model, "group:Zk, trivial:n or kleene:<algebra>")
      ->required();
  sc_tower->add_option("--map", tw_map, "map document for table models");
  sc_tower->add_option("--poly", tw_poly, "polynomial for kleene models");
  sc_tower->add_option("--depth", tw_depth, "tower truncation depth")->required();
  sc_tower->add_flag("--check-assoc", tw_assoc, "check associativity of composition");
  sc_tower->add_flag("--check-id", tw_id, "check the identity laws");

  auto* sc_incr = app.add_subcommand("incr", "replay a change sequence through a derivative");
  sc_incr->fallthrough();
  std::string in_dom, in_cod, in_map;
  elem in_start = 0;
  std::vector<elem> in_changes;
  sc_incr->add_option("--dom", in_dom, "domain change-action document")->required();
  sc_incr->add_option("--cod", in_cod, "codomain change-action document")->required();
  sc_incr->add_option("path", in_map, "map document")->required();
  sc_incr->add_option("--start", in_start, "starting base point index")->required();
  sc_incr->add_option("--changes", in_changes, "comma-separated change indices")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sc_action) return cmd_check_action(ctx, action_path);
    if (*sc_map) return cmd_check_map(ctx, map_dom, map_cod, map_path, require_stable);
    if (*sc_fd) return cmd_fd(ctx, fd_expr, fd_at, fd_delta, fd_table);
    if (*sc_bool) return cmd_bool(ctx, bool_vars, bool_bits, bool_dvar);
    if (*sc_kpoly)
      return cmd_kpoly(ctx, kp_algebra, kp_poly, kp_dvar, kp_taylor, kp_regular, kp_nonadd);
    if (*sc_tower) return cmd_tower(ctx, tw_model, tw_map, tw_poly, tw_depth, tw_assoc, tw_id);
    if (*sc_incr) return cmd_incr(ctx, in_dom, in_cod, in_map, in_start, in_changes);
  } catch (const SpaceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SearchSpaceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotClosedUnderDelta& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
