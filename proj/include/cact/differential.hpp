#pragma once

#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "cact/change_action.hpp"
#include "cact/finite.hpp"

namespace cact {

// Map of carriers together with a candidate derivative table.
// f has one entry per base point of dom; df is dom.base_n x dom.delta.n
// row-major with values in cod.delta.
struct DifferentialMap {
  FiniteChangeAction dom;
  FiniteChangeAction cod;
  std::vector<elem> f;
  std::vector<elem> df;

  elem apply(elem a) const { return f[a]; }
  elem deriv(elem a, elem d) const { return df[flatten2(a, d, dom.delta.n)]; }

  bool same_tables(const DifferentialMap& o) const {
    return dom.same_table(o.dom) && cod.same_table(o.cod) && f == o.f && df == o.df;
  }
};

inline void require_shapes(const DifferentialMap& m) {
  if (m.f.size() != m.dom.base_n || m.df.size() != std::size_t(m.dom.base_n) * m.dom.delta.n)
    throw ShapeMismatch("table sizes do not match the change actions");
  for (elem v : m.f)
    if (v >= m.cod.base_n) throw ShapeMismatch("f value out of range");
  for (elem v : m.df)
    if (v >= m.cod.delta.n) throw ShapeMismatch("df value out of range");
}

// f(a (+) d) = f(a) (+) df(a, d), over the whole domain.
inline CheckReport check_derivative_condition(const DifferentialMap& m,
                                              const CheckOptions& opt = {}) {
  return forall_check(
      {m.dom.base_n, m.dom.delta.n},
      [&](std::span<const elem> t) {
        return m.f[m.dom.act(t[0], t[1])] == m.cod.act(m.f[t[0]], m.deriv(t[0], t[1]));
      },
      "derivative condition", opt);
}

// df(a, 0) = 0 and df(a, d1 + d2) = df(a, d1) + df(a (+) d1, d2).
inline CheckReport check_regularity(const DifferentialMap& m, const CheckOptions& opt = {}) {
  CheckReport rep = forall_check(
      {m.dom.base_n},
      [&](std::span<const elem> t) { return m.deriv(t[0], m.dom.delta.zero) == m.cod.delta.zero; },
      "regularity at zero", opt);
  if (!rep.passed) return rep;
  return merge(rep, forall_check(
                        {m.dom.base_n, m.dom.delta.n, m.dom.delta.n},
                        [&](std::span<const elem> t) {
                          elem lhs = m.deriv(t[0], m.dom.delta.add(t[1], t[2]));
                          elem rhs = m.cod.delta.add(m.deriv(t[0], t[1]),
                                                     m.deriv(m.dom.act(t[0], t[1]), t[2]));
                          return lhs == rhs;
                        },
                        "regularity under addition", opt));
}

// df(a (+) d, d') = df(a, d'): the derivative ignores moves in its base point.
inline CheckReport check_stability(const DifferentialMap& m, const CheckOptions& opt = {}) {
  return forall_check(
      {m.dom.base_n, m.dom.delta.n, m.dom.delta.n},
      [&](std::span<const elem> t) {
        return m.deriv(m.dom.act(t[0], t[1]), t[2]) == m.deriv(t[0], t[2]);
      },
      "stability", opt);
}

// General form for any u : A x B -> C with a change action on the left factor.
inline CheckReport check_stable_morphism(const std::vector<elem>& u, const FiniteChangeAction& a,
                                         elem b_n, const CheckOptions& opt = {}) {
  if (u.size() != std::size_t(a.base_n) * b_n)
    throw ShapeMismatch("table size does not match the stated product domain");
  return forall_check(
      {a.base_n, a.delta.n, b_n},
      [&](std::span<const elem> t) {
        return u[flatten2(a.act(t[0], t[1]), t[2], b_n)] == u[flatten2(t[0], t[2], b_n)];
      },
      "stability", opt);
}

// df(a, d1 + d2) = df(a, d1) + df(a, d2), in the codomain change monoid.
inline CheckReport check_additive_in_change(const DifferentialMap& m,
                                            const CheckOptions& opt = {}) {
  return forall_check(
      {m.dom.base_n, m.dom.delta.n, m.dom.delta.n},
      [&](std::span<const elem> t) {
        elem lhs = m.deriv(t[0], m.dom.delta.add(t[1], t[2]));
        elem rhs = m.cod.delta.add(m.deriv(t[0], t[1]), m.deriv(t[0], t[2]));
        return lhs == rhs;
      },
      "additivity in the change argument", opt);
}

inline DifferentialMap identity_map(const FiniteChangeAction& a) {
  DifferentialMap m;
  m.dom = a;
  m.cod = a;
  m.f.resize(a.base_n);
  std::iota(m.f.begin(), m.f.end(), elem(0));
  m.df.resize(std::size_t(a.base_n) * a.delta.n);
  for (elem x = 0; x < a.base_n; ++x)
    for (elem d = 0; d < a.delta.n; ++d) m.df[flatten2(x, d, a.delta.n)] = d;
  return m;
}

// Chain rule: d(g o f)(a, d) = dg(f(a), df(a, d)).
inline DifferentialMap compose(const DifferentialMap& g, const DifferentialMap& f) {
  if (!f.cod.same_table(g.dom)) throw ShapeMismatch("composition: codomain/domain mismatch");
  DifferentialMap m;
  m.dom = f.dom;
  m.cod = g.cod;
  m.f.resize(f.dom.base_n);
  for (elem a = 0; a < f.dom.base_n; ++a) m.f[a] = g.f[f.f[a]];
  m.df.resize(std::size_t(f.dom.base_n) * f.dom.delta.n);
  for (elem a = 0; a < f.dom.base_n; ++a)
    for (elem d = 0; d < f.dom.delta.n; ++d)
      m.df[flatten2(a, d, f.dom.delta.n)] = g.deriv(f.f[a], f.deriv(a, d));
  return m;
}

inline DifferentialMap pairing(const DifferentialMap& f1, const DifferentialMap& f2) {
  if (!f1.dom.same_table(f2.dom)) throw ShapeMismatch("pairing: domains differ");
  DifferentialMap m;
  m.dom = f1.dom;
  m.cod = product_action(f1.cod, f2.cod);
  m.f.resize(m.dom.base_n);
  for (elem a = 0; a < m.dom.base_n; ++a)
    m.f[a] = elem(flatten2(f1.f[a], f2.f[a], f2.cod.base_n));
  m.df.resize(std::size_t(m.dom.base_n) * m.dom.delta.n);
  for (elem a = 0; a < m.dom.base_n; ++a)
    for (elem d = 0; d < m.dom.delta.n; ++d)
      m.df[flatten2(a, d, m.dom.delta.n)] =
          elem(flatten2(f1.deriv(a, d), f2.deriv(a, d), f2.cod.delta.n));
  return m;
}

// Projections out of a product carry the matching change projection as
// derivative: the base map forgets one side, the derivative does too.
inline DifferentialMap projection(const FiniteChangeAction& a, const FiniteChangeAction& b,
                                  int which) {
  DifferentialMap m;
  m.dom = product_action(a, b);
  m.cod = which == 0 ? a : b;
  m.f.resize(m.dom.base_n);
  m.df.resize(std::size_t(m.dom.base_n) * m.dom.delta.n);
  for (elem x = 0; x < m.dom.base_n; ++x) {
    m.f[x] = which == 0 ? x / b.base_n : x % b.base_n;
    for (elem d = 0; d < m.dom.delta.n; ++d)
      m.df[flatten2(x, d, m.dom.delta.n)] = which == 0 ? d / b.delta.n : d % b.delta.n;
  }
  return m;
}

// Injections into a coproduct: the change on the other side is padded with 0.
inline DifferentialMap injection(const FiniteChangeAction& a, const FiniteChangeAction& b,
                                 int which) {
  DifferentialMap m;
  m.cod = coproduct_action(a, b);
  m.dom = which == 0 ? a : b;
  m.f.resize(m.dom.base_n);
  m.df.resize(std::size_t(m.dom.base_n) * m.dom.delta.n);
  for (elem x = 0; x < m.dom.base_n; ++x) {
    m.f[x] = which == 0 ? x : a.base_n + x;
    for (elem d = 0; d < m.dom.delta.n; ++d)
      m.df[flatten2(x, d, m.dom.delta.n)] =
          which == 0 ? elem(flatten2(d, b.delta.zero, b.delta.n))
                     : elem(flatten2(a.delta.zero, d, b.delta.n));
  }
  return m;
}

// Case analysis on a coproduct; each side keeps its own derivative, reading
// only its own component of the product change.
inline DifferentialMap copairing(const DifferentialMap& f1, const DifferentialMap& f2) {
  if (!f1.cod.same_table(f2.cod)) throw ShapeMismatch("copairing: codomains differ");
  DifferentialMap m;
  m.dom = coproduct_action(f1.dom, f2.dom);
  m.cod = f1.cod;
  m.f.resize(m.dom.base_n);
  m.df.resize(std::size_t(m.dom.base_n) * m.dom.delta.n);
  for (elem x = 0; x < m.dom.base_n; ++x) {
    bool left = x < f1.dom.base_n;
    m.f[x] = left ? f1.f[x] : f2.f[x - f1.dom.base_n];
    for (elem d = 0; d < m.dom.delta.n; ++d) {
      elem da = d / f2.dom.delta.n, db = d % f2.dom.delta.n;
      m.df[flatten2(x, d, m.dom.delta.n)] =
          left ? f1.deriv(x, da) : f2.deriv(x - f1.dom.base_n, db);
    }
  }
  return m;
}

// For a map out of a product with a regular derivative, a joint change splits
// into the two one-sided moves taken in sequence.
inline CheckReport partial_derivative_check(const DifferentialMap& m, const FiniteChangeAction& a,
                                            const FiniteChangeAction& b,
                                            const CheckOptions& opt = {}) {
  if (!m.dom.same_table(product_action(a, b)))
    throw ShapeMismatch("domain is not the stated product");
  return forall_check(
      {a.base_n, b.base_n, a.delta.n, b.delta.n},
      [&](std::span<const elem> t) {
        elem x = elem(flatten2(t[0], t[1], b.base_n));
        elem d = elem(flatten2(t[2], t[3], b.delta.n));
        elem da_only = elem(flatten2(t[2], b.delta.zero, b.delta.n));
        elem db_only = elem(flatten2(a.delta.zero, t[3], b.delta.n));
        elem x_moved = elem(flatten2(a.act(t[0], t[2]), t[1], b.base_n));
        return m.deriv(x, d) ==
               m.cod.delta.add(m.deriv(x, da_only), m.deriv(x_moved, db_only));
      },
      "partial derivative decomposition", opt);
}

// All derivative tables for f, factored point by point: the derivative
// condition constrains each (a, d) cell independently, so the solution set is
// the product of the per-cell candidate sets.
struct DerivativeSolutions {
  std::vector<elem> strides;  // dom.base_n, dom.delta.n
  std::vector<std::vector<elem>> cell;

  bool empty() const {
    for (const auto& c : cell)
      if (c.empty()) return true;
    return false;
  }

  bool unique() const {
    for (const auto& c : cell)
      if (c.size() != 1) return false;
    return true;
  }

  // Number of solutions if it fits in 64 bits.
  std::optional<std::uint64_t> count() const {
    std::uint64_t n = 1;
    for (const auto& c : cell) {
      if (c.empty()) return 0;
      if (n > std::numeric_limits<std::uint64_t>::max() / c.size()) return std::nullopt;
      n *= c.size();
    }
    return n;
  }

  std::vector<std::vector<elem>> enumerate(std::uint64_t limit = 100'000) const {
    auto n = count();
    if (!n || *n > limit)
      throw SearchSpaceTooLarge("derivative solution set larger than enumeration limit");
    std::vector<std::vector<elem>> out;
    if (*n == 0) return out;
    std::vector<std::size_t> pick(cell.size(), 0);
    for (std::uint64_t i = 0; i < *n; ++i) {
      std::vector<elem> table(cell.size());
      for (std::size_t k = 0; k < cell.size(); ++k) table[k] = cell[k][pick[k]];
      out.push_back(std::move(table));
      for (std::size_t k = cell.size(); k-- > 0;) {
        if (++pick[k] < cell[k].size()) break;
        pick[k] = 0;
      }
    }
    return out;
  }
};

struct SolveCaps {
  std::uint64_t max_cells = 16;       // dom.base_n * dom.delta.n
  elem max_cod_changes = 4;
};

inline DerivativeSolutions solve_derivative(const std::vector<elem>& f,
                                            const FiniteChangeAction& dom,
                                            const FiniteChangeAction& cod,
                                            const SolveCaps& caps = {}) {
  if (f.size() != dom.base_n) throw ShapeMismatch("f table size does not match domain");
  std::uint64_t cells = std::uint64_t(dom.base_n) * dom.delta.n;
  if (cells > caps.max_cells || cod.delta.n > caps.max_cod_changes)
    throw SearchSpaceTooLarge("derivative search space over the configured cap");
  DerivativeSolutions sol;
  sol.strides = {dom.base_n, dom.delta.n};
  sol.cell.resize(cells);
  for (elem a = 0; a < dom.base_n; ++a)
    for (elem d = 0; d < dom.delta.n; ++d) {
      auto& c = sol.cell[flatten2(a, d, dom.delta.n)];
      elem target = f[dom.act(a, d)];
      for (elem db = 0; db < cod.delta.n; ++db)
        if (cod.act(f[a], db) == target) c.push_back(db);
    }
  return sol;
}

// Monotone maps between reachability preorders are exactly the maps that
// admit some derivative.
inline CheckReport differentiable_by_monotonicity(const std::vector<elem>& f,
                                                  const FiniteChangeAction& dom,
                                                  const FiniteChangeAction& cod,
                                                  const CheckOptions& opt = {}) {
  if (f.size() != dom.base_n) throw ShapeMismatch("f table size does not match domain");
  auto leq = reachability_preorder(cod);
  return forall_check(
      {dom.base_n, dom.delta.n},
      [&](std::span<const elem> t) {
        return leq[flatten2(f[t[0]], f[dom.act(t[0], t[1])], cod.base_n)] != 0;
      },
      "monotone on reachability", opt);
}

// Replays a change sequence through the derivative instead of recomputing f.
struct FoldStep {
  elem a;       // base point before the step
  elem d;       // change consumed
  elem y;       // maintained output before the step
  elem dy;      // derivative applied
};

struct FoldTrace {
  std::vector<FoldStep> steps;
  elem final_a = 0;
  elem final_y = 0;
  bool matches_recompute = false;
};

inline FoldTrace incremental_fold(const DifferentialMap& m, elem start,
                                  const std::vector<elem>& changes) {
  FoldTrace tr;
  elem a = start;
  elem y = m.f[start];
  for (elem d : changes) {
    elem dy = m.deriv(a, d);
    tr.steps.push_back({a, d, y, dy});
    y = m.cod.act(y, dy);
    a = m.dom.act(a, d);
  }
  tr.final_a = a;
  tr.final_y = y;
  tr.matches_recompute = (y == m.f[a]);
  return tr;
}

}  // namespace cact
