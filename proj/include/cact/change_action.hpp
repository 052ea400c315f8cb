#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "cact/finite.hpp"
#include "cact/monoid.hpp"

namespace cact {

// A set acted on by a change monoid: base point a and change d combine to
// act(a, d). action is base_n x delta.n row-major.
struct FiniteChangeAction {
  elem base_n = 0;
  FiniteMonoid delta;
  std::vector<elem> action;

  elem act(elem a, elem d) const { return action[flatten2(a, d, delta.n)]; }

  CheckReport check_action_unit(const CheckOptions& opt = {}) const {
    return forall_check(
        {base_n},
        [&](std::span<const elem> t) { return act(t[0], delta.zero) == t[0]; },
        "action unit", opt);
  }

  CheckReport check_action_compatibility(const CheckOptions& opt = {}) const {
    return forall_check(
        {base_n, delta.n, delta.n},
        [&](std::span<const elem> t) {
          return act(act(t[0], t[1]), t[2]) == act(t[0], delta.add(t[1], t[2]));
        },
        "action compatibility", opt);
  }

  // Monoid laws on delta plus the two action laws.
  CheckReport check_laws(const CheckOptions& opt = {}) const {
    CheckReport rep = delta.check_laws(opt);
    if (!rep.passed) return rep;
    rep = merge(rep, check_action_unit(opt));
    if (!rep.passed) return rep;
    return merge(rep, check_action_compatibility(opt));
  }

  bool same_table(const FiniteChangeAction& o) const {
    return base_n == o.base_n && delta.same_table(o.delta) && action == o.action;
  }
};

// The monoid acting on itself by its own addition.
inline FiniteChangeAction make_monoidal(const FiniteMonoid& m) {
  return {m.n, m, m.plus};
}

// One-element change monoid acting trivially.
inline FiniteChangeAction make_trivial(elem base_n) {
  FiniteChangeAction a;
  a.base_n = base_n;
  a.delta = trivial_monoid();
  a.action.resize(base_n);
  std::iota(a.action.begin(), a.action.end(), elem(0));
  return a;
}

inline FiniteChangeAction terminal_action() { return make_trivial(1); }

inline FiniteChangeAction product_action(const FiniteChangeAction& a,
                                         const FiniteChangeAction& b) {
  FiniteChangeAction p;
  p.base_n = a.base_n * b.base_n;
  p.delta = product_monoid(a.delta, b.delta);
  p.action.resize(std::size_t(p.base_n) * p.delta.n);
  for (elem x = 0; x < p.base_n; ++x)
    for (elem d = 0; d < p.delta.n; ++d)
      p.action[flatten2(x, d, p.delta.n)] =
          elem(flatten2(a.act(x / b.base_n, d / b.delta.n), b.act(x % b.base_n, d % b.delta.n),
                        b.base_n));
  return p;
}

// Disjoint union of carriers; the product change monoid acts on each side
// through its own component. Left elements come first.
inline FiniteChangeAction coproduct_action(const FiniteChangeAction& a,
                                           const FiniteChangeAction& b) {
  FiniteChangeAction c;
  c.base_n = a.base_n + b.base_n;
  c.delta = product_monoid(a.delta, b.delta);
  c.action.resize(std::size_t(c.base_n) * c.delta.n);
  for (elem x = 0; x < c.base_n; ++x)
    for (elem d = 0; d < c.delta.n; ++d) {
      elem da = d / b.delta.n, db = d % b.delta.n;
      elem y = x < a.base_n ? a.act(x, da) : a.base_n + b.act(x - a.base_n, db);
      c.action[flatten2(x, d, c.delta.n)] = y;
    }
  return c;
}

// a <= b iff some change moves a to b. Reflexive by the unit law, transitive
// by compatibility, so this is a preorder by construction.
inline std::vector<std::uint8_t> reachability_preorder(const FiniteChangeAction& a) {
  std::vector<std::uint8_t> leq(std::size_t(a.base_n) * a.base_n, 0);
  for (elem x = 0; x < a.base_n; ++x)
    for (elem d = 0; d < a.delta.n; ++d) leq[flatten2(x, a.act(x, d), a.base_n)] = 1;
  return leq;
}

// Classes of the symmetric-transitive closure of the reachability preorder.
// Returns class ids, least class id first in carrier order.
struct QuotientMap {
  std::vector<elem> cls;
  elem class_count = 0;
};

inline QuotientMap quotient_by_reachability(const FiniteChangeAction& a) {
  std::vector<elem> parent(a.base_n);
  std::iota(parent.begin(), parent.end(), elem(0));
  std::function<elem(elem)> find = [&](elem x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (elem x = 0; x < a.base_n; ++x)
    for (elem d = 0; d < a.delta.n; ++d) {
      elem rx = find(x), ry = find(a.act(x, d));
      if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
    }
  QuotientMap q;
  q.cls.assign(a.base_n, 0);
  std::vector<elem> rename(a.base_n, elem(-1));
  for (elem x = 0; x < a.base_n; ++x) {
    elem r = find(x);
    if (rename[r] == elem(-1)) rename[r] = q.class_count++;
    q.cls[x] = rename[r];
  }
  return q;
}

}  // namespace cact
