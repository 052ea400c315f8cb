#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "cact/finite.hpp"

namespace cact {

// Finite monoid as a full Cayley table. plus is n x n row-major.
struct FiniteMonoid {
  elem n = 0;
  std::vector<elem> plus;
  elem zero = 0;

  elem add(elem a, elem b) const { return plus[flatten2(a, b, n)]; }

  CheckReport check_associativity(const CheckOptions& opt = {}) const {
    return forall_check(
        {n, n, n},
        [&](std::span<const elem> t) { return add(add(t[0], t[1]), t[2]) == add(t[0], add(t[1], t[2])); },
        "associativity", opt);
  }

  CheckReport check_unit(const CheckOptions& opt = {}) const {
    return forall_check(
        {n},
        [&](std::span<const elem> t) { return add(zero, t[0]) == t[0] && add(t[0], zero) == t[0]; },
        "unit", opt);
  }

  CheckReport check_laws(const CheckOptions& opt = {}) const {
    CheckReport rep = check_associativity(opt);
    if (!rep.passed) return rep;
    return merge(rep, check_unit(opt));
  }

  bool same_table(const FiniteMonoid& o) const {
    return n == o.n && zero == o.zero && plus == o.plus;
  }
};

struct FiniteGroup : FiniteMonoid {
  std::vector<elem> inv;

  elem inverse(elem a) const { return inv[a]; }

  CheckReport check_inverses(const CheckOptions& opt = {}) const {
    return forall_check(
        {n},
        [&](std::span<const elem> t) {
          return add(t[0], inv[t[0]]) == zero && add(inv[t[0]], t[0]) == zero;
        },
        "inverses", opt);
  }

  CheckReport check_group_laws(const CheckOptions& opt = {}) const {
    CheckReport rep = check_laws(opt);
    if (!rep.passed) return rep;
    return merge(rep, check_inverses(opt));
  }
};

inline FiniteMonoid trivial_monoid() {
  return {1, {0}, 0};
}

inline FiniteGroup cyclic_group(elem n) {
  FiniteGroup g;
  g.n = n;
  g.zero = 0;
  g.plus.resize(std::size_t(n) * n);
  g.inv.resize(n);
  for (elem a = 0; a < n; ++a) {
    g.inv[a] = elem((n - a) % n);
    for (elem b = 0; b < n; ++b) g.plus[flatten2(a, b, n)] = elem((a + b) % n);
  }
  return g;
}

// Join-semilattice monoid on {0,1} (idempotent, not a group).
inline FiniteMonoid or_monoid() {
  return {2, {0, 1, 1, 1}, 0};
}

// Quotient of (N,+) identifying x with x+period for x >= threshold.
// Representatives 0 .. threshold+period-1; addition reduces into the cycle.
inline FiniteMonoid truncated_nat_monoid(elem threshold, elem period) {
  FiniteMonoid m;
  m.n = threshold + period;
  m.zero = 0;
  m.plus.resize(std::size_t(m.n) * m.n);
  for (elem a = 0; a < m.n; ++a)
    for (elem b = 0; b < m.n; ++b) {
      elem s = a + b;
      while (s >= m.n) s -= period;
      m.plus[flatten2(a, b, m.n)] = s;
    }
  return m;
}

inline FiniteMonoid product_monoid(const FiniteMonoid& a, const FiniteMonoid& b) {
  FiniteMonoid m;
  m.n = a.n * b.n;
  m.zero = elem(flatten2(a.zero, b.zero, b.n));
  m.plus.resize(std::size_t(m.n) * m.n);
  for (elem x = 0; x < m.n; ++x)
    for (elem y = 0; y < m.n; ++y) {
      elem xa = x / b.n, xb = x % b.n, ya = y / b.n, yb = y % b.n;
      m.plus[flatten2(x, y, m.n)] = elem(flatten2(a.add(xa, ya), b.add(xb, yb), b.n));
    }
  return m;
}

inline FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  static_cast<FiniteMonoid&>(g) = product_monoid(a, b);
  g.inv.resize(g.n);
  for (elem x = 0; x < g.n; ++x)
    g.inv[x] = elem(flatten2(a.inv[x / b.n], b.inv[x % b.n], b.n));
  return g;
}

// Symmetric group on 3 letters; the smallest non-abelian group, used to keep
// operand order honest in tests. Elements are permutations in lexicographic
// order of their one-line notation.
inline FiniteGroup symmetric_group_3() {
  static const elem perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const elem p[3]) {
    for (elem i = 0; i < 6; ++i)
      if (perm[i][0] == p[0] && perm[i][1] == p[1] && perm[i][2] == p[2]) return i;
    return elem(0);
  };
  FiniteGroup g;
  g.n = 6;
  g.zero = 0;
  g.plus.resize(36);
  g.inv.resize(6);
  for (elem i = 0; i < 6; ++i) {
    elem ip[3];
    for (elem k = 0; k < 3; ++k) ip[perm[i][k]] = k;
    g.inv[i] = index_of(ip);
    for (elem j = 0; j < 6; ++j) {
      elem c[3];
      for (elem k = 0; k < 3; ++k) c[k] = perm[i][perm[j][k]];
      g.plus[flatten2(i, j, 6)] = index_of(c);
    }
  }
  return g;
}

}  // namespace cact
