#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "cact/change_action.hpp"
#include "cact/differential.hpp"
#include "cact/finite.hpp"
#include "cact/kleene.hpp"
#include "cact/model.hpp"
#include "cact/monoid.hpp"

namespace cact {

// A depth-N truncation of a tower of change actions: carriers A_0..A_N where
// level j is the change action (A_j, A_{j+1}, act, add, zero). Derivative
// spaces follow D(0) = level 0, D(j+1) = D(j) x D(shift, j), and their
// carrier sizes pr_j D are capped so every table stays materialisable.
struct OmegaTower {
  int depth = 0;
  std::vector<elem> carriers;              // A_0 .. A_depth
  std::vector<FiniteChangeAction> levels;  // level j acts on A_j with changes A_{j+1}
};

// Tower from its levels alone; carriers are read off the level shapes.
inline OmegaTower make_tower(std::vector<FiniteChangeAction> levels) {
  OmegaTower t;
  t.depth = int(levels.size());
  for (const auto& lv : levels) t.carriers.push_back(lv.base_n);
  if (!levels.empty()) t.carriers.push_back(levels.back().delta.n);
  t.levels = std::move(levels);
  if (t.depth == 0) throw ShapeMismatch("a levelless tower needs an explicit carrier");
  return t;
}

// Depth-0 tower: a bare carrier with no change structure yet.
inline OmegaTower point_tower(elem carrier) {
  OmegaTower t;
  t.depth = 0;
  t.carriers = {carrier};
  return t;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// tri[j][i] = |pr_j D| of the i-th left shift, for i + j <= depth.
inline std::vector<std::vector<std::uint64_t>> derivative_size_triangle(const OmegaTower& t) {
  std::vector<std::vector<std::uint64_t>> tri(std::size_t(t.depth) + 1);
  tri[0].assign(t.carriers.begin(), t.carriers.end());
  for (int j = 1; j <= t.depth; ++j) {
    tri[j].resize(std::size_t(t.depth - j) + 1);
    for (int i = 0; i + j <= t.depth; ++i)
      tri[j][i] = saturating_mul(tri[j - 1][i], tri[j - 1][std::size_t(i) + 1]);
  }
  return tri;
}

inline std::uint64_t pr_d_size(const OmegaTower& t, int j) {
  if (j < 0 || j > t.depth) throw DepthExceeded("derivative space index exceeds tower depth");
  return derivative_size_triangle(t)[std::size_t(j)][0];
}

// Shape consistency plus the size cap on every pr_j D (of every shift, since
// those all appear as factors of later derivative spaces).
inline void validate_tower(const OmegaTower& t, std::uint64_t cap = default_max_space) {
  if (t.depth < 0 || t.carriers.size() != std::size_t(t.depth) + 1 ||
      t.levels.size() != std::size_t(t.depth))
    throw ShapeMismatch("tower field sizes are inconsistent");
  for (int j = 0; j < t.depth; ++j)
    if (t.levels[j].base_n != t.carriers[j] || t.levels[j].delta.n != t.carriers[std::size_t(j) + 1])
      throw ShapeMismatch("tower levels do not chain");
  auto tri = derivative_size_triangle(t);
  for (int j = 0; j <= t.depth; ++j)
    for (std::uint64_t s : tri[std::size_t(j)])
      if (s > cap) throw SpaceTooLarge(s, cap);
  // Change monoids of derivative spaces carry |pr_j D(shift)|^2 tables.
  for (int j = 0; j + 1 <= t.depth; ++j) {
    std::uint64_t dn = tri[std::size_t(j)].size() > 1 ? tri[std::size_t(j)][1] : 1;
    if (saturating_mul(dn, dn) > 100 * cap) throw SpaceTooLarge(saturating_mul(dn, dn), 100 * cap);
  }
}

inline bool same_tower(const OmegaTower& a, const OmegaTower& b) {
  if (a.depth != b.depth || a.carriers != b.carriers) return false;
  for (int j = 0; j < a.depth; ++j)
    if (!a.levels[std::size_t(j)].same_table(b.levels[std::size_t(j)])) return false;
  return true;
}

// The left shift: drops level 0, so carrier j becomes A_{j+1}.
inline OmegaTower shift_tower(const OmegaTower& t) {
  if (t.depth < 1) throw DepthExceeded("cannot shift a depth-0 tower");
  OmegaTower s;
  s.depth = t.depth - 1;
  s.carriers.assign(t.carriers.begin() + 1, t.carriers.end());
  s.levels.assign(t.levels.begin() + 1, t.levels.end());
  return s;
}

inline OmegaTower shift_pow(OmegaTower t, int times) {
  for (int i = 0; i < times; ++i) t = shift_tower(t);
  return t;
}

inline OmegaTower truncate_tower(const OmegaTower& t, int depth) {
  if (depth < 0 || depth > t.depth) throw DepthExceeded("truncation depth out of range");
  OmegaTower s;
  s.depth = depth;
  s.carriers.assign(t.carriers.begin(), t.carriers.begin() + depth + 1);
  s.levels.assign(t.levels.begin(), t.levels.begin() + depth);
  return s;
}

// D(t, j): level 0 itself at j = 0, then the product recursion.
inline FiniteChangeAction derivative_space(const OmegaTower& t, int j) {
  if (j < 0 || j >= t.depth) throw DepthExceeded("derivative space index exceeds tower depth");
  if (j == 0) return t.levels[0];
  return product_action(derivative_space(t, j - 1), derivative_space(shift_tower(t), j - 1));
}

// eps(t, j, n): pr_{n+1} D -> pr_n D, defined for j <= n < depth by
// eps(0, n) = pi1 and eps(j+1, n+1) = eps(j, n) x eps(j, n on the shift).
inline std::vector<elem> eps_table(const OmegaTower& t, int j, int n) {
  if (j < 0 || n < j || n + 1 > t.depth) throw DepthExceeded("eps index exceeds tower depth");
  std::uint64_t domain = pr_d_size(t, n + 1);
  OmegaTower sh = shift_tower(t);
  std::uint64_t minor = pr_d_size(sh, n);  // |pr_n D| of the shift
  std::vector<elem> out(domain);
  if (j == 0) {
    for (std::uint64_t x = 0; x < domain; ++x) out[x] = elem(x / minor);
    return out;
  }
  std::vector<elem> e1 = eps_table(t, j - 1, n - 1);
  std::vector<elem> e2 = eps_table(sh, j - 1, n - 1);
  std::uint64_t minor_out = pr_d_size(sh, n - 1);
  for (std::uint64_t x = 0; x < domain; ++x)
    out[x] = elem(std::uint64_t(e1[x / minor]) * minor_out + e2[x % minor]);
  return out;
}

// kappa(t, j, n): pr_n D -> pr_{n-j} D of the j-th shift, defined for
// j <= n <= depth by kappa(0, n) = id and kappa(j+1, n) = kappa(j, n-1 on the
// shift) after pi2. At n = j it lands in the bare carrier A_j.
inline std::vector<elem> kappa_table(const OmegaTower& t, int j, int n) {
  if (j < 0 || n < j || n > t.depth) throw DepthExceeded("kappa index exceeds tower depth");
  std::uint64_t domain = pr_d_size(t, n);
  std::vector<elem> out(domain);
  if (j == 0) {
    std::iota(out.begin(), out.end(), elem(0));
    return out;
  }
  OmegaTower sh = shift_tower(t);
  std::uint64_t minor = pr_d_size(sh, n - 1);
  std::vector<elem> kp = kappa_table(sh, j - 1, n - 1);
  for (std::uint64_t x = 0; x < domain; ++x) out[x] = kp[x % minor];
  return out;
}

inline std::vector<elem> eps_table(const OmegaTower& t, int j) { return eps_table(t, j, j); }
inline std::vector<elem> kappa_table(const OmegaTower& t, int j) { return kappa_table(t, j, j); }

// A truncated tower map: component j is a table pr_{offset+j} D[dom] -> B_j.
// Plain maps have offset 0; each derivative sequence raises the offset by one
// while the codomain tower loses a level.
struct OmegaMap {
  OmegaTower dom;
  OmegaTower cod;
  int offset = 0;
  std::vector<std::vector<elem>> comps;

  int depth() const { return cod.depth; }
};

inline void validate_omega_map(const OmegaMap& f) {
  if (f.offset < 0 || f.dom.depth - f.offset != f.cod.depth)
    throw ShapeMismatch("tower map depth bookkeeping is inconsistent");
  if (f.comps.size() != std::size_t(f.cod.depth) + 1)
    throw ShapeMismatch("tower map component count does not match depth");
  for (int j = 0; j <= f.cod.depth; ++j) {
    const auto& c = f.comps[std::size_t(j)];
    if (c.size() != pr_d_size(f.dom, f.offset + j))
      throw ShapeMismatch("tower map component does not match its derivative space");
    for (elem v : c)
      if (v >= f.cod.carriers[std::size_t(j)])
        throw ShapeMismatch("tower map component value out of range");
  }
}

// Differentiability to the available depth: each adjacent pair (f_j, f_{j+1})
// must be a differential map from D(dom, offset+j) to level j of the codomain,
// satisfying the derivative condition and regularity.
inline CheckReport omega_differentiable(const OmegaMap& f, const CheckOptions& opt = {}) {
  validate_omega_map(f);
  CheckReport all;
  all.law = "omega-differentiability";
  for (int j = 0; j < f.depth(); ++j) {
    DifferentialMap dm{derivative_space(f.dom, f.offset + j), f.cod.levels[std::size_t(j)],
                       f.comps[std::size_t(j)], f.comps[std::size_t(j) + 1]};
    require_shapes(dm);
    all = merge(all, check_derivative_condition(dm, opt));
    if (!all.passed) return all;
    all = merge(all, check_regularity(dm, opt));
    if (!all.passed) return all;
  }
  return all;
}

// pr_j Id = kappa(j).
inline OmegaMap identity_omega(const OmegaTower& t) {
  OmegaMap f{t, t, 0, {}};
  for (int j = 0; j <= t.depth; ++j) f.comps.push_back(kappa_table(t, j, j));
  return f;
}

inline bool same_omega_map(const OmegaMap& f, const OmegaMap& g) {
  return f.offset == g.offset && same_tower(f.dom, g.dom) && same_tower(f.cod, g.cod) &&
         f.comps == g.comps;
}

inline OmegaTower product_omega(const OmegaTower& a, const OmegaTower& b) {
  if (a.depth != b.depth) throw DepthMismatch("tower product needs equal depths");
  OmegaTower p;
  p.depth = a.depth;
  for (int j = 0; j <= a.depth; ++j) {
    std::uint64_t c = std::uint64_t(a.carriers[std::size_t(j)]) * b.carriers[std::size_t(j)];
    if (c > std::numeric_limits<elem>::max())
      throw SpaceTooLarge(c, std::numeric_limits<elem>::max());
    p.carriers.push_back(elem(c));
  }
  for (int j = 0; j < a.depth; ++j)
    p.levels.push_back(product_action(a.levels[std::size_t(j)], b.levels[std::size_t(j)]));
  return p;
}

inline OmegaTower terminal_tower(int depth) {
  OmegaTower t;
  t.depth = depth;
  t.carriers.assign(std::size_t(depth) + 1, 1);
  t.levels.assign(std::size_t(depth), terminal_action());
  return t;
}

// pr_j pi_which = pi_which after kappa(j).
inline OmegaMap omega_projection(const OmegaTower& a, const OmegaTower& b, int which) {
  OmegaTower p = product_omega(a, b);
  OmegaMap f{p, which == 0 ? a : b, 0, {}};
  for (int j = 0; j <= p.depth; ++j) {
    std::vector<elem> k = kappa_table(p, j, j);
    elem bn = b.carriers[std::size_t(j)];
    for (auto& v : k) v = which == 0 ? v / bn : v % bn;
    f.comps.push_back(std::move(k));
  }
  return f;
}

inline OmegaMap omega_pairing(const OmegaMap& f, const OmegaMap& g) {
  if (f.offset != g.offset || !same_tower(f.dom, g.dom) || f.depth() != g.depth())
    throw ShapeMismatch("tower pairing needs a common domain");
  OmegaMap p{f.dom, product_omega(f.cod, g.cod), f.offset, {}};
  for (int j = 0; j <= f.depth(); ++j) {
    const auto& cf = f.comps[std::size_t(j)];
    const auto& cg = g.comps[std::size_t(j)];
    elem bn = g.cod.carriers[std::size_t(j)];
    std::vector<elem> c(cf.size());
    for (std::size_t x = 0; x < c.size(); ++x) c[x] = elem(flatten2(cf[x], cg[x], bn));
    p.comps.push_back(std::move(c));
  }
  return p;
}

// pr_j D[f] = <f_j o eps(j), f_{j+1}>, one level shorter, one offset deeper.
inline OmegaMap derivative_sequence(const OmegaMap& f) {
  int n = f.depth();
  if (n < 1) throw DepthExceeded("cannot differentiate a depth-0 tower map");
  OmegaTower pair_cod = product_omega(truncate_tower(f.cod, n - 1), shift_tower(f.cod));
  OmegaMap out{f.dom, std::move(pair_cod), f.offset + 1, {}};
  for (int j = 0; j < n; ++j) {
    std::vector<elem> e = eps_table(f.dom, j, f.offset + j);
    const auto& fj = f.comps[std::size_t(j)];
    const auto& fj1 = f.comps[std::size_t(j) + 1];
    elem minor = f.cod.carriers[std::size_t(j) + 1];
    std::vector<elem> c(fj1.size());
    for (std::size_t x = 0; x < c.size(); ++x) c[x] = elem(flatten2(fj[e[x]], fj1[x], minor));
    out.comps.push_back(std::move(c));
  }
  return out;
}

// pr_j (g o f) = g_j o pr_0 D^j [f]. The inner tables t[n][j] realise
// pr_j D^n [f] compressed to its first component: t[n][j] maps
// pr_{n+j} D[dom f] into pr_n D of the j-th shift of cod f, with
// t[n+1][j] = <t[n][j] o eps(j, n+j), t[n][j+1]>.
inline OmegaMap compose_omega(const OmegaMap& g, const OmegaMap& f) {
  if (f.offset != 0 || g.offset != 0)
    throw CompositionMismatch("tower composition needs offset-free maps");
  if (!same_tower(f.cod, g.dom))
    throw CompositionMismatch("tower composition needs matching middle towers");
  int n_depth = f.depth();
  std::vector<std::vector<std::vector<elem>>> t(std::size_t(n_depth) + 1);
  t[0] = f.comps;
  for (int n = 0; n < n_depth; ++n) {
    t[std::size_t(n) + 1].resize(std::size_t(n_depth - n));
    for (int j = 0; j + n < n_depth; ++j) {
      std::vector<elem> e = eps_table(f.dom, j, n + j);
      std::uint64_t minor = pr_d_size(shift_pow(f.cod, j + 1), n);
      const auto& a0 = t[std::size_t(n)][std::size_t(j)];
      const auto& a1 = t[std::size_t(n)][std::size_t(j) + 1];
      std::vector<elem> out(a1.size());
      for (std::size_t x = 0; x < out.size(); ++x)
        out[x] = elem(std::uint64_t(a0[e[x]]) * minor + a1[x]);
      t[std::size_t(n) + 1][std::size_t(j)] = std::move(out);
    }
  }
  OmegaMap h{f.dom, g.cod, 0, {}};
  for (int j = 0; j <= n_depth; ++j) {
    const auto& tj = t[std::size_t(j)][0];
    const auto& gj = g.comps[std::size_t(j)];
    std::vector<elem> c(tj.size());
    for (std::size_t x = 0; x < c.size(); ++x) c[x] = gj[tj[x]];
    h.comps.push_back(std::move(c));
  }
  return h;
}

// The shuffle pr_j D[A x B] -> pr_j D[A] x pr_j D[B] (flattened), built by the
// same recursion as the derivative spaces themselves.
inline std::vector<elem> dspace_shuffle(const OmegaTower& a, const OmegaTower& b, int j) {
  if (a.depth != b.depth) throw DepthMismatch("shuffle needs equal depths");
  if (j < 0 || j > a.depth) throw DepthExceeded("shuffle index exceeds tower depth");
  std::uint64_t pa = pr_d_size(a, j), pb = pr_d_size(b, j);
  std::vector<elem> out(pa * pb);
  if (j == 0) {
    std::iota(out.begin(), out.end(), elem(0));
    return out;
  }
  OmegaTower sa = shift_tower(a), sb = shift_tower(b);
  std::vector<elem> su = dspace_shuffle(a, b, j - 1);
  std::vector<elem> sv = dspace_shuffle(sa, sb, j - 1);
  std::uint64_t pb1 = pr_d_size(b, j - 1);
  std::uint64_t qa = pr_d_size(sa, j - 1), qb = pr_d_size(sb, j - 1);
  for (std::uint64_t x = 0; x < out.size(); ++x) {
    std::uint64_t u = su[x / (qa * qb)], v = sv[x % (qa * qb)];
    std::uint64_t ua = u / pb1, ub = u % pb1;
    std::uint64_t va = v / qb, vb = v % qb;
    out[x] = elem((ua * qa + va) * pb + (ub * qb + vb));
  }
  return out;
}

// The canonical differential of f: component j is f_{j+1} read through the
// shuffle pr_j D[A x shift A] = pr_{j+1} D[A]. Together with f it plays the
// role of a derivative in the model whose change object is the shifted tower.
inline OmegaMap canonical_differential(const OmegaMap& f) {
  if (f.offset != 0) throw ShapeMismatch("canonical differential needs an offset-free map");
  int n = f.depth();
  if (n < 1) throw DepthExceeded("cannot differentiate a depth-0 tower map");
  OmegaTower trunc = truncate_tower(f.dom, n - 1);
  OmegaTower sh = shift_tower(f.dom);
  OmegaMap out{product_omega(trunc, sh), shift_tower(f.cod), 0, {}};
  for (int j = 0; j < n; ++j) {
    std::vector<elem> s = dspace_shuffle(trunc, sh, j);
    const auto& fj1 = f.comps[std::size_t(j) + 1];
    std::vector<elem> c(s.size());
    for (std::size_t x = 0; x < c.size(); ++x) c[x] = fj1[s[x]];
    out.comps.push_back(std::move(c));
  }
  return out;
}

// The chain A, Delta A, Delta^2 A, ... of a model object as a tower.
inline OmegaTower model_tower(ChangeActionModel& m, ObjId o, int depth,
                              std::uint64_t cap = default_max_space) {
  if (depth < 0) throw DepthExceeded("tower depth must be nonnegative");
  OmegaTower t;
  t.depth = depth;
  ObjId cur = o;
  for (int j = 0; j < depth; ++j) {
    t.carriers.push_back(m.object(cur).base_n);
    t.levels.push_back(m.object(cur));
    cur = m.delta_object(cur);
  }
  t.carriers.push_back(m.object(cur).base_n);
  validate_tower(t, cap);
  return t;
}

struct IteratedTower {
  OmegaTower dom_tower;
  OmegaTower cod_tower;
  OmegaMap map;
};

// Iterated differentiation of one base map: component 0 is f and component
// j+1 is the model derivative of component j, taken over the derivative-space
// object D(dom, j) that the model builds from its own products.
inline IteratedTower iterate_model(ChangeActionModel& m, ObjId dom, ObjId cod,
                                   const std::vector<elem>& f, int depth,
                                   std::uint64_t cap = default_max_space) {
  OmegaTower dt = model_tower(m, dom, depth, cap);
  OmegaTower ct = model_tower(m, cod, depth, cap);
  std::vector<ObjId> dc{dom}, cc{cod};
  for (int j = 0; j + 1 < depth; ++j) dc.push_back(m.delta_object(dc.back()));
  for (int j = 0; j + 1 < depth; ++j) cc.push_back(m.delta_object(cc.back()));
  // dobj[i][j] = D(shift^i, j) as a model object; differentiation only ever
  // consumes row 0 up to depth-1, so nothing larger is registered.
  std::vector<std::vector<ObjId>> dobj(dc.size());
  for (std::size_t i = 0; i < dc.size(); ++i) dobj[i].push_back(dc[i]);
  for (int j = 1; j < depth; ++j)
    for (std::size_t i = 0; i + std::size_t(j) < dc.size(); ++i)
      dobj[i].push_back(m.product_object(dobj[i][std::size_t(j) - 1], dobj[i + 1][std::size_t(j) - 1]));
  OmegaMap out{dt, ct, 0, {f}};
  for (int j = 0; j < depth; ++j)
    out.comps.push_back(m.differentiate(dobj[0][std::size_t(j)], cc[std::size_t(j)],
                                        out.comps[std::size_t(j)]));
  for (int j = 0; j <= depth; ++j)
    if (out.comps[std::size_t(j)].size() != pr_d_size(dt, j))
      throw Error("model products disagree with the tower layout");
  validate_omega_map(out);
  return {std::move(dt), std::move(ct), std::move(out)};
}

struct KleeneIterated {
  IteratedTower tower;
  std::vector<PolyMorphism> polys;  // polys[j] tabulates to map component j
};

// Same iteration for polynomial maps over a Kleene algebra: symbolic
// differentiation doubles the variable count at each level and every carrier
// stays the monoidal power of the algebra.
inline KleeneIterated kleene_iterate(const KleeneModel& km, const PolyMorphism& pm, int depth,
                                     std::uint64_t cap = default_max_space) {
  if (depth < 0) throw DepthExceeded("tower depth must be nonnegative");
  const KleeneAlgebra& alg = km.algebra();
  std::uint64_t dn = 1, cn = 1;
  for (elem i = 0; i < pm.arity; ++i) dn = saturating_mul(dn, alg.n);
  for (elem i = 0; i < pm.out_arity(); ++i) cn = saturating_mul(cn, alg.n);
  std::uint64_t tables = saturating_mul(std::max(dn, cn), std::max(dn, cn));
  if (tables > 100 * cap) throw SpaceTooLarge(tables, 100 * cap);
  OmegaTower dt, ct;
  dt.depth = ct.depth = depth;
  FiniteChangeAction dom_obj = km.object(pm.arity);
  FiniteChangeAction cod_obj = km.object(pm.out_arity());
  for (int j = 0; j <= depth; ++j) {
    dt.carriers.push_back(dom_obj.base_n);
    ct.carriers.push_back(cod_obj.base_n);
  }
  dt.levels.assign(std::size_t(depth), dom_obj);
  ct.levels.assign(std::size_t(depth), cod_obj);
  validate_tower(dt, cap);
  validate_tower(ct, cap);
  KleeneIterated out;
  out.polys.push_back(pm);
  for (int j = 0; j < depth; ++j) out.polys.push_back(differentiate_poly(out.polys.back()));
  OmegaMap map{dt, ct, 0, {}};
  for (const auto& p : out.polys) map.comps.push_back(km.tabulate(p));
  validate_omega_map(map);
  out.tower = {std::move(dt), std::move(ct), std::move(map)};
  return out;
}

struct CanonicalShift {
  OmegaTower delta_tower;  // the left shift, i.e. the change object
  OmegaMap action_lift;    // (a, d) |-> a (+) d as a tower map, depth - 1
  OmegaMap sum_lift;       // (d, d') |-> d + d' as a tower map, depth - 1
};

// Shifts a model-generated tower and lifts its two structure maps to tower
// maps by the same iteration, so their differentiability to the truncated
// depth can be checked like any other map's.
inline CanonicalShift canonical_shift(ChangeActionModel& m, ObjId o, int depth,
                                      std::uint64_t cap = default_max_space) {
  if (depth < 1) throw DepthExceeded("canonical shift needs depth at least 1");
  const FiniteChangeAction& a = m.object(o);
  ObjId d = m.delta_object(o);
  ObjId ta = m.product_object(o, d);
  ObjId dd = m.product_object(d, d);
  std::vector<elem> act(std::size_t(a.base_n) * a.delta.n);
  for (elem x = 0; x < a.base_n; ++x)
    for (elem dx = 0; dx < a.delta.n; ++dx) act[flatten2(x, dx, a.delta.n)] = a.act(x, dx);
  std::vector<elem> plus(std::size_t(a.delta.n) * a.delta.n);
  for (elem d1 = 0; d1 < a.delta.n; ++d1)
    for (elem d2 = 0; d2 < a.delta.n; ++d2)
      plus[flatten2(d1, d2, a.delta.n)] = a.delta.add(d1, d2);
  CanonicalShift out{model_tower(m, d, depth - 1, cap),
                     iterate_model(m, ta, o, act, depth - 1, cap).map,
                     iterate_model(m, dd, d, plus, depth - 1, cap).map};
  return out;
}

// Independent point oracle for the group model: the n-th derivative of f at a
// point of G^(2^n) (digits row-major, first digit most significant), by the
// closed recursion d^{k+1} f (u, v) = -d^k f(u) + d^k f(u ++ v) with ++ the
// digitwise group sum.
inline elem iterated_group_derivative_digits(const FiniteGroup& g, const std::vector<elem>& f,
                                             int n, std::vector<elem> digits) {
  if (n == 0) return f[digits[0]];
  std::size_t half = digits.size() / 2;
  std::vector<elem> u(digits.begin(), digits.begin() + std::ptrdiff_t(half));
  std::vector<elem> uv(half);
  for (std::size_t i = 0; i < half; ++i) uv[i] = g.add(digits[i], digits[half + i]);
  elem left = iterated_group_derivative_digits(g, f, n - 1, std::move(u));
  elem right = iterated_group_derivative_digits(g, f, n - 1, std::move(uv));
  return g.add(g.inverse(left), right);
}

inline elem iterated_group_derivative(const FiniteGroup& g, const std::vector<elem>& f, int n,
                                      std::uint64_t flat) {
  std::size_t width = std::size_t(1) << n;
  std::vector<elem> digits(width);
  for (std::size_t i = width; i-- > 0;) {
    digits[i] = elem(flat % g.n);
    flat /= g.n;
  }
  return iterated_group_derivative_digits(g, f, n, std::move(digits));
}

}  // namespace cact
