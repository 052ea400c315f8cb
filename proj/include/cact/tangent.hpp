#pragma once

#include <cstddef>
#include <vector>

#include "cact/differential.hpp"
#include "cact/finite.hpp"
#include "cact/model.hpp"

namespace cact {

// T A = A x DeltaA, as a model object so it can be differentiated into.
inline ObjId tangent_object(ChangeActionModel& m, ObjId o) {
  return m.product_object(o, m.delta_object(o));
}

// Base table of T f = <f o pi1, df> over the tangent carriers.
inline std::vector<elem> tangent_base(ChangeActionModel& m, ObjId dom, ObjId cod,
                                      const std::vector<elem>& f) {
  const FiniteChangeAction& a = m.object(dom);
  const FiniteChangeAction& b = m.object(cod);
  std::vector<elem> df = m.differentiate(dom, cod, f);
  std::vector<elem> t(std::size_t(a.base_n) * a.delta.n);
  for (elem x = 0; x < a.base_n; ++x)
    for (elem d = 0; d < a.delta.n; ++d)
      t[flatten2(x, d, a.delta.n)] = elem(flatten2(f[x], df[flatten2(x, d, a.delta.n)], b.delta.n));
  return t;
}

inline DifferentialMap tangent_lift(ChangeActionModel& m, ObjId dom, ObjId cod,
                                    const std::vector<elem>& f) {
  return m.lift(tangent_object(m, dom), tangent_object(m, cod), tangent_base(m, dom, cod, f));
}

// z : A -> T A, a |-> (a, 0).
inline std::vector<elem> zero_section_base(ChangeActionModel& m, ObjId o) {
  const FiniteChangeAction& a = m.object(o);
  std::vector<elem> t(a.base_n);
  for (elem x = 0; x < a.base_n; ++x) t[x] = elem(flatten2(x, a.delta.zero, a.delta.n));
  return t;
}

// The action as a map T A -> A, (a, d) |-> a (+) d.
inline std::vector<elem> action_base(ChangeActionModel& m, ObjId o) {
  const FiniteChangeAction& a = m.object(o);
  std::vector<elem> t(std::size_t(a.base_n) * a.delta.n);
  for (elem x = 0; x < a.base_n; ++x)
    for (elem d = 0; d < a.delta.n; ++d) t[flatten2(x, d, a.delta.n)] = a.act(x, d);
  return t;
}

// pi1 : T A -> A.
inline std::vector<elem> tangent_proj_base(ChangeActionModel& m, ObjId o) {
  const FiniteChangeAction& a = m.object(o);
  std::vector<elem> t(std::size_t(a.base_n) * a.delta.n);
  for (elem x = 0; x < a.base_n; ++x)
    for (elem d = 0; d < a.delta.n; ++d) t[flatten2(x, d, a.delta.n)] = x;
  return t;
}

// l : T A -> T^2 A, (a, d) |-> ((a, 0), (d, 0)).
inline std::vector<elem> tangent_l_base(ChangeActionModel& m, ObjId o) {
  ObjId to = tangent_object(m, o);
  const FiniteChangeAction& a = m.object(o);
  const FiniteChangeAction& ta = m.object(to);
  elem d2n = ta.delta.n / a.delta.n;  // |Delta^2 A|, second factor of Delta(T A)
  elem z2 = ta.delta.zero % d2n;
  std::vector<elem> t(std::size_t(a.base_n) * a.delta.n);
  for (elem x = 0; x < a.base_n; ++x)
    for (elem d = 0; d < a.delta.n; ++d) {
      elem ta0 = elem(flatten2(x, a.delta.zero, a.delta.n));
      elem dta = elem(flatten2(d, z2, d2n));
      t[flatten2(x, d, a.delta.n)] = elem(flatten2(ta0, dta, ta.delta.n));
    }
  return t;
}

// mu : T^2 A -> T A, ((a, d), (d', d'')) |-> (a, d + d'). Only T A is
// registered as an object; the T^2 carrier size is |T A| * |Delta(T A)|.
inline std::vector<elem> tangent_mu_base(ChangeActionModel& m, ObjId o) {
  ObjId to = tangent_object(m, o);
  const FiniteChangeAction& a = m.object(o);
  const FiniteChangeAction& ta = m.object(to);
  elem d2n = ta.delta.n / a.delta.n;
  std::vector<elem> t(std::size_t(ta.base_n) * ta.delta.n);
  for (std::size_t x2 = 0; x2 < t.size(); ++x2) {
    elem base = elem(x2 / ta.delta.n), dta = elem(x2 % ta.delta.n);
    elem x = base / a.delta.n, d = base % a.delta.n;
    elem d1 = dta / d2n;
    t[x2] = elem(flatten2(x, a.delta.add(d, d1), a.delta.n));
  }
  return t;
}

// T A x T B -> T (A x B): ((a, da), (b, db)) |-> ((a, b), (da, db)).
inline std::vector<elem> tangent_product_shuffle(ChangeActionModel& m, ObjId a_id, ObjId b_id) {
  const FiniteChangeAction& a = m.object(a_id);
  const FiniteChangeAction& b = m.object(b_id);
  std::vector<elem> t(std::size_t(a.base_n) * a.delta.n * b.base_n * b.delta.n);
  IndexSpace dom({a.base_n, a.delta.n, b.base_n, b.delta.n});
  std::vector<elem> tup(4);
  for (std::size_t i = 0; i < t.size(); ++i) {
    dom.unflatten(i, tup);
    elem ab = elem(flatten2(tup[0], tup[2], b.base_n));
    elem dab = elem(flatten2(tup[1], tup[3], b.delta.n));
    t[i] = elem(flatten2(ab, dab, elem(std::uint64_t(a.delta.n) * b.delta.n)));
  }
  return t;
}

struct TangentMonadReport {
  bool unit_left = false;    // mu o T z = Id
  bool unit_right = false;   // mu o z_T = Id
  bool assoc = false;        // mu o T mu = mu o mu_T
  bool nat_proj = false;     // pi1 o T f = f o pi1
  bool nat_act = false;      // (+) o T f = f o (+)
  bool nat_zero = false;     // T f o z = z o f
  bool nat_l = false;        // T^2 f o l = l o T f
  std::size_t maps_checked = 0;

  bool all() const {
    return unit_left && unit_right && assoc && nat_proj && nat_act && nat_zero && nat_l;
  }
};

// Checks the monad laws of (T, z, mu) and naturality of the structure maps at
// a single object, quantifying over endomaps of it. Unit laws and naturality
// are compared as full differential maps. Associativity lives at T^3, where a
// derivative table may not fit; the two composites are then compared on base
// tables, which determines the maps whenever derivatives are unique (as in
// group models).
inline TangentMonadReport tangent_monad_check(ChangeActionModel& m, ObjId o,
                                              std::size_t max_maps = 512,
                                              std::size_t samples = 50,
                                              std::uint64_t seed = 0) {
  TangentMonadReport rep;
  ObjId to = tangent_object(m, o);
  ObjId t2o = tangent_object(m, to);
  const FiniteChangeAction& a = m.object(o);

  std::vector<elem> z = zero_section_base(m, o);
  std::vector<elem> mu = tangent_mu_base(m, o);
  DifferentialMap mu_hat = m.lift(t2o, to, mu);
  DifferentialMap id_ta = identity_map(m.object(to));

  rep.unit_left = compose(mu_hat, m.lift(to, t2o, tangent_base(m, o, to, z))).same_tables(id_ta);
  rep.unit_right = compose(mu_hat, m.lift(to, t2o, zero_section_base(m, to))).same_tables(id_ta);

  std::vector<elem> t_mu = tangent_base(m, t2o, to, mu);     // T mu : T^3 -> T^2
  std::vector<elem> mu_t = tangent_mu_base(m, to);           // mu at T A : T^3 -> T^2
  // T^3 sized arithmetically so the object is only registered when small.
  std::uint64_t t3n = std::uint64_t(m.object(t2o).base_n) * m.object(t2o).delta.n;
  if (t3n * t3n <= default_max_space) {
    ObjId t3o = tangent_object(m, t2o);
    rep.assoc = compose(mu_hat, m.lift(t3o, t2o, t_mu)).same_tables(
        compose(mu_hat, m.lift(t3o, t2o, mu_t)));
  } else {
    rep.assoc = true;
    for (std::uint64_t x = 0; x < t3n && rep.assoc; ++x)
      if (mu[t_mu[x]] != mu[mu_t[x]]) rep.assoc = false;
  }

  DifferentialMap pi_hat = m.lift(to, o, tangent_proj_base(m, o));
  DifferentialMap act_hat = m.lift(to, o, action_base(m, o));
  DifferentialMap z_hat = m.lift(o, to, z);
  DifferentialMap l_hat = m.lift(to, t2o, tangent_l_base(m, o));

  rep.nat_proj = rep.nat_act = rep.nat_zero = rep.nat_l = true;
  auto check_map = [&](const std::vector<elem>& f) {
    DifferentialMap f_hat = m.lift(o, o, f);
    DifferentialMap tf_hat = m.lift(to, to, tangent_base(m, o, o, f));
    DifferentialMap t2f_hat = m.lift(t2o, t2o, tangent_base(m, to, to, tf_hat.f));
    if (!compose(pi_hat, tf_hat).same_tables(compose(f_hat, pi_hat))) rep.nat_proj = false;
    if (!compose(act_hat, tf_hat).same_tables(compose(f_hat, act_hat))) rep.nat_act = false;
    if (!compose(tf_hat, z_hat).same_tables(compose(z_hat, f_hat))) rep.nat_zero = false;
    if (!compose(t2f_hat, l_hat).same_tables(compose(l_hat, tf_hat))) rep.nat_l = false;
    ++rep.maps_checked;
  };

  double total = 1;
  for (elem x = 0; x < a.base_n; ++x) total *= a.base_n;
  if (total <= double(max_maps)) {
    std::vector<elem> f(a.base_n, 0);
    bool done = a.base_n == 0;
    while (!done) {
      check_map(f);
      std::size_t k = f.size();
      while (k-- > 0) {
        if (++f[k] < a.base_n) break;
        f[k] = 0;
        if (k == 0) done = true;
      }
    }
  } else {
    SplitMix64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<elem> f(a.base_n);
      for (auto& v : f) v = elem(rng.below(a.base_n));
      check_map(f);
    }
  }
  return rep;
}

}  // namespace cact
