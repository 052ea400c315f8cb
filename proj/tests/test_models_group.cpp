#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "cact/boolean.hpp"
#include "cact/differential.hpp"
#include "cact/model.hpp"
#include "cact/tangent.hpp"

using namespace cact;

namespace {

std::vector<elem> random_endo(elem n, SplitMix64& rng) {
  std::vector<elem> f(n);
  for (elem i = 0; i < n; ++i) f[i] = elem(rng.below(n));
  return f;
}

// Enumerates all n^n endomap tables of {0..n-1}.
std::vector<std::vector<elem>> all_endos(elem n) {
  std::vector<std::vector<elem>> out;
  std::vector<elem> f(n, 0);
  while (true) {
    out.push_back(f);
    std::size_t k = f.size();
    while (k-- > 0) {
      if (++f[k] < n) break;
      f[k] = 0;
    }
    if (k == std::size_t(-1) && f[0] == 0) break;
  }
  return out;
}

}  // namespace

TEST_CASE("group model deduplicates and validates groups") {
  GroupModel m;
  ObjId a = m.add_group(cyclic_group(4));
  ObjId b = m.add_group(cyclic_group(4));
  ObjId c = m.add_group(cyclic_group(3));
  CHECK(a == b);
  CHECK(a != c);
  CHECK(m.object_count() == 2);
  CHECK(m.delta_object(a) == a);
  CHECK(m.object(a).base_n == 4);
  CHECK(m.object(a).delta.n == 4);

  FiniteGroup broken = cyclic_group(3);
  broken.plus[flatten2(1, 1, 3)] = 0;  // 1 + 1 is no longer 2
  CHECK_THROWS_AS(m.add_group(broken), Error);

  BoolAlgebra two(1);
  CHECK(xor_group(two, 3).n == 8);
  CHECK_THROWS_AS(xor_group(two, 14), SpaceTooLarge);
}

TEST_CASE("group derivatives satisfy the laws for every map") {
  GroupModel m;
  ObjId z5 = m.add_group(cyclic_group(5));
  for (const auto& f : all_endos(5)) {
    DifferentialMap hat = m.lift(z5, z5, f);
    CHECK(check_derivative_condition(hat).passed);
    CHECK(check_regularity(hat).passed);
  }

  ObjId s3 = m.add_group(symmetric_group_3());
  SplitMix64 rng(21);
  for (int i = 0; i < 100; ++i) {
    DifferentialMap hat = m.lift(s3, s3, random_endo(6, rng));
    CHECK(check_derivative_condition(hat).passed);
    CHECK(check_regularity(hat).passed);
  }
}

TEST_CASE("group derivatives are the only derivatives") {
  GroupModel m;
  ObjId z3 = m.add_group(cyclic_group(3));
  const FiniteChangeAction& obj = m.object(z3);
  for (const auto& f : all_endos(3)) {
    DerivativeSolutions sol = solve_derivative(f, obj, obj);
    REQUIRE(sol.unique());
    CHECK(sol.enumerate()[0] == m.differentiate(z3, z3, f));
  }
}

TEST_CASE("group derivative of squaring mod five") {
  GroupModel m;
  ObjId z5 = m.add_group(cyclic_group(5));
  std::vector<elem> sq = {0, 1, 4, 4, 1};
  std::vector<elem> expected = {0, 1, 4, 4, 1,  //
                                0, 3, 3, 0, 4,  //
                                0, 0, 2, 1, 2,  //
                                0, 2, 1, 2, 0,  //
                                0, 4, 0, 3, 3};
  CHECK(m.differentiate(z5, z5, sq) == expected);
}

TEST_CASE("group model composition matches the chain rule") {
  GroupModel m;
  ObjId z5 = m.add_group(cyclic_group(5));
  SplitMix64 rng(7);
  for (int i = 0; i < 40; ++i) {
    std::vector<elem> f = random_endo(5, rng);
    std::vector<elem> g = random_endo(5, rng);
    std::vector<elem> gf(5);
    for (elem x = 0; x < 5; ++x) gf[x] = g[f[x]];
    DifferentialMap lhs = compose(m.lift(z5, z5, g), m.lift(z5, z5, f));
    DifferentialMap rhs = m.lift(z5, z5, gf);
    CHECK(lhs.same_tables(rhs));
  }
}

TEST_CASE("product objects multiply carriers") {
  GroupModel m;
  ObjId z2 = m.add_group(cyclic_group(2));
  ObjId z3 = m.add_group(cyclic_group(3));
  ObjId p = m.product_object(z2, z3);
  CHECK(m.group(p).n == 6);
  CHECK(m.object(p).base_n == 6);
  // Row-major pairing: (1, 2) sits at index 5 and (1, 2) + (1, 2) = (0, 1).
  CHECK(m.group(p).add(5, 5) == 1);

  DifferentialMap fst = projection(m.object(z2), m.object(z3), 0);
  DifferentialMap lifted = m.lift(p, z2, fst.f);
  CHECK(lifted.same_tables(fst));
}

TEST_CASE("trivial model gives the null derivative") {
  TrivialModel m;
  CHECK(m.object_count() == 1);  // seeded with the one-point object
  ObjId o = m.add_size(3);
  CHECK(m.delta_object(o) == 0);
  CHECK(m.object(o).delta.n == 1);
  std::vector<elem> f = {2, 0, 1};
  CHECK(m.differentiate(o, o, f) == std::vector<elem>{0, 0, 0});
  DifferentialMap hat = m.lift(o, o, f);
  CHECK(check_derivative_condition(hat).passed);
  CHECK(check_regularity(hat).passed);
  CHECK(check_stability(hat).passed);

  ObjId p = m.product_object(o, o);
  CHECK(m.object(p).base_n == 9);
  CHECK_THROWS_AS(m.differentiate(o, o, std::vector<elem>{0, 1}), ShapeMismatch);
}

TEST_CASE("family model requires change objects and lawful members") {
  FiniteMonoid t22 = truncated_nat_monoid(2, 2);
  FiniteChangeAction parity = make_monoidal(cyclic_group(2));
  parity.delta = t22;
  parity.action = {0, 1, 0, 1, 1, 0, 1, 0};

  CHECK_THROWS_AS(FamilyTableModel({parity}), NotClosedUnderDelta);
  FamilyTableModel fam({parity, make_monoidal(t22)});
  CHECK(fam.object_count() == 2);
  CHECK(fam.delta_object(0) == 1);
  CHECK(fam.delta_object(1) == 1);

  FiniteChangeAction bad = make_monoidal(or_monoid());
  bad.action[flatten2(1, 0, 2)] = 0;  // null change no longer fixes 1
  CHECK_THROWS_AS(FamilyTableModel({bad}), Error);
}

TEST_CASE("family model derives products on demand") {
  FiniteMonoid t22 = truncated_nat_monoid(2, 2);
  FamilyTableModel fam({make_monoidal(t22)});
  CHECK(fam.object_count() == 1);
  ObjId p = fam.product_object(0, 0);
  CHECK(fam.object(p).base_n == 16);
  CHECK(fam.object_count() == 2);
  // A product of monoidal actions is the monoidal action of the product
  // monoid, so it is its own change object.
  CHECK(fam.delta_object(p) == p);
  CHECK(fam.object_count() == 2);

  FiniteChangeAction parity = make_monoidal(cyclic_group(2));
  parity.delta = t22;
  parity.action = {0, 1, 0, 1, 1, 0, 1, 0};
  FamilyTableModel mixed({parity, make_monoidal(t22)});
  ObjId q = mixed.product_object(0, 1);
  CHECK(mixed.object(q).base_n == 8);
  CHECK(mixed.object_count() == 3);
  ObjId dq = mixed.delta_object(q);
  CHECK(mixed.object(dq).base_n == 16);
  CHECK(mixed.object_count() == 4);
}

TEST_CASE("family model finds unique derivatives and rejects the rest") {
  FamilyTableModel fam({make_monoidal(cyclic_group(2))});
  // In a group the derivative is forced, so the search recovers it.
  CHECK(fam.differentiate(0, 0, std::vector<elem>{1, 0}) == std::vector<elem>{0, 1, 0, 1});
  DifferentialMap hat = fam.lift(0, 0, {1, 0});
  CHECK(check_derivative_condition(hat).passed);

  FamilyTableModel join({make_monoidal(or_monoid())});
  try {
    join.differentiate(0, 0, {0, 1});  // both changes work at the top element
    FAIL("expected an ambiguity error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("more than one derivative") != std::string::npos);
  }
  // Into a rigid codomain the null cells pin the null change, and a moving
  // value has nothing to match it, so the search comes up empty.
  FamilyTableModel rigid(
      {make_monoidal(or_monoid()), make_trivial(2), make_monoidal(trivial_monoid())});
  try {
    rigid.differentiate(0, 1, {0, 1});
    FAIL("expected a non-differentiability error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("not differentiable") != std::string::npos);
  }
}

TEST_CASE("family model agrees with the group model on groups") {
  GroupModel gm;
  ObjId z3g = gm.add_group(cyclic_group(3));
  FamilyTableModel fam({make_monoidal(cyclic_group(3))});
  for (const auto& f : all_endos(3))
    CHECK(fam.differentiate(0, 0, f) == gm.differentiate(z3g, z3g, f));
}

TEST_CASE("tangent carrier and structure map tables") {
  GroupModel m;
  ObjId z2 = m.add_group(cyclic_group(2));
  ObjId t = tangent_object(m, z2);
  CHECK(m.object(t).base_n == 4);

  CHECK(zero_section_base(m, z2) == std::vector<elem>{0, 2});
  CHECK(tangent_proj_base(m, z2) == std::vector<elem>{0, 0, 1, 1});
  CHECK(action_base(m, z2) == std::vector<elem>{0, 1, 1, 0});
  CHECK(tangent_l_base(m, z2) == std::vector<elem>{0, 2, 8, 10});
  CHECK(tangent_mu_base(m, z2) ==
        std::vector<elem>{0, 0, 1, 1, 1, 1, 0, 0, 2, 2, 3, 3, 3, 3, 2, 2});

  // T f pairs the map with its derivative: for negation on Z2 that is
  // (a, d) |-> (1 - a, d).
  CHECK(tangent_base(m, z2, z2, {1, 0}) == std::vector<elem>{2, 3, 0, 1});
  DifferentialMap tf = tangent_lift(m, z2, z2, {1, 0});
  CHECK(check_derivative_condition(tf).passed);
}

TEST_CASE("tangent monad laws hold") {
  GroupModel m;
  ObjId z2 = m.add_group(cyclic_group(2));
  TangentMonadReport r2 = tangent_monad_check(m, z2);
  CHECK(r2.all());
  CHECK(r2.maps_checked == 4);

  ObjId z4 = m.add_group(cyclic_group(4));
  TangentMonadReport r4 = tangent_monad_check(m, z4);
  CHECK(r4.all());
  CHECK(r4.maps_checked == 256);

  ObjId s3 = m.add_group(symmetric_group_3());
  TangentMonadReport rs = tangent_monad_check(m, s3, 512, 20, 3);
  CHECK(rs.all());
  CHECK(rs.maps_checked == 20);

  TrivialModel tm;
  ObjId o = tm.add_size(3);
  TangentMonadReport rt = tangent_monad_check(tm, o);
  CHECK(rt.all());
  CHECK(rt.maps_checked == 27);
}

TEST_CASE("tangent of a product shuffles into the product of tangents") {
  GroupModel m;
  ObjId z2 = m.add_group(cyclic_group(2));
  ObjId z3 = m.add_group(cyclic_group(3));
  std::vector<elem> shuffle = tangent_product_shuffle(m, z2, z3);
  REQUIRE(shuffle.size() == 36);

  std::vector<bool> seen(36, false);
  for (elem v : shuffle) {
    REQUIRE(v < 36);
    CHECK_FALSE(seen[v]);
    seen[v] = true;
  }

  ObjId dom = m.product_object(tangent_object(m, z2), tangent_object(m, z3));
  ObjId cod = tangent_object(m, m.product_object(z2, z3));
  DifferentialMap hat = m.lift(dom, cod, shuffle);
  CHECK(check_derivative_condition(hat).passed);
  CHECK(check_regularity(hat).passed);
}
