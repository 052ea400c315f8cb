#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "cact/differential.hpp"
#include "cact/kleene.hpp"

using namespace cact;

namespace {

std::string round_trip(const std::string& src, const KleeneAlgebra& k) {
  KleenePoly p = parse_kleene_poly(src, k);
  elem arity = std::max<elem>(max_variable_plus_one(p), 1);
  return poly_to_string(p, arity, k.elem_names);
}

}  // namespace

TEST_CASE("kleene axioms hold for the built-in algebras") {
  CHECK(make_boolean_ka().check_axioms().passed);
  CHECK(make_tropical_ka(3).check_axioms().passed);
  CHECK(make_sumset_ka(2).check_axioms().passed);

  CHECK(make_named_kleene("boolean").n == 2);
  CHECK(make_named_kleene("tropical:3").n == 5);
  CHECK(make_named_kleene("sumset:2").n == 8);
  CHECK_THROWS_AS(make_named_kleene("sumset:0"), Error);
  CHECK_THROWS_AS(make_named_kleene("tropical:x"), Error);
  CHECK_THROWS_AS(make_named_kleene("frob"), Error);
}

TEST_CASE("algebra order, star and saturation") {
  KleeneAlgebra b = make_boolean_ka();
  CHECK(b.st(0) == 1);
  CHECK(b.st(1) == 1);
  CHECK(b.leq(0, 1));
  CHECK_FALSE(b.leq(1, 0));

  // Index 0 is inf, index i+1 the number i; min is the sum, so larger
  // numbers sit lower and inf is the bottom.
  KleeneAlgebra t = make_tropical_ka(3);
  CHECK(t.elem_names[0] == "inf");
  CHECK(t.elem_names[1] == "0");
  CHECK(t.leq(3, 2));
  CHECK_FALSE(t.leq(2, 3));
  for (elem a = 0; a < t.n; ++a) {
    CHECK(t.leq(0, a));
    CHECK(t.st(a) == 1);
  }
  CHECK(t.mul(4, 4) == 4);  // 3 + 3 saturates at the bound
  CHECK(t.mul(0, 4) == 0);  // inf absorbs

  KleeneAlgebra s = make_sumset_ka(2);
  CHECK(s.elem_names[0] == "{}");
  CHECK(s.elem_names[7] == "{0,1,2}");
  CHECK(s.st(2) == 7);           // {1}* accumulates {0,1,2}
  CHECK(s.mul(2, 2) == 4);       // {1} + {1} = {2}
  CHECK(s.mul(4, 4) == 4);       // 2 + 2 saturates into the top bucket
  CHECK(s.leq(1, 3));
  CHECK_FALSE(s.leq(2, 4));
  CHECK_FALSE(s.leq(4, 2));      // incomparable elements exist
}

TEST_CASE("polynomial parser round-trips") {
  KleeneAlgebra b = make_boolean_ka();
  CHECK(round_trip("x.x", b) == "x.x");
  CHECK(round_trip("x (x + 1)", b) == "x.(x + 1)");
  CHECK(round_trip("x + x.x", b) == "x + x.x");
  CHECK(round_trip("(x + 1)*", b) == "(x + 1)*");
  CHECK(round_trip("x*", b) == "x*");
  CHECK(round_trip("x**", b) == "x**");
  CHECK(round_trip("0 + 1", b) == "0 + 1");
  CHECK(round_trip("x y", b) == "x.y");
  CHECK(round_trip("x1.x2.x3", b) == "x1.x2.x3");

  KleeneAlgebra t = make_tropical_ka(3);
  CHECK(round_trip("inf + 2", t) == "inf + 2");
  KleenePoly two = parse_kleene_poly("2", t);
  CHECK(two.value == 3);  // literal v is stored at index v + 1

  KleeneAlgebra s = make_sumset_ka(2);
  KleenePoly singleton = parse_kleene_poly("2", s);
  CHECK(singleton.value == 4);  // literal v is the singleton mask {v}
  CHECK(round_trip("0.x + 2", s) == "{0}.x + {2}");

  CHECK_THROWS_AS(parse_kleene_poly("xy", b), ParseError);
  CHECK_THROWS_AS(parse_kleene_poly("x0", b), ParseError);
  CHECK_THROWS_AS(parse_kleene_poly("x +", b), ParseError);
  CHECK_THROWS_AS(parse_kleene_poly("(x", b), ParseError);
  CHECK_THROWS_AS(parse_kleene_poly("x)", b), ParseError);
  CHECK_THROWS_AS(parse_kleene_poly("2", b), ParseError);
  CHECK_THROWS_AS(parse_kleene_poly("inf", b), ParseError);
  CHECK_THROWS_AS(parse_kleene_poly("4", t), ParseError);
}

TEST_CASE("formal derivative shapes") {
  KleeneAlgebra b = make_boolean_ka();
  auto dstr = [&](const char* src) {
    KleenePoly p = parse_kleene_poly(src, b);
    return poly_to_string(formal_derivative(p, 0), 1, b.elem_names);
  };
  CHECK(dstr("x") == "1");
  CHECK(dstr("1") == "0");
  CHECK(dstr("x.x") == "x.1 + x.1");
  CHECK(dstr("x*") == "x*.1");
  CHECK(dstr("x + 1") == "1 + 0");

  KleeneAlgebra t = make_tropical_ka(3);
  KleenePoly star = parse_kleene_poly("x*", t);
  CHECK(poly_to_string(formal_derivative(star, 0), 1, t.elem_names) == "x*.0");
}

TEST_CASE("polynomial derivative tables") {
  KleeneAlgebra b = make_boolean_ka();
  KleeneModel km(b);
  PolyMorphism pm{1, {parse_kleene_poly("x.x", b)}};
  PolyMorphism dpm = differentiate_poly(pm);
  CHECK(dpm.arity == 2);
  REQUIRE(dpm.comps.size() == 1);
  // dp(x, y) collapses to y.(x + y) in the two-element algebra.
  CHECK(km.tabulate(dpm) == std::vector<elem>{0, 1, 0, 1});
  CHECK(km.tabulate(pm) == std::vector<elem>{0, 1});

  DifferentialMap hat = km.lift(pm);
  CHECK(check_derivative_condition(hat).passed);
  CHECK(check_regularity(hat).passed);
}

TEST_CASE("unary polynomial enumeration counts") {
  CHECK(enumerate_unary_polys(1).size() == 3);
  CHECK(enumerate_unary_polys(5).size() == 411);
  CHECK(enumerate_unary_polys(7).size() == 8427);
}

TEST_CASE("taylor expansion and regularity on small polynomial populations") {
  KleeneAlgebra b = make_boolean_ka();
  KleeneAlgebra t = make_tropical_ka(3);
  std::size_t checked = 0;
  for (const KleenePoly& p : enumerate_unary_polys(5)) {
    CHECK(taylor_check(p, 1, b).passed);
    CHECK(kleene_regularity_check(p, b).passed);
    CHECK(taylor_check(p, 1, t).passed);
    CHECK(kleene_regularity_check(p, t).passed);
    ++checked;
  }
  CHECK(checked == 411);

  SplitMix64 rng(11);
  KleeneAlgebra s = make_sumset_ka(2);
  for (int i = 0; i < 50; ++i) {
    KleenePoly p = random_poly(rng, 7, 1, s.n);
    CHECK(taylor_check(p, 1, s).passed);
    CHECK(kleene_regularity_check(p, s).passed);
  }
}

TEST_CASE("non-additive derivatives need incomparable elements") {
  CHECK_FALSE(nonadditivity_witness(make_boolean_ka()).has_value());
  CHECK_FALSE(nonadditivity_witness(make_tropical_ka(3)).has_value());

  auto w = nonadditivity_witness(make_sumset_ka(2));
  REQUIRE(w.has_value());
  CHECK(w->p_text == "x.x");
  CHECK(w->a == 0);
  CHECK(w->b == 1);
  CHECK(w->c == 2);
  CHECK(w->joint == 7);     // dp({}, {0} + {1}) covers {0,1,2}
  CHECK(w->separate == 5);  // the split sum only reaches {0,2}
  KleeneAlgebra s = make_sumset_ka(2);
  CHECK(s.leq(w->separate, w->joint));
}

TEST_CASE("polynomial morphisms compose along the chain rule") {
  KleeneAlgebra b = make_boolean_ka();
  KleeneModel km(b);
  SplitMix64 rng(5);
  for (int i = 0; i < 30; ++i) {
    PolyMorphism f{2, {random_poly(rng, 5, 2, b.n), random_poly(rng, 5, 2, b.n)}};
    PolyMorphism g{2, {random_poly(rng, 5, 2, b.n)}};
    DifferentialMap composed = compose(km.lift(g), km.lift(f));
    DifferentialMap lifted = km.lift(compose_poly(g, f));
    CHECK(composed.same_tables(lifted));
  }

  KleeneModel kt(make_tropical_ka(2));
  SplitMix64 rng2(6);
  for (int i = 0; i < 20; ++i) {
    PolyMorphism f{1, {random_poly(rng2, 5, 1, kt.algebra().n)}};
    PolyMorphism g{1, {random_poly(rng2, 5, 1, kt.algebra().n)}};
    CHECK(compose(kt.lift(g), kt.lift(f)).same_tables(kt.lift(compose_poly(g, f))));
  }
}

TEST_CASE("identity morphisms and composition shapes") {
  PolyMorphism id2 = identity_poly(2);
  CHECK(id2.arity == 2);
  REQUIRE(id2.comps.size() == 2);
  CHECK(id2.comps[0].kind == KleenePoly::Kind::variable);
  CHECK(id2.comps[1].value == 1);

  KleeneAlgebra b = make_boolean_ka();
  KleeneModel km(b);
  CHECK(km.object(2).base_n == 4);
  CHECK(km.lift(id2).same_tables(identity_map(km.object(2))));

  PolyMorphism unary{1, {kvar(0)}};
  CHECK_THROWS_AS(compose_poly(id2, unary), ShapeMismatch);
  CHECK_THROWS_AS(substitute(kvar(1), {kvar(0)}), Error);
}

TEST_CASE("random polynomials are reproducible") {
  KleeneAlgebra b = make_boolean_ka();
  SplitMix64 r1(99), r2(99);
  for (int i = 0; i < 10; ++i) {
    KleenePoly p = random_poly(r1, 6, 2, b.n);
    KleenePoly q = random_poly(r2, 6, 2, b.n);
    CHECK(poly_to_string(p, 2, b.elem_names) == poly_to_string(q, 2, b.elem_names));
  }
}
