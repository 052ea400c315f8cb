#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "cact/change_action.hpp"
#include "cact/differential.hpp"
#include "cact/monoid.hpp"

using namespace cact;

namespace {

// Translation derivative over a cyclic group: df(a, d) = f(a + d) - f(a).
DifferentialMap cyclic_map(elem n, std::vector<elem> f) {
  FiniteChangeAction a = make_monoidal(cyclic_group(n));
  DifferentialMap m{a, a, std::move(f), {}};
  m.df.resize(std::size_t(n) * n);
  for (elem x = 0; x < n; ++x)
    for (elem d = 0; d < n; ++d)
      m.df[flatten2(x, d, n)] = elem((m.f[(x + d) % n] + n - m.f[x]) % n);
  return m;
}

// Change action on {0,1} whose changes count parity: the monoid is the
// threshold-2 period-2 truncation of (N, +) and the action flips by parity.
FiniteChangeAction parity_action() {
  FiniteChangeAction a;
  a.base_n = 2;
  a.delta = truncated_nat_monoid(2, 2);
  a.action = {0, 1, 0, 1,
              1, 0, 1, 0};
  return a;
}

}  // namespace

TEST_CASE("identity maps satisfy all laws and have delta as derivative") {
  for (elem n = 2; n <= 5; ++n) {
    DifferentialMap id = identity_map(make_monoidal(cyclic_group(n)));
    CHECK(check_derivative_condition(id).passed);
    CHECK(check_regularity(id).passed);
    CHECK(check_stability(id).passed);
    CHECK(id.deriv(1 % n, 1 % n) == 1 % n);
  }
}

TEST_CASE("the identity derivative is unique on a monoidal group action") {
  FiniteChangeAction z4 = make_monoidal(cyclic_group(4));
  std::vector<elem> f{0, 1, 2, 3};
  DerivativeSolutions sol = solve_derivative(f, z4, z4);
  REQUIRE(sol.count());
  CHECK(*sol.count() == 1);
  CHECK(sol.unique());
  CHECK(sol.enumerate()[0] == identity_map(z4).df);
}

TEST_CASE("constant maps have the zero derivative, uniquely on group actions") {
  FiniteChangeAction z3 = make_monoidal(cyclic_group(3));
  std::vector<elem> f{2, 2, 2};
  DerivativeSolutions sol = solve_derivative(f, z3, z3);
  REQUIRE(sol.unique());
  std::vector<elem> df = sol.enumerate()[0];
  for (elem v : df) CHECK(v == 0);
}

TEST_CASE("derivatives can exist in abundance with none regular") {
  // Identity from the xor action into the parity-counting action: every cell
  // has two parity-correct candidates, so 16 derivative tables, and the
  // truncation keeps any of them from being regular: two odd changes add to
  // the class of 2, never to 0.
  FiniteChangeAction dom = make_monoidal(cyclic_group(2));
  FiniteChangeAction cod = parity_action();
  REQUIRE(cod.check_laws().passed);

  std::vector<elem> f{0, 1};
  DerivativeSolutions sol = solve_derivative(f, dom, cod);
  REQUIRE(sol.count());
  CHECK(*sol.count() == 16);

  int regular = 0;
  for (const auto& df : sol.enumerate()) {
    DifferentialMap m{dom, cod, f, df};
    CHECK(check_derivative_condition(m).passed);
    if (check_regularity(m).passed) ++regular;
  }
  CHECK(regular == 0);
}

TEST_CASE("squaring on Z5 has the expected translation derivative") {
  DifferentialMap sq = cyclic_map(5, {0, 1, 4, 4, 1});
  // df(a, d) = 2ad + d^2 mod 5, tabulated.
  std::vector<elem> expected{0, 1, 4, 4, 1,
                             0, 3, 3, 0, 4,
                             0, 0, 2, 1, 2,
                             0, 2, 1, 2, 0,
                             0, 4, 0, 3, 3};
  CHECK(sq.df == expected);
  CHECK(check_derivative_condition(sq).passed);
  CHECK(check_regularity(sq).passed);

  CheckReport stable = check_stability(sq);
  REQUIRE(!stable.passed);
  REQUIRE(stable.witness);
  CHECK(*stable.witness == std::vector<elem>{0, 1, 1});

  CheckReport additive = check_additive_in_change(sq);
  REQUIRE(!additive.passed);
  REQUIRE(additive.witness);
  CHECK(*additive.witness == std::vector<elem>{0, 1, 1});  // cross term 2*d1*d2
}

TEST_CASE("solve_derivative enforces its search caps") {
  FiniteChangeAction z5 = make_monoidal(cyclic_group(5));
  std::vector<elem> f{0, 1, 4, 4, 1};
  CHECK_THROWS_AS(solve_derivative(f, z5, z5), SearchSpaceTooLarge);
  SolveCaps caps;
  caps.max_cells = 25;
  caps.max_cod_changes = 5;
  CHECK_NOTHROW(solve_derivative(f, z5, z5, caps));
}

TEST_CASE("composition implements the chain rule") {
  DifferentialMap sq = cyclic_map(5, {0, 1, 4, 4, 1});
  DifferentialMap dbl = cyclic_map(5, {0, 2, 4, 1, 3});
  DifferentialMap both = compose(dbl, sq);

  for (elem a = 0; a < 5; ++a) {
    CHECK(both.f[a] == dbl.f[sq.f[a]]);
    for (elem d = 0; d < 5; ++d)
      CHECK(both.deriv(a, d) == dbl.deriv(sq.f[a], sq.deriv(a, d)));
  }
  CHECK(check_derivative_condition(both).passed);
  CHECK(check_regularity(both).passed);
}

TEST_CASE("pairing followed by projections recovers the components") {
  DifferentialMap f1 = cyclic_map(4, {0, 1, 2, 3});
  DifferentialMap f2 = cyclic_map(4, {1, 2, 3, 0});
  DifferentialMap pair = pairing(f1, f2);
  CHECK(check_derivative_condition(pair).passed);
  CHECK(check_regularity(pair).passed);

  DifferentialMap p0 = projection(f1.cod, f2.cod, 0);
  DifferentialMap p1 = projection(f1.cod, f2.cod, 1);
  CHECK(check_derivative_condition(p0).passed);
  CHECK(check_regularity(p1).passed);
  CHECK(compose(p0, pair).same_tables(f1));
  CHECK(compose(p1, pair).same_tables(f2));
}

TEST_CASE("copairing restricted along an injection recovers the components") {
  DifferentialMap f1 = cyclic_map(3, {1, 2, 0});
  DifferentialMap f2 = cyclic_map(3, {0, 0, 0});
  DifferentialMap cp = copairing(f1, f2);
  CHECK(check_derivative_condition(cp).passed);
  CHECK(check_regularity(cp).passed);

  DifferentialMap i0 = injection(f1.dom, f2.dom, 0);
  DifferentialMap i1 = injection(f1.dom, f2.dom, 1);
  CHECK(check_derivative_condition(i0).passed);
  CHECK(check_regularity(i0).passed);
  CHECK(compose(cp, i0).same_tables(f1));
  CHECK(compose(cp, i1).same_tables(f2));
}

TEST_CASE("a joint change splits into sequential one-sided moves") {
  // u(x, y) = x + y over Z3 x Z3 with its translation derivative.
  FiniteChangeAction z3 = make_monoidal(cyclic_group(3));
  FiniteChangeAction dom = product_action(z3, z3);
  DifferentialMap u{dom, z3, {}, {}};
  u.f.resize(9);
  u.df.resize(81);
  for (elem x = 0; x < 3; ++x)
    for (elem y = 0; y < 3; ++y) {
      u.f[flatten2(x, y, 3)] = elem((x + y) % 3);
      for (elem dx = 0; dx < 3; ++dx)
        for (elem dy = 0; dy < 3; ++dy)
          u.df[flatten2(elem(flatten2(x, y, 3)), elem(flatten2(dx, dy, 3)), 9)] =
              elem((dx + dy) % 3);
    }
  CHECK(check_derivative_condition(u).passed);
  CHECK(check_regularity(u).passed);
  CHECK(partial_derivative_check(u, z3, z3).passed);
}

TEST_CASE("an additive derivative need not be stable") {
  // Identity on the or action with df(0, d) = d and df(1, d) = 0: a genuine
  // regular derivative, additive in the change, but sensitive to the base.
  FiniteChangeAction ora = make_monoidal(or_monoid());
  DifferentialMap m{ora, ora, {0, 1}, {0, 1, 0, 0}};
  CHECK(check_derivative_condition(m).passed);
  CHECK(check_regularity(m).passed);
  CHECK(check_additive_in_change(m).passed);

  CheckReport stable = check_stability(m);
  REQUIRE(!stable.passed);
  REQUIRE(stable.witness);
  CHECK(*stable.witness == std::vector<elem>{0, 1, 1});
}

TEST_CASE("stability implies additivity for every regular or-action derivative") {
  // The implication is about differential maps, i.e. regular derivatives: a
  // non-regular table like df(a, 0) = 1 under a constant f is stable without
  // being additive, so regularity is filtered first.
  FiniteChangeAction ora = make_monoidal(or_monoid());
  int stable_count = 0;
  for (elem f0 = 0; f0 < 2; ++f0)
    for (elem f1 = 0; f1 < 2; ++f1) {
      std::vector<elem> f{f0, f1};
      for (elem mask = 0; mask < 16; ++mask) {
        std::vector<elem> df{elem(mask & 1), elem(mask >> 1 & 1), elem(mask >> 2 & 1),
                             elem(mask >> 3 & 1)};
        DifferentialMap m{ora, ora, f, df};
        if (!check_derivative_condition(m).passed) continue;
        if (!check_regularity(m).passed) continue;
        if (check_stability(m).passed) {
          ++stable_count;
          CHECK(check_additive_in_change(m).passed);
        }
      }
    }
  CHECK(stable_count > 0);
}

TEST_CASE("stability of two-argument maps singles out the ignored side") {
  FiniteChangeAction z3 = make_monoidal(cyclic_group(3));
  std::vector<elem> snd(9), sum(9);
  for (elem x = 0; x < 3; ++x)
    for (elem y = 0; y < 3; ++y) {
      snd[flatten2(x, y, 3)] = y;
      sum[flatten2(x, y, 3)] = elem((x + y) % 3);
    }
  CHECK(check_stable_morphism(snd, z3, 3).passed);
  CHECK(!check_stable_morphism(sum, z3, 3).passed);
}

TEST_CASE("differentiability is exactly monotonicity over reachability") {
  FiniteChangeAction ora = make_monoidal(or_monoid());
  // All four endofunctions of {0,1}: only the decreasing one fails.
  for (elem f0 = 0; f0 < 2; ++f0)
    for (elem f1 = 0; f1 < 2; ++f1) {
      std::vector<elem> f{f0, f1};
      bool monotone = differentiable_by_monotonicity(f, ora, ora).passed;
      bool solvable = !solve_derivative(f, ora, ora).empty();
      CHECK(monotone == solvable);
      CHECK(monotone == !(f0 == 1 && f1 == 0));
    }

  // Into a trivial codomain only constants are differentiable.
  FiniteChangeAction triv = make_trivial(2);
  std::vector<elem> id{0, 1};
  CHECK(!differentiable_by_monotonicity(id, ora, triv).passed);
  CHECK(solve_derivative(id, ora, triv).empty());
  std::vector<elem> cst{1, 1};
  CHECK(differentiable_by_monotonicity(cst, ora, triv).passed);
  CHECK(!solve_derivative(cst, ora, triv).empty());
}

TEST_CASE("incremental folding replays the squaring example") {
  DifferentialMap sq = cyclic_map(5, {0, 1, 4, 4, 1});
  FoldTrace tr = incremental_fold(sq, 1, {1, 2});
  REQUIRE(tr.steps.size() == 2);
  CHECK(tr.steps[0].a == 1);
  CHECK(tr.steps[0].d == 1);
  CHECK(tr.steps[0].y == 1);
  CHECK(tr.steps[0].dy == 3);
  CHECK(tr.steps[1].a == 2);
  CHECK(tr.steps[1].d == 2);
  CHECK(tr.steps[1].y == 4);
  CHECK(tr.steps[1].dy == 2);
  CHECK(tr.final_a == 4);
  CHECK(tr.final_y == 1);
  CHECK(tr.matches_recompute);

  FoldTrace empty = incremental_fold(sq, 3, {});
  CHECK(empty.steps.empty());
  CHECK(empty.final_a == 3);
  CHECK(empty.final_y == 4);
  CHECK(empty.matches_recompute);
}

TEST_CASE("incremental folding matches recomputation for every Z4 map and short sequence") {
  FiniteChangeAction z4 = make_monoidal(cyclic_group(4));
  std::vector<elem> f(4);
  for (elem code = 0; code < 256; ++code) {
    for (elem x = 0; x < 4; ++x) f[x] = (code >> (2 * x)) & 3;
    DifferentialMap m = cyclic_map(4, f);
    for (elem start = 0; start < 4; ++start)
      for (elem len = 0; len <= 3; ++len) {
        std::vector<elem> seq(len);
        std::size_t count = 1;
        for (elem i = 0; i < len; ++i) count *= 4;
        for (std::size_t pick = 0; pick < count; ++pick) {
          std::size_t p = pick;
          for (elem i = 0; i < len; ++i) {
            seq[i] = elem(p % 4);
            p /= 4;
          }
          FoldTrace tr = incremental_fold(m, start, seq);
          REQUIRE(tr.matches_recompute);
        }
      }
  }
}

TEST_CASE("shape validation rejects mismatched tables") {
  FiniteChangeAction z3 = make_monoidal(cyclic_group(3));
  DifferentialMap short_f{z3, z3, {0, 1}, std::vector<elem>(9, 0)};
  CHECK_THROWS_AS(require_shapes(short_f), ShapeMismatch);

  DifferentialMap bad_df{z3, z3, {0, 1, 2}, std::vector<elem>(6, 0)};
  CHECK_THROWS_AS(require_shapes(bad_df), ShapeMismatch);

  DifferentialMap range{z3, z3, {0, 1, 3}, std::vector<elem>(9, 0)};
  CHECK_THROWS_AS(require_shapes(range), ShapeMismatch);

  DifferentialMap ok{z3, z3, {0, 1, 2}, std::vector<elem>(9, 0)};
  CHECK_NOTHROW(require_shapes(ok));
}

TEST_CASE("checks on an empty domain pass vacuously") {
  FiniteChangeAction empty = make_trivial(0);
  DifferentialMap m{empty, make_monoidal(cyclic_group(2)), {}, {}};
  CHECK(check_derivative_condition(m).passed);
  CHECK(check_regularity(m).passed);
  CHECK(check_stability(m).passed);
}
