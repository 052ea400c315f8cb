#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cact/change_action.hpp"
#include "cact/differential.hpp"
#include "cact/finite.hpp"
#include "cact/monoid.hpp"

namespace cact {

enum class KaKind { boolean, tropical, sumset };

// Finite commutative Kleene algebra given by tables. Element index 0 is the
// additive zero and index 1 the multiplicative one in every constructor here;
// the formal derivative rules below rely on that convention.
struct KleeneAlgebra {
  KaKind kind = KaKind::boolean;
  elem bound = 0;  // tropical/sumset saturation bound
  elem n = 0;
  std::vector<elem> plus, times;  // n x n
  std::vector<elem> star;         // n
  elem zero = 0, one = 1;
  std::vector<std::string> elem_names;

  elem add(elem a, elem b) const { return plus[flatten2(a, b, n)]; }
  elem mul(elem a, elem b) const { return times[flatten2(a, b, n)]; }
  elem st(elem a) const { return star[a]; }
  bool leq(elem a, elem b) const { return add(a, b) == b; }

  CheckReport check_axioms(const CheckOptions& opt = {}) const {
    auto bin = [&](const char* law, auto pred) {
      return forall_check({n, n, n}, pred, law, opt);
    };
    CheckReport rep = bin("plus associativity", [&](std::span<const elem> t) {
      return add(add(t[0], t[1]), t[2]) == add(t[0], add(t[1], t[2]));
    });
    auto step = [&](CheckReport next) { rep = rep.passed ? std::move(next) : std::move(rep); };
    step(bin("times associativity", [&](std::span<const elem> t) {
      return mul(mul(t[0], t[1]), t[2]) == mul(t[0], mul(t[1], t[2]));
    }));
    step(forall_check({n, n},
                      [&](std::span<const elem> t) { return add(t[0], t[1]) == add(t[1], t[0]); },
                      "plus commutativity", opt));
    step(forall_check({n, n},
                      [&](std::span<const elem> t) { return mul(t[0], t[1]) == mul(t[1], t[0]); },
                      "times commutativity", opt));
    step(forall_check({n}, [&](std::span<const elem> t) { return add(t[0], t[0]) == t[0]; },
                      "plus idempotence", opt));
    step(forall_check({n},
                      [&](std::span<const elem> t) {
                        return add(zero, t[0]) == t[0] && mul(one, t[0]) == t[0] &&
                               mul(zero, t[0]) == zero;
                      },
                      "units and absorption", opt));
    step(bin("distributivity", [&](std::span<const elem> t) {
      return mul(t[0], add(t[1], t[2])) == add(mul(t[0], t[1]), mul(t[0], t[2]));
    }));
    step(forall_check({n},
                      [&](std::span<const elem> t) {
                        return add(one, mul(t[0], st(t[0]))) == st(t[0]) &&
                               add(one, mul(st(t[0]), t[0])) == st(t[0]);
                      },
                      "star unfolding", opt));
    step(bin("star induction left", [&](std::span<const elem> t) {
      return !leq(add(t[1], mul(t[0], t[2])), t[2]) || leq(mul(st(t[0]), t[1]), t[2]);
    }));
    step(bin("star induction right", [&](std::span<const elem> t) {
      return !leq(add(t[1], mul(t[2], t[0])), t[2]) || leq(mul(t[1], st(t[0])), t[2]);
    }));
    return rep;
  }

  // The change monoid (K, +, 0); every object of the polynomial category is a
  // finite power of it.
  FiniteMonoid additive_monoid() const { return FiniteMonoid{n, plus, zero}; }
};

inline void validate_kleene(const KleeneAlgebra& k) {
  CheckReport rep = k.check_axioms();
  if (!rep.passed) throw Error("Kleene algebra axiom fails: " + rep.law);
}

inline KleeneAlgebra make_boolean_ka() {
  KleeneAlgebra k;
  k.kind = KaKind::boolean;
  k.n = 2;
  k.plus = {0, 1, 1, 1};
  k.times = {0, 0, 0, 1};
  k.star = {1, 1};
  k.elem_names = {"0", "1"};
  validate_kleene(k);
  return k;
}

// min-plus over {inf, 0, .., B}: sum is min, product is addition saturating
// at B, 1 is the number 0, and a* = 0 for every a. Index 0 encodes inf and
// index i+1 the number i.
inline KleeneAlgebra make_tropical_ka(elem bound) {
  if (bound < 1) throw Error("tropical bound must be at least 1");
  KleeneAlgebra k;
  k.kind = KaKind::tropical;
  k.bound = bound;
  k.n = bound + 2;
  k.plus.resize(std::size_t(k.n) * k.n);
  k.times.resize(std::size_t(k.n) * k.n);
  for (elem a = 0; a < k.n; ++a)
    for (elem b = 0; b < k.n; ++b) {
      elem& sum = k.plus[flatten2(a, b, k.n)];
      elem& prod = k.times[flatten2(a, b, k.n)];
      if (a == 0 || b == 0) {
        sum = a == 0 ? b : a;
        prod = 0;
      } else {
        sum = std::min(a, b);
        prod = std::min<elem>(a - 1 + (b - 1), bound) + 1;
      }
    }
  k.star.assign(k.n, 1);
  k.elem_names.resize(k.n);
  k.elem_names[0] = "inf";
  for (elem a = 1; a < k.n; ++a) k.elem_names[a] = std::to_string(a - 1);
  validate_kleene(k);
  return k;
}

// Subsets of {0..B} with union as sum and the saturating sumset as product;
// elements are bitmasks. Star is the join of all powers. Unlike linearly
// ordered algebras this one has incomparable elements, which is what makes
// non-additive derivatives visible.
inline KleeneAlgebra make_sumset_ka(elem bound) {
  if (bound < 1 || bound > 10) throw Error("subset-sum bound must be between 1 and 10");
  KleeneAlgebra k;
  k.kind = KaKind::sumset;
  k.bound = bound;
  k.n = elem(1) << (bound + 1);
  k.plus.resize(std::size_t(k.n) * k.n);
  k.times.resize(std::size_t(k.n) * k.n);
  elem full = k.n - 1;
  for (elem a = 0; a < k.n; ++a)
    for (elem b = 0; b < k.n; ++b) {
      k.plus[flatten2(a, b, k.n)] = a | b;
      elem prod = 0;
      for (elem s = 0; s <= bound; ++s) {
        if (!(a >> s & 1)) continue;
        std::uint64_t shifted = std::uint64_t(b) << s;
        prod |= elem(shifted) & full;
        if (shifted > full) prod |= elem(1) << bound;
      }
      k.times[flatten2(a, b, k.n)] = prod;
    }
  k.star.resize(k.n);
  for (elem a = 0; a < k.n; ++a) {
    elem acc = 1;  // {0}
    for (;;) {
      elem next = acc | k.times[flatten2(acc, a, k.n)];
      if (next == acc) break;
      acc = next;
    }
    k.star[a] = acc;
  }
  k.elem_names.resize(k.n);
  for (elem a = 0; a < k.n; ++a) {
    std::string s = "{";
    for (elem v = 0; v <= bound; ++v)
      if (a >> v & 1) {
        if (s.size() > 1) s += ",";
        s += std::to_string(v);
      }
    k.elem_names[a] = s + "}";
  }
  validate_kleene(k);
  return k;
}

inline KleeneAlgebra make_named_kleene(const std::string& name) {
  if (name == "boolean") return make_boolean_ka();
  auto parse_bound = [&](std::size_t prefix) {
    elem b = 0;
    for (std::size_t i = prefix; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        throw Error("bad algebra bound in '" + name + "'");
      b = b * 10 + (name[i] - '0');
      if (b > 1000) throw Error("bad algebra bound in '" + name + "'");
    }
    return b;
  };
  if (name.rfind("tropical:", 0) == 0) return make_tropical_ka(parse_bound(9));
  if (name.rfind("sumset:", 0) == 0) return make_sumset_ka(parse_bound(7));
  throw Error("unknown algebra '" + name + "' (expected boolean, tropical:B or sumset:B)");
}

// Polynomial expression tree. Constants are algebra element indices, with 0
// and 1 meaning the algebra's zero and one.
struct KleenePoly {
  enum class Kind { constant, variable, plus, times, star };
  Kind kind = Kind::constant;
  elem value = 0;
  std::shared_ptr<const KleenePoly> left, right;
};

inline KleenePoly kconst(elem v) { return {KleenePoly::Kind::constant, v, nullptr, nullptr}; }
inline KleenePoly kvar(elem i) { return {KleenePoly::Kind::variable, i, nullptr, nullptr}; }
inline KleenePoly kplus(KleenePoly l, KleenePoly r) {
  return {KleenePoly::Kind::plus, 0, std::make_shared<const KleenePoly>(std::move(l)),
          std::make_shared<const KleenePoly>(std::move(r))};
}
inline KleenePoly ktimes(KleenePoly l, KleenePoly r) {
  return {KleenePoly::Kind::times, 0, std::make_shared<const KleenePoly>(std::move(l)),
          std::make_shared<const KleenePoly>(std::move(r))};
}
inline KleenePoly kstar(KleenePoly c) {
  return {KleenePoly::Kind::star, 0, std::make_shared<const KleenePoly>(std::move(c)), nullptr};
}

inline elem eval_poly(const KleenePoly& p, std::span<const elem> env, const KleeneAlgebra& k) {
  switch (p.kind) {
    case KleenePoly::Kind::constant:
      if (p.value >= k.n) throw Error("constant outside the algebra carrier");
      return p.value;
    case KleenePoly::Kind::variable:
      if (p.value >= env.size()) throw Error("unbound variable x" + std::to_string(p.value + 1));
      return env[p.value];
    case KleenePoly::Kind::plus:
      return k.add(eval_poly(*p.left, env, k), eval_poly(*p.right, env, k));
    case KleenePoly::Kind::times:
      return k.mul(eval_poly(*p.left, env, k), eval_poly(*p.right, env, k));
    case KleenePoly::Kind::star:
      return k.st(eval_poly(*p.left, env, k));
  }
  throw Error("malformed polynomial node");
}

inline elem max_variable_plus_one(const KleenePoly& p) {
  switch (p.kind) {
    case KleenePoly::Kind::constant: return 0;
    case KleenePoly::Kind::variable: return p.value + 1;
    case KleenePoly::Kind::star: return max_variable_plus_one(*p.left);
    default:
      return std::max(max_variable_plus_one(*p.left), max_variable_plus_one(*p.right));
  }
}

// d(c)/dxi = 0, d(xj)/dxi = [i = j], sums componentwise, d(p.q) = p.dq + q.dp,
// d(p*) = p*.dp. No simplification is performed.
inline KleenePoly formal_derivative(const KleenePoly& p, elem i) {
  switch (p.kind) {
    case KleenePoly::Kind::constant: return kconst(0);
    case KleenePoly::Kind::variable: return kconst(p.value == i ? 1 : 0);
    case KleenePoly::Kind::plus:
      return kplus(formal_derivative(*p.left, i), formal_derivative(*p.right, i));
    case KleenePoly::Kind::times:
      return kplus(ktimes(*p.left, formal_derivative(*p.right, i)),
                   ktimes(*p.right, formal_derivative(*p.left, i)));
    case KleenePoly::Kind::star:
      return ktimes(kstar(*p.left), formal_derivative(*p.left, i));
  }
  throw Error("malformed polynomial node");
}

inline KleenePoly substitute(const KleenePoly& p, const std::vector<KleenePoly>& by) {
  switch (p.kind) {
    case KleenePoly::Kind::constant: return p;
    case KleenePoly::Kind::variable:
      if (p.value >= by.size()) throw Error("unbound variable x" + std::to_string(p.value + 1));
      return by[p.value];
    case KleenePoly::Kind::plus: return kplus(substitute(*p.left, by), substitute(*p.right, by));
    case KleenePoly::Kind::times: return ktimes(substitute(*p.left, by), substitute(*p.right, by));
    case KleenePoly::Kind::star: return kstar(substitute(*p.left, by));
  }
  throw Error("malformed polynomial node");
}

inline std::string variable_name(elem j, elem arity) {
  if (arity == 1) return "x";
  if (arity == 2) return j == 0 ? "x" : "y";
  return "x" + std::to_string(j + 1);
}

namespace detail {
inline void print_poly(const KleenePoly& p, elem arity, const std::vector<std::string>& names,
                       int need, std::string& out) {
  int prec = 3;
  if (p.kind == KleenePoly::Kind::plus) prec = 0;
  if (p.kind == KleenePoly::Kind::times) prec = 1;
  if (p.kind == KleenePoly::Kind::star) prec = 2;
  bool wrap = prec < need;
  if (wrap) out += "(";
  switch (p.kind) {
    case KleenePoly::Kind::constant:
      out += p.value < names.size() ? names[p.value] : "#" + std::to_string(p.value);
      break;
    case KleenePoly::Kind::variable: out += variable_name(p.value, arity); break;
    case KleenePoly::Kind::plus:
      print_poly(*p.left, arity, names, 0, out);
      out += " + ";
      print_poly(*p.right, arity, names, 0, out);
      break;
    case KleenePoly::Kind::times:
      print_poly(*p.left, arity, names, 1, out);
      out += ".";
      print_poly(*p.right, arity, names, 1, out);
      break;
    case KleenePoly::Kind::star:
      print_poly(*p.left, arity, names, 2, out);
      out += "*";
      break;
  }
  if (wrap) out += ")";
}
}  // namespace detail

inline std::string poly_to_string(const KleenePoly& p, elem arity,
                                  const std::vector<std::string>& names) {
  std::string out;
  detail::print_poly(p, arity, names, 0, out);
  return out;
}

// Concrete syntax: variables x1..xN (x and y alias the first two), constants
// as element literals, + for sum, . or juxtaposition for product, postfix *
// for star, parentheses. Example: (x.y + 1)*
inline KleenePoly parse_kleene_poly(const std::string& src, const KleeneAlgebra& k) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  };
  auto peek = [&]() -> int {
    skip();
    return pos < src.size() ? static_cast<unsigned char>(src[pos]) : -1;
  };
  auto literal = [&](std::uint64_t v, std::size_t at) -> KleenePoly {
    switch (k.kind) {
      case KaKind::boolean:
        if (v > 1) throw ParseError("constant must be 0 or 1", at);
        return kconst(elem(v));
      case KaKind::tropical:
        if (v > k.bound) throw ParseError("constant exceeds the algebra bound", at);
        return kconst(elem(v) + 1);
      case KaKind::sumset:
        if (v > k.bound) throw ParseError("constant exceeds the algebra bound", at);
        return kconst(elem(1) << v);
    }
    throw ParseError("bad constant", at);
  };

  std::function<KleenePoly()> expr;
  auto atom = [&]() -> KleenePoly {
    int c = peek();
    std::size_t at = pos;
    if (c == '(') {
      ++pos;
      KleenePoly p = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos);
      ++pos;
      return p;
    }
    if (std::isdigit(c)) {
      std::uint64_t v = 0;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        v = v * 10 + (src[pos] - '0');
        if (v > 1'000'000) throw ParseError("constant too large", at);
        ++pos;
      }
      return literal(v, at);
    }
    if (std::isalpha(c)) {
      std::string word;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])))) {
        word += src[pos];
        ++pos;
      }
      if (word == "x") return kvar(0);
      if (word == "y") return kvar(1);
      if (word.size() > 1 && word[0] == 'x') {
        std::uint64_t idx = 0;
        for (std::size_t i = 1; i < word.size(); ++i) {
          if (!std::isdigit(static_cast<unsigned char>(word[i])))
            throw ParseError("bad variable '" + word + "'", at);
          idx = idx * 10 + (word[i] - '0');
          if (idx > 1000) throw ParseError("bad variable '" + word + "'", at);
        }
        if (idx == 0) throw ParseError("variables are numbered from x1", at);
        return kvar(elem(idx - 1));
      }
      if (word == "inf" && k.kind == KaKind::tropical) return kconst(0);
      throw ParseError("unknown name '" + word + "'", at);
    }
    throw ParseError("expected a constant, variable or '('", pos);
  };
  auto factor = [&]() -> KleenePoly {
    KleenePoly p = atom();
    while (peek() == '*') {
      ++pos;
      p = kstar(std::move(p));
    }
    return p;
  };
  auto term = [&]() -> KleenePoly {
    KleenePoly p = factor();
    for (;;) {
      int c = peek();
      if (c == '.') {
        ++pos;
        p = ktimes(std::move(p), factor());
      } else if (c == '(' || std::isalnum(c)) {
        p = ktimes(std::move(p), factor());
      } else {
        return p;
      }
    }
  };
  expr = [&]() -> KleenePoly {
    KleenePoly p = term();
    while (peek() == '+') {
      ++pos;
      p = kplus(std::move(p), term());
    }
    return p;
  };

  KleenePoly p = expr();
  if (peek() != -1) throw ParseError("unexpected trailing input", pos);
  return p;
}

// n-tuple of polynomials over m variables: a map K^m -> K^n.
struct PolyMorphism {
  elem arity = 0;
  std::vector<KleenePoly> comps;

  elem out_arity() const { return elem(comps.size()); }
};

inline PolyMorphism identity_poly(elem m) {
  PolyMorphism pm{m, {}};
  for (elem j = 0; j < m; ++j) pm.comps.push_back(kvar(j));
  return pm;
}

inline PolyMorphism compose_poly(const PolyMorphism& g, const PolyMorphism& f) {
  if (g.arity != f.out_arity()) throw ShapeMismatch("polynomial composition arity mismatch");
  PolyMorphism pm{f.arity, {}};
  for (const auto& c : g.comps) pm.comps.push_back(substitute(c, f.comps));
  return pm;
}

// The derivative of p at base x-bar under change y-bar:
//   p_i'(x, y) = sum_j y_j . dp_i/dx_j (x + y)
// with variables 0..m-1 the base point and m..2m-1 the change.
inline PolyMorphism differentiate_poly(const PolyMorphism& pm) {
  elem m = pm.arity;
  std::vector<KleenePoly> shift;
  for (elem j = 0; j < m; ++j) shift.push_back(kplus(kvar(j), kvar(m + j)));
  PolyMorphism out{elem(2 * m), {}};
  for (const auto& p : pm.comps) {
    std::optional<KleenePoly> acc;
    for (elem j = 0; j < m; ++j) {
      KleenePoly term = ktimes(kvar(m + j), substitute(formal_derivative(p, j), shift));
      acc = acc ? kplus(std::move(*acc), std::move(term)) : std::move(term);
    }
    out.comps.push_back(acc ? std::move(*acc) : kconst(0));
  }
  return out;
}

// Objects K^m as monoidal change actions, polynomial morphisms between them,
// and tabulation into DifferentialMap for the table-level checks. Domains are
// flattened row-major, one base-|K| digit per variable.
class KleeneModel {
 public:
  explicit KleeneModel(KleeneAlgebra k) : k_(std::move(k)) {}

  const KleeneAlgebra& algebra() const { return k_; }

  FiniteMonoid power_monoid(elem m) const {
    FiniteMonoid mon = trivial_monoid();
    for (elem j = 0; j < m; ++j) mon = product_monoid(mon, k_.additive_monoid());
    return mon;
  }

  FiniteChangeAction object(elem m) const { return make_monoidal(power_monoid(m)); }

  std::vector<elem> tabulate(const PolyMorphism& pm) const {
    IndexSpace dom(std::vector<elem>(pm.arity, k_.n));
    std::vector<elem> env(pm.arity);
    std::vector<elem> table(dom.size());
    elem cod_n = k_.n;
    for (std::size_t i = 0; i < dom.size(); ++i) {
      dom.unflatten(i, env);
      std::size_t flat = 0;
      for (const auto& c : pm.comps) flat = flat * cod_n + eval_poly(c, env, k_);
      table[i] = elem(flat);
    }
    return table;
  }

  DifferentialMap lift(const PolyMorphism& pm) const {
    PolyMorphism dpm = differentiate_poly(pm);
    std::vector<elem> base = tabulate(pm);
    std::vector<elem> deriv = tabulate(dpm);
    DifferentialMap m{object(pm.arity), object(pm.out_arity()), std::move(base),
                      std::move(deriv)};
    require_shapes(m);
    return m;
  }

 private:
  KleeneAlgebra k_;
};

// p(a + b) = p(a) + b . dp/dx(a + b), checked for every variable of p with
// the other variables ranging over the whole carrier.
inline CheckReport taylor_check(const KleenePoly& p, elem arity, const KleeneAlgebra& k,
                                const CheckOptions& opt = {}) {
  if (arity == 0) arity = std::max<elem>(max_variable_plus_one(p), 1);
  CheckReport rep{true, std::nullopt, 0, CheckMode::exhaustive, opt.seed, "Taylor expansion"};
  for (elem i = 0; i < arity && rep.passed; ++i) {
    KleenePoly dp = formal_derivative(p, i);
    std::vector<elem> sizes(arity + 1, k.n);
    CheckReport part = forall_check(
        sizes,
        [&](std::span<const elem> t) {
          std::vector<elem> env(t.begin(), t.begin() + arity);
          elem a = env[i], b = t[arity];
          env[i] = k.add(a, b);
          elem lhs = eval_poly(p, env, k);
          elem rhs_tail = k.mul(b, eval_poly(dp, env, k));
          env[i] = a;
          elem rhs = k.add(eval_poly(p, env, k), rhs_tail);
          return lhs == rhs;
        },
        "Taylor expansion", opt);
    rep = merge(rep, part);
  }
  return rep;
}

// dp/dx(u + a + b) . (a + b) = dp/dx(u + a) . a + dp/dx(u + a + b) . b
inline CheckReport kleene_regularity_check(const KleenePoly& p, const KleeneAlgebra& k,
                                           const CheckOptions& opt = {}) {
  KleenePoly dp = formal_derivative(p, 0);
  auto dp_at = [&](elem x) {
    std::vector<elem> env{x};
    return eval_poly(dp, env, k);
  };
  return forall_check(
      {k.n, k.n, k.n},
      [&](std::span<const elem> t) {
        elem u = t[0], a = t[1], b = t[2];
        elem ua = k.add(u, a), uab = k.add(ua, b);
        elem lhs = k.mul(dp_at(uab), k.add(a, b));
        elem rhs = k.add(k.mul(dp_at(ua), a), k.mul(dp_at(uab), b));
        return lhs == rhs;
      },
      "derivative regularity equation", opt);
}

struct NonAdditivityWitness {
  KleenePoly p;
  std::string p_text;
  elem a = 0, b = 0, c = 0;
  elem joint = 0;     // dp(a, b + c)
  elem separate = 0;  // dp(a, b) + dp(a, c)
};

// Searches small unary polynomials for dp(a, b+c) strictly above
// dp(a,b) + dp(a,c) in the algebra order. Polynomials are tried in a fixed
// order and triples lexicographically, so the first witness is deterministic.
inline std::optional<NonAdditivityWitness> nonadditivity_witness(
    const KleeneAlgebra& k, std::uint64_t max_triples = 10'000'000) {
  std::vector<KleenePoly> candidates;
  candidates.push_back(ktimes(kvar(0), kvar(0)));
  candidates.push_back(ktimes(kvar(0), ktimes(kvar(0), kvar(0))));
  candidates.push_back(kstar(kvar(0)));
  candidates.push_back(kplus(ktimes(kvar(0), kvar(0)), kvar(0)));
  candidates.push_back(kstar(ktimes(kvar(0), kvar(0))));
  std::uint64_t scanned = 0;
  for (const auto& p : candidates) {
    PolyMorphism pm{1, {p}};
    PolyMorphism dp = differentiate_poly(pm);
    auto dp_at = [&](elem x, elem y) {
      std::vector<elem> env{x, y};
      return eval_poly(dp.comps[0], env, k);
    };
    for (elem a = 0; a < k.n; ++a)
      for (elem b = 0; b < k.n; ++b)
        for (elem c = 0; c < k.n; ++c) {
          if (++scanned > max_triples)
            throw SearchSpaceTooLarge("non-additivity search space too large");
          elem joint = dp_at(a, k.add(b, c));
          elem separate = k.add(dp_at(a, b), dp_at(a, c));
          if (separate != joint && k.leq(separate, joint))
            return NonAdditivityWitness{p, poly_to_string(p, 1, k.elem_names),
                                        a, b, c, joint, separate};
        }
  }
  return std::nullopt;
}

// All distinct unary polynomial trees with at most max_nodes nodes; leaves
// are 0, 1 and x.
inline std::vector<KleenePoly> enumerate_unary_polys(int max_nodes) {
  std::vector<std::vector<KleenePoly>> by_size(max_nodes + 1);
  if (max_nodes >= 1) by_size[1] = {kconst(0), kconst(1), kvar(0)};
  for (int s = 2; s <= max_nodes; ++s) {
    for (const auto& c : by_size[s - 1]) by_size[s].push_back(kstar(c));
    for (int l = 1; l <= s - 2; ++l)
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[s - 1 - l]) {
          by_size[s].push_back(kplus(a, b));
          by_size[s].push_back(ktimes(a, b));
        }
  }
  std::vector<KleenePoly> out;
  for (auto& bucket : by_size)
    for (auto& p : bucket) out.push_back(std::move(p));
  return out;
}

// Random polynomial tree with at most `budget` nodes.
inline KleenePoly random_poly(SplitMix64& rng, int budget, elem arity, elem carrier_n) {
  if (budget <= 1) {
    if (rng.below(2) == 0) return kvar(elem(rng.below(arity)));
    return kconst(elem(rng.below(carrier_n)));
  }
  switch (rng.below(4)) {
    case 0: return kstar(random_poly(rng, budget - 1, arity, carrier_n));
    case 1: {
      int left = 1 + int(rng.below(std::uint64_t(budget - 2) + 1));
      return kplus(random_poly(rng, left, arity, carrier_n),
                   random_poly(rng, budget - 1 - left, arity, carrier_n));
    }
    case 2: {
      int left = 1 + int(rng.below(std::uint64_t(budget - 2) + 1));
      return ktimes(random_poly(rng, left, arity, carrier_n),
                    random_poly(rng, budget - 1 - left, arity, carrier_n));
    }
    default:
      if (rng.below(2) == 0) return kvar(elem(rng.below(arity)));
      return kconst(elem(rng.below(carrier_n)));
  }
}

}  // namespace cact
