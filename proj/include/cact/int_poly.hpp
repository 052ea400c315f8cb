#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cact/finite.hpp"

namespace cact {

using bigint = boost::multiprecision::cpp_int;

// Dense univariate integer polynomial, coeffs[k] the coefficient of x^k.
// Exact arithmetic throughout; differences are computed by evaluation, never
// by rounding.
struct IntPoly {
  std::vector<bigint> coeffs;

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  int degree() const { return int(coeffs.size()) - 1; }
};

inline bigint eval(const IntPoly& p, const bigint& x) {
  bigint acc = 0;
  for (std::size_t k = p.coeffs.size(); k-- > 0;) acc = acc * x + p.coeffs[k];
  return acc;
}

inline IntPoly poly_const(bigint c) {
  IntPoly p{{std::move(c)}};
  p.trim();
  return p;
}

inline IntPoly poly_x() { return IntPoly{{0, 1}}; }

inline IntPoly add(const IntPoly& a, const IntPoly& b) {
  IntPoly out;
  out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) out.coeffs[k] += a.coeffs[k];
  for (std::size_t k = 0; k < b.coeffs.size(); ++k) out.coeffs[k] += b.coeffs[k];
  out.trim();
  return out;
}

inline IntPoly negate(IntPoly a) {
  for (auto& c : a.coeffs) c = -c;
  return a;
}

inline IntPoly sub(const IntPoly& a, const IntPoly& b) { return add(a, negate(b)); }

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  IntPoly out;
  out.coeffs.resize(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  out.trim();
  return out;
}

inline IntPoly pow(const IntPoly& a, unsigned e) {
  IntPoly out = poly_const(1);
  for (unsigned k = 0; k < e; ++k) out = mul(out, a);
  return out;
}

// expr   := term (('+' | '-') term)*
// term   := factor ('*' factor)*
// factor := ['-'] atom ['^' uint]
// atom   := uint | 'x' | '(' expr ')'
inline IntPoly parse_int_poly(const std::string& src) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  };
  auto peek = [&]() -> int {
    skip();
    return pos < src.size() ? static_cast<unsigned char>(src[pos]) : -1;
  };

  std::function<IntPoly()> expr;
  auto atom = [&]() -> IntPoly {
    int c = peek();
    if (c == '(') {
      ++pos;
      IntPoly p = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos);
      ++pos;
      return p;
    }
    if (c == 'x') {
      ++pos;
      return poly_x();
    }
    if (std::isdigit(c)) {
      bigint v = 0;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        v = v * 10 + (src[pos] - '0');
        ++pos;
      }
      return poly_const(v);
    }
    throw ParseError("expected a number, x or '('", pos);
  };
  auto factor = [&]() -> IntPoly {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos;
    }
    IntPoly p = atom();
    if (peek() == '^') {
      ++pos;
      if (!std::isdigit(peek())) throw ParseError("expected an exponent", pos);
      unsigned e = 0;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        e = e * 10 + unsigned(src[pos] - '0');
        if (e > 64) throw ParseError("exponent too large", pos);
        ++pos;
      }
      p = pow(p, e);
    }
    return neg ? negate(std::move(p)) : p;
  };
  auto term = [&]() -> IntPoly {
    IntPoly p = factor();
    while (peek() == '*') {
      ++pos;
      p = mul(p, factor());
    }
    return p;
  };
  expr = [&]() -> IntPoly {
    IntPoly p = term();
    for (;;) {
      int c = peek();
      if (c == '+') {
        ++pos;
        p = add(p, term());
      } else if (c == '-') {
        ++pos;
        p = sub(p, term());
      } else {
        return p;
      }
    }
  };

  IntPoly p = expr();
  if (peek() != -1) throw ParseError("unexpected trailing input", pos);
  return p;
}

// f(x + delta) - f(x); delta = 1 is the classical forward difference.
inline bigint finite_difference(const IntPoly& f, const bigint& x, const bigint& delta) {
  return eval(f, x + delta) - eval(f, x);
}

// Reduction of f into Z_n for the translation-derivative tie-in.
inline std::vector<elem> table_mod(const IntPoly& f, elem n) {
  std::vector<elem> out(n);
  for (elem x = 0; x < n; ++x) {
    bigint v = eval(f, x) % n;
    if (v < 0) v += n;
    out[x] = elem(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace cact
