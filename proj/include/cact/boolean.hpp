#pragma once

#include <string>
#include <vector>

#include "cact/finite.hpp"
#include "cact/model.hpp"
#include "cact/monoid.hpp"

namespace cact {

// Powerset algebra on a set of atoms, elements as bitmasks; one atom gives
// the two-element algebra {bot, top}. Symmetric difference makes the vectors
// over it a group in which every element is its own inverse.
struct BoolAlgebra {
  elem atoms;
  elem n;
  elem bot;
  elem top;

  explicit BoolAlgebra(elem atom_count = 1)
      : atoms(atom_count), n(elem(1) << atom_count), bot(0), top(n - 1) {
    if (atom_count < 1 || atom_count > 3) throw Error("atom count must be between 1 and 3");
  }

  elem meet(elem a, elem b) const { return a & b; }
  elem join(elem a, elem b) const { return a | b; }
  elem comp(elem a) const { return ~a & top; }
  elem sym_diff(elem a, elem b) const { return a ^ b; }

  CheckReport check_lattice_laws(const CheckOptions& opt = {}) const {
    CheckReport rep = forall_check(
        {n, n, n},
        [&](std::span<const elem> t) {
          return meet(t[0], join(t[1], t[2])) == join(meet(t[0], t[1]), meet(t[0], t[2])) &&
                 join(t[0], meet(t[1], t[2])) == meet(join(t[0], t[1]), join(t[0], t[2])) &&
                 meet(meet(t[0], t[1]), t[2]) == meet(t[0], meet(t[1], t[2])) &&
                 join(join(t[0], t[1]), t[2]) == join(t[0], join(t[1], t[2]));
        },
        "lattice laws", opt);
    if (!rep.passed) return rep;
    return merge(rep, forall_check(
                          {n, n},
                          [&](std::span<const elem> t) {
                            return meet(t[0], t[1]) == meet(t[1], t[0]) &&
                                   join(t[0], t[1]) == join(t[1], t[0]) &&
                                   meet(t[0], join(t[0], t[1])) == t[0] &&
                                   join(t[0], meet(t[0], t[1])) == t[0] &&
                                   meet(t[0], comp(t[0])) == bot &&
                                   join(t[0], comp(t[0])) == top &&
                                   sym_diff(t[0], t[1]) ==
                                       join(meet(t[0], comp(t[1])), meet(comp(t[0]), t[1]));
                          },
                          "complement laws", opt));
  }
};

inline IndexSpace vector_space(const BoolAlgebra& b, elem width) {
  return IndexSpace(std::vector<elem>(width, b.n));
}

// Vector with top in (1-based) position i and bot elsewhere.
inline elem top_i(const BoolAlgebra& b, elem width, elem i) {
  if (i < 1 || i > width) throw Error("variable index out of range");
  std::vector<elem> v(width, b.bot);
  v[i - 1] = b.top;
  return elem(vector_space(b, width).flatten(v));
}

// Vectors over the algebra under componentwise symmetric difference.
inline FiniteGroup xor_group(const BoolAlgebra& b, elem width) {
  IndexSpace space = vector_space(b, width);
  FiniteGroup g;
  g.n = elem(space.size());
  g.zero = 0;
  if (std::uint64_t(g.n) * g.n > 100 * default_max_space)
    throw SpaceTooLarge(std::uint64_t(g.n) * g.n, 100 * default_max_space);
  g.plus.resize(std::size_t(g.n) * g.n);
  std::vector<elem> u(width), v(width), w(width);
  for (elem x = 0; x < g.n; ++x)
    for (elem y = 0; y < g.n; ++y) {
      space.unflatten(x, u);
      space.unflatten(y, v);
      for (elem j = 0; j < width; ++j) w[j] = b.sym_diff(u[j], v[j]);
      g.plus[flatten2(x, y, g.n)] = elem(space.flatten(w));
    }
  g.inv.resize(g.n);
  std::iota(g.inv.begin(), g.inv.end(), elem(0));
  return g;
}

// Table of df/dx_i for f : B^nvars -> B^m, where df/dx_i(u) is
// f(u) xor f(u with component i complemented). Variables are numbered from 1.
inline std::vector<elem> boolean_derivative(const BoolAlgebra& b, elem nvars, elem m,
                                            const std::vector<elem>& f, elem i) {
  if (i < 1 || i > nvars) throw Error("variable index out of range");
  IndexSpace dom = vector_space(b, nvars);
  IndexSpace cod = vector_space(b, m);
  if (f.size() != dom.size()) throw ShapeMismatch("truth table size does not match variable count");
  std::vector<elem> out(dom.size());
  std::vector<elem> u(nvars), fv(m), gv(m);
  for (std::size_t x = 0; x < dom.size(); ++x) {
    dom.unflatten(x, u);
    u[i - 1] = b.comp(u[i - 1]);
    std::size_t flipped = dom.flatten(u);
    cod.unflatten(f[x], fv);
    cod.unflatten(f[flipped], gv);
    for (elem j = 0; j < m; ++j) fv[j] = b.sym_diff(fv[j], gv[j]);
    out[x] = elem(cod.flatten(fv));
  }
  return out;
}

// The derivative above coincides with the translation derivative of f in the
// xor groups evaluated at the change top_i.
inline CheckReport boolean_equivalence_check(const BoolAlgebra& b, elem nvars, elem m,
                                             const std::vector<elem>& f, elem i,
                                             const CheckOptions& opt = {}) {
  std::vector<elem> direct = boolean_derivative(b, nvars, m, f, i);
  GroupModel gm;
  ObjId dom = gm.add_group(xor_group(b, nvars));
  ObjId cod = gm.add_group(xor_group(b, m));
  std::vector<elem> df = gm.differentiate(dom, cod, f);
  elem ti = top_i(b, nvars, i);
  elem dn = gm.group(dom).n;
  return forall_check(
      {elem(direct.size())},
      [&](std::span<const elem> t) { return direct[t[0]] == df[flatten2(t[0], ti, dn)]; },
      "derivative agrees with translation derivative", opt);
}

// 0/1 strings in row-major order, first variable most significant: the AND
// of two variables is "0001".
inline std::vector<elem> parse_truth_bits(const std::string& bits, elem nvars) {
  std::size_t expect = std::size_t(1) << nvars;
  if (bits.size() != expect)
    throw ParseError("truth table needs " + std::to_string(expect) + " bits", bits.size());
  std::vector<elem> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw ParseError("truth table bits must be 0 or 1", i);
    out[i] = bits[i] - '0';
  }
  return out;
}

inline std::string render_truth_bits(const std::vector<elem>& table) {
  std::string out;
  for (elem v : table) out += v ? '1' : '0';
  return out;
}

}  // namespace cact
