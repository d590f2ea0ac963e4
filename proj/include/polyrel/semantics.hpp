#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "polyrel/diagram.hpp"
#include "polyrel/relation.hpp"
#include "polyrel/vrep.hpp"

namespace polyrel {

namespace detail {

inline void add_equality(PolyRelation& p, const QVector& coeffs, const Rational& constant) {
  QVector neg(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) neg[j] = -coeffs[j];
  p.body.add(coeffs, constant);
  p.body.add(std::move(neg), -constant);
}

inline PolyRelation generator_relation(const Generator& g) {
  auto functional = [](std::size_t n, std::size_t m, auto&& fill) {
    PolyRelation p(n, m);
    fill(p);
    return p;
  };
  switch (g.kind) {
    case GenKind::Copy:
      return functional(1, 2, [](PolyRelation& p) {
        add_equality(p, {Rational(1), Rational(-1), Rational(0)}, Rational(0));
        add_equality(p, {Rational(1), Rational(0), Rational(-1)}, Rational(0));
      });
    case GenKind::Delete: return PolyRelation(1, 0);
    case GenKind::Add:
      return functional(2, 1, [](PolyRelation& p) {
        add_equality(p, {Rational(1), Rational(1), Rational(-1)}, Rational(0));
      });
    case GenKind::Zero:
      return functional(0, 1, [](PolyRelation& p) {
        add_equality(p, {Rational(1)}, Rational(0));
      });
    case GenKind::Scalar:
      return functional(1, 1, [&](PolyRelation& p) {
        add_equality(p, {g.scalar, Rational(-1)}, Rational(0));
      });
    case GenKind::Geq:
      return functional(1, 1, [](PolyRelation& p) {
        p.body.add({Rational(1), Rational(-1)}, Rational(0));
      });
    case GenKind::One:
      return functional(0, 1, [](PolyRelation& p) {
        add_equality(p, {Rational(1)}, Rational(-1));
      });
    case GenKind::CoCopy: return converse_rel(generator_relation({GenKind::Copy, Rational(0)}));
    case GenKind::CoDelete: return converse_rel(generator_relation({GenKind::Delete, Rational(0)}));
    case GenKind::CoAdd: return converse_rel(generator_relation({GenKind::Add, Rational(0)}));
    case GenKind::CoZero: return converse_rel(generator_relation({GenKind::Zero, Rational(0)}));
    case GenKind::CoScalar: return converse_rel(generator_relation({GenKind::Scalar, g.scalar}));
    case GenKind::Register: throw FragmentError("eval: the register is stateful, use st_eval");
  }
  throw Error("generator_relation: unreachable");
}

}  // namespace detail

// The wire routing computed by a generator-free diagram: the input at
// position i exits at position out[i]. Empty when the term contains any
// generator.
inline std::optional<std::vector<std::size_t>> wiring_perm(const Diagram& d) {
  if (d.flags() != 0) return std::nullopt;
  switch (d.tag()) {
    case Diagram::Tag::Id: {
      std::vector<std::size_t> p(d.id_width());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
      return p;
    }
    case Diagram::Tag::Sym: {
      std::size_t n = d.sym_top(), m = d.sym_bottom();
      std::vector<std::size_t> p(n + m);
      for (std::size_t i = 0; i < n; ++i) p[i] = m + i;
      for (std::size_t i = 0; i < m; ++i) p[n + i] = i;
      return p;
    }
    case Diagram::Tag::Seq: {
      auto a = wiring_perm(d.first());
      auto b = wiring_perm(d.second());
      if (!a || !b) return std::nullopt;
      std::vector<std::size_t> p(a->size());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = (*b)[(*a)[i]];
      return p;
    }
    case Diagram::Tag::Tensor: {
      auto a = wiring_perm(d.first());
      auto b = wiring_perm(d.second());
      if (!a || !b) return std::nullopt;
      std::vector<std::size_t> p(a->size() + b->size());
      for (std::size_t i = 0; i < a->size(); ++i) p[i] = (*a)[i];
      for (std::size_t i = 0; i < b->size(); ++i) p[a->size() + i] = a->size() + (*b)[i];
      return p;
    }
    default: return std::nullopt;
  }
}

namespace detail {

// Postcompose with a permutation: right port i moves to position perm[i].
inline PolyRelation permute_right_ports(const PolyRelation& r,
                                        const std::vector<std::size_t>& perm) {
  PolyRelation out(r.left, r.right);
  for (const auto& row : r.body.ineqs) {
    QVector coeffs(row.coeffs.size());
    for (std::size_t j = 0; j < r.left; ++j) coeffs[j] = row.coeffs[j];
    for (std::size_t i = 0; i < r.right; ++i)
      coeffs[r.left + perm[i]] = row.coeffs[r.left + i];
    out.body.add(std::move(coeffs), row.constant);
  }
  return out;
}

// Precompose with a permutation: the new left port i feeds old port perm[i].
inline PolyRelation permute_left_ports(const PolyRelation& r,
                                       const std::vector<std::size_t>& perm) {
  PolyRelation out(r.left, r.right);
  for (const auto& row : r.body.ineqs) {
    QVector coeffs(row.coeffs.size());
    for (std::size_t i = 0; i < r.left; ++i) coeffs[i] = row.coeffs[perm[i]];
    for (std::size_t j = 0; j < r.right; ++j) coeffs[r.left + j] = row.coeffs[r.left + j];
    out.body.add(std::move(coeffs), row.constant);
  }
  return out;
}

}  // namespace detail

// The semantic functor: structural evaluation of a stateless diagram to its
// polyhedral relation. Composition with pure wiring is performed by column
// renaming instead of elimination.
inline PolyRelation eval(const Diagram& d) {
  require_fragment(d, Fragment::ACircGeq, "eval");
  switch (d.tag()) {
    case Diagram::Tag::Gen: return detail::generator_relation(d.gen());
    case Diagram::Tag::Id: return identity_relation(d.id_width());
    case Diagram::Tag::Sym: {
      std::size_t n = d.sym_top(), m = d.sym_bottom();
      return detail::permute_right_ports(identity_relation(n + m), *wiring_perm(d));
    }
    case Diagram::Tag::Seq: {
      if (auto p = wiring_perm(d.second()))
        return detail::permute_right_ports(eval(d.first()), *p);
      if (auto p = wiring_perm(d.first()))
        return detail::permute_left_ports(eval(d.second()), *p);
      return compose_rel(eval(d.first()), eval(d.second()));
    }
    case Diagram::Tag::Tensor: return tensor_rel(eval(d.first()), eval(d.second()));
  }
  throw Error("eval: unreachable");
}

// Decides denotational inclusion of two circuits of equal arity.
inline bool includes(const Diagram& c, const Diagram& d) {
  Validated vc = validate(c), vd = validate(d);
  if (vc.dom != vd.dom || vc.cod != vd.cod) throw ArityError("includes: arity mismatch");
  return includes_rel(eval(c), eval(d));
}

inline bool equiv(const Diagram& c, const Diagram& d) {
  Validated vc = validate(c), vd = validate(d);
  if (vc.dom != vd.dom || vc.cod != vd.cod) throw ArityError("equiv: arity mismatch");
  PolyRelation rc = eval(c), rd = eval(d);
  return includes_rel(rc, rd) && includes_rel(rd, rc);
}

inline bool is_empty(const Diagram& c) { return !is_feasible(eval(c).body); }

enum class NormalFormKind { PolyhedralNF, FinGenNF };

namespace detail {

// Common outer shape of both normal forms: feed the left ports and a copy of
// the right ports through a block n+m -> p, then close each of the p wires.
inline Diagram nf_shell(std::size_t n, std::size_t m, const Diagram& block, const Diagram& tail) {
  return seq(tensor(id(n), cup(m)), tensor(block, id(m)), tensor(tail, id(m)));
}

inline Diagram geq_to_zero() { return seq(gen(GenKind::Geq), gen(GenKind::CoZero)); }

}  // namespace detail

// The polyhedral normal form of the relation {(x, y) | A (x; y) + b >= 0}: a
// matrix block over the joined boundary followed by the ">= 0" closures,
// with b injected through the one-generator. When b = 0 the homogeneous
// (cone) shape without the one-generator is produced.
inline Diagram poly_nf_diagram(std::size_t n, std::size_t m, const QMatrix& a, const QVector& b) {
  if (a.cols != n + m || a.rows != b.size())
    throw DimensionError("poly_nf_diagram: matrix shape mismatch");
  std::size_t p = a.rows;
  Diagram block = diagram_of_matrix(a, MatrixSide::Right);
  bool cone = std::all_of(b.begin(), b.end(), [](const Rational& c) { return c == 0; });
  if (cone) {
    Diagram tail = tensor_power(detail::geq_to_zero(), p);
    return detail::nf_shell(n, m, block, tail);
  }
  QMatrix bmat(p, 1);
  for (std::size_t i = 0; i < p; ++i) bmat.at(i, 0) = b[i];
  Diagram b_block = seq(gen(GenKind::One), diagram_of_matrix(bmat, MatrixSide::Right));
  Diagram tail = seq(tensor(id(p), b_block), add_block(p), tensor_power(detail::geq_to_zero(), p));
  return detail::nf_shell(n, m, block, tail);
}

// The finitely generated normal form of the cone {(x, y) | (x; y) = V v,
// v >= 0}: a mirrored matrix block whose multipliers are closed nonnegative.
inline Diagram fg_nf_diagram(std::size_t n, std::size_t m, const QMatrix& v) {
  if (v.rows != n + m) throw DimensionError("fg_nf_diagram: matrix shape mismatch");
  Diagram block = diagram_of_matrix(v, MatrixSide::Left);
  Diagram tail = tensor_power(detail::geq_to_zero(), v.cols);
  return detail::nf_shell(n, m, block, tail);
}

// Rebuilds a circuit in polyhedral normal form from its semantics; cone
// denoting circuits of the order fragment get the homogeneous shape.
inline Diagram poly_nf(const Diagram& c) {
  Validated v = validate(c);
  if (!fragment_leq(v.frag, Fragment::ACircGeq)) throw FragmentError("poly_nf: needs ACircGeq");
  PolyRelation r = eval(c);
  std::size_t n = r.left, m = r.right;
  const auto& rows = r.body.ineqs;
  std::size_t p = rows.size();
  QMatrix a(p, n + m);
  QVector b(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < n + m; ++j) a.at(i, j) = rows[i].coeffs[j];
    b[i] = rows[i].constant;
  }
  return poly_nf_diagram(n, m, a, b);
}

// Rebuilds a cone-denoting circuit in finitely generated normal form: the
// generators of eval(c) become the columns of the mirrored matrix block
// (lines split into opposite rays).
inline Diagram fg_nf(const Diagram& c) {
  require_fragment(c, Fragment::CircGeq, "fg_nf");
  PolyRelation r = eval(c);
  std::size_t n = r.left, m = r.right;
  VRep gens = h_to_v(r.body);
  std::vector<QVector> cols = gens.rays;
  for (const auto& l : gens.lines) {
    cols.push_back(l);
    QVector neg(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) neg[j] = -l[j];
    cols.push_back(std::move(neg));
  }
  std::size_t p = cols.size();
  QMatrix vmat(n + m, p);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < n + m; ++i) vmat.at(i, j) = cols[j][i];
  return fg_nf_diagram(n, m, vmat);
}

inline Diagram normal_form(const Diagram& c, NormalFormKind kind) {
  return kind == NormalFormKind::PolyhedralNF ? poly_nf(c) : fg_nf(c);
}

// Extracts the matrix of a functional (matrix-fragment) circuit by pinning
// the left boundary to each basis vector and reading off the unique image.
inline QMatrix matrix_of_functional(const Diagram& c) {
  require_fragment(c, Fragment::CircRight, "matrix_of_functional");
  PolyRelation r = eval(c);
  std::size_t n = r.left, m = r.right;
  QMatrix a(m, n);
  std::vector<std::size_t> left_vars(n);
  for (std::size_t j = 0; j < n; ++j) left_vars[j] = j;
  for (std::size_t j = 0; j < n; ++j) {
    QVector basis(n, Rational(0));
    basis[j] = 1;
    HPoly image = substitute(r.body, left_vars, basis);
    for (std::size_t i = 0; i < m; ++i) {
      Interval1D iv = interval_of_1d(project(image, {i}));
      if (iv.empty || !iv.lower || !iv.upper || *iv.lower != *iv.upper)
        throw Error("matrix_of_functional: semantics is not functional");
      a.at(i, j) = *iv.lower;
    }
  }
  return a;
}

}  // namespace polyrel
