#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "polyrel/fourier_motzkin.hpp"
#include "polyrel/hpoly.hpp"
#include "polyrel/vrep.hpp"

namespace polyrel {

// Polyhedral relation n -> m: a polyhedron over the n left-boundary
// variables followed by the m right-boundary variables.
struct PolyRelation {
  std::size_t left = 0;
  std::size_t right = 0;
  HPoly body;

  PolyRelation() = default;
  PolyRelation(std::size_t l, std::size_t r) : left(l), right(r), body(l + r) {}
  PolyRelation(std::size_t l, std::size_t r, HPoly b) : left(l), right(r), body(std::move(b)) {
    if (body.dim != left + right) throw DimensionError("PolyRelation: body dimension mismatch");
  }
};

inline PolyRelation identity_relation(std::size_t n) {
  PolyRelation p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    QVector row(2 * n, Rational(0));
    row[i] = 1;
    row[n + i] = -1;
    QVector neg(2 * n, Rational(0));
    neg[i] = -1;
    neg[n + i] = 1;
    p.body.add(std::move(row), Rational(0));
    p.body.add(std::move(neg), Rational(0));
  }
  return p;
}

// Relational composite: conjoin on the shared middle variables, eliminate
// them, and prune redundant rows.
inline PolyRelation compose_rel(const PolyRelation& p, const PolyRelation& q) {
  if (p.right != q.left) throw DimensionError("compose_rel: boundary mismatch");
  std::size_t n = p.left, m = p.right, o = q.right;
  HPoly sys(n + m + o);
  for (const auto& row : p.body.ineqs) {
    QVector coeffs(n + m + o, Rational(0));
    for (std::size_t j = 0; j < n + m; ++j) coeffs[j] = row.coeffs[j];
    sys.add(std::move(coeffs), row.constant);
  }
  for (const auto& row : q.body.ineqs) {
    QVector coeffs(n + m + o, Rational(0));
    for (std::size_t j = 0; j < m + o; ++j) coeffs[n + j] = row.coeffs[j];
    sys.add(std::move(coeffs), row.constant);
  }
  std::vector<std::size_t> keep;
  keep.reserve(n + o);
  for (std::size_t j = 0; j < n; ++j) keep.push_back(j);
  for (std::size_t j = 0; j < o; ++j) keep.push_back(n + m + j);
  return PolyRelation(n, o, remove_redundancy_default(project(sys, keep)));
}

// Monoidal product: block-diagonal stacking, with both left blocks first and
// both right blocks after them.
inline PolyRelation tensor_rel(const PolyRelation& p, const PolyRelation& q) {
  std::size_t n = p.left, m = p.right, u = q.left, w = q.right;
  PolyRelation out(n + u, m + w);
  for (const auto& row : p.body.ineqs) {
    QVector coeffs(n + u + m + w, Rational(0));
    for (std::size_t j = 0; j < n; ++j) coeffs[j] = row.coeffs[j];
    for (std::size_t j = 0; j < m; ++j) coeffs[n + u + j] = row.coeffs[n + j];
    out.body.add(std::move(coeffs), row.constant);
  }
  for (const auto& row : q.body.ineqs) {
    QVector coeffs(n + u + m + w, Rational(0));
    for (std::size_t j = 0; j < u; ++j) coeffs[n + j] = row.coeffs[j];
    for (std::size_t j = 0; j < w; ++j) coeffs[n + u + m + j] = row.coeffs[u + j];
    out.body.add(std::move(coeffs), row.constant);
  }
  return out;
}

inline PolyRelation converse_rel(const PolyRelation& p) {
  PolyRelation out(p.right, p.left);
  for (const auto& row : p.body.ineqs) {
    QVector coeffs(p.body.dim);
    for (std::size_t j = 0; j < p.right; ++j) coeffs[j] = row.coeffs[p.left + j];
    for (std::size_t j = 0; j < p.left; ++j) coeffs[p.right + j] = row.coeffs[j];
    out.body.add(std::move(coeffs), row.constant);
  }
  return out;
}

inline bool includes_rel(const PolyRelation& p, const PolyRelation& q) {
  if (p.left != q.left || p.right != q.right)
    throw DimensionError("includes_rel: boundary mismatch");
  return includes_hp(p.body, q.body);
}

inline bool equivalent_rel(const PolyRelation& p, const PolyRelation& q) {
  return includes_rel(p, q) && includes_rel(q, p);
}

// Adds one fresh variable at the end of the right boundary; each constant
// becomes that variable's coefficient and the variable is kept nonnegative.
inline PolyRelation homogenize(const PolyRelation& p) {
  PolyRelation out(p.left, p.right + 1);
  for (const auto& row : p.body.ineqs) {
    QVector coeffs = row.coeffs;
    coeffs.push_back(row.constant);
    out.body.add(std::move(coeffs), Rational(0));
  }
  QVector y_row(p.body.dim + 1, Rational(0));
  y_row[p.body.dim] = 1;
  out.body.add(std::move(y_row), Rational(0));
  return out;
}

}  // namespace polyrel
