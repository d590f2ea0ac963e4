#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "polyrel/rational.hpp"

namespace polyrel {

using QVector = std::vector<Rational>;

// Dense row-major matrix over the rationals.
struct QMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> entries;  // rows * cols, row-major

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> data) {
    rows = data.size();
    cols = rows == 0 ? 0 : data.begin()->size();
    entries.reserve(rows * cols);
    for (const auto& row : data) {
      if (row.size() != cols) throw DimensionError("ragged matrix initializer");
      for (const auto& v : row) entries.push_back(v);
    }
  }

  Rational& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

  bool operator==(const QMatrix& other) const = default;
};

inline QMatrix identity_matrix(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

inline QVector mat_mul(const QMatrix& a, const QVector& x) {
  if (a.cols != x.size())
    throw DimensionError("mat_mul: matrix has " + std::to_string(a.cols) +
                         " columns but vector has dimension " + std::to_string(x.size()));
  QVector y(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < a.cols; ++j) acc += a.at(i, j) * x[j];
    y[i] = std::move(acc);
  }
  return y;
}

inline Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot: dimension mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

namespace detail {

// Clears denominators row by row; row scaling leaves the rank unchanged.
inline std::vector<std::vector<BigInt>> integer_rows(const QMatrix& a) {
  std::vector<std::vector<BigInt>> out(a.rows, std::vector<BigInt>(a.cols));
  for (std::size_t i = 0; i < a.rows; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < a.cols; ++j) l = lcm(l, denominator(a.at(i, j)));
    for (std::size_t j = 0; j < a.cols; ++j)
      out[i][j] = numerator(a.at(i, j)) * (l / denominator(a.at(i, j)));
  }
  return out;
}

}  // namespace detail

// Rank over the rationals, by fraction-free (Bareiss) elimination on the
// denominator-cleared matrix, reducing each produced row by its gcd.
inline std::size_t rank(const QMatrix& a) {
  auto m = detail::integer_rows(a);
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols && r < a.rows; ++col) {
    std::size_t pivot = r;
    while (pivot < a.rows && m[pivot][col] == 0) ++pivot;
    if (pivot == a.rows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = r + 1; i < a.rows; ++i) {
      if (m[i][col] == 0) continue;
      BigInt g = gcd(m[r][col], m[i][col]);
      BigInt fi = m[r][col] / g;
      BigInt fr = m[i][col] / g;
      BigInt row_gcd = 0;
      for (std::size_t j = 0; j < a.cols; ++j) {
        m[i][j] = m[i][j] * fi - m[r][j] * fr;
        row_gcd = gcd(row_gcd, m[i][j]);
      }
      if (row_gcd > 1)
        for (std::size_t j = 0; j < a.cols; ++j) m[i][j] /= row_gcd;
    }
    ++r;
  }
  return r;
}

// One exact solution of a x = b, if the system is consistent; free variables
// are set to zero.
inline std::optional<QVector> solve_linear(const QMatrix& a, const QVector& b) {
  if (a.rows != b.size()) throw DimensionError("solve_linear: dimension mismatch");
  QMatrix m(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    m.at(i, a.cols) = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols && r < a.rows; ++col) {
    std::size_t pivot = r;
    while (pivot < a.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == a.rows) continue;
    for (std::size_t j = 0; j <= a.cols; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    Rational inv = m.at(r, col);
    for (std::size_t j = col; j <= a.cols; ++j) m.at(r, j) /= inv;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == r || m.at(i, col) == 0) continue;
      Rational f = m.at(i, col);
      for (std::size_t j = col; j <= a.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < a.rows; ++i)
    if (m.at(i, a.cols) != 0) return std::nullopt;
  QVector x(a.cols, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m.at(i, a.cols);
  return x;
}

inline std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  s += ")";
  return s;
}

}  // namespace polyrel
