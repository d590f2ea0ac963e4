#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyrel/linalg.hpp"

namespace polyrel {

// One inequality: coeffs . z + constant >= 0.
struct Ineq {
  QVector coeffs;
  Rational constant;

  bool operator==(const Ineq& o) const { return coeffs == o.coeffs && constant == o.constant; }
  bool operator<(const Ineq& o) const {
    if (coeffs != o.coeffs) return coeffs < o.coeffs;
    return constant < o.constant;
  }
};

// H-representation of a polyhedron { z | A z + b >= 0 }. A cone is the
// all-constants-zero case. An all-zero row with negative constant marks a
// syntactically infeasible system.
struct HPoly {
  std::size_t dim = 0;
  std::vector<Ineq> ineqs;

  HPoly() = default;
  explicit HPoly(std::size_t d) : dim(d) {}

  void add(QVector coeffs, Rational constant) {
    if (coeffs.size() != dim) throw DimensionError("HPoly row has wrong dimension");
    ineqs.push_back(Ineq{std::move(coeffs), std::move(constant)});
  }

  bool is_cone() const {
    return std::all_of(ineqs.begin(), ineqs.end(),
                       [](const Ineq& q) { return q.constant == 0; });
  }
};

inline bool is_zero_row(const Ineq& q) {
  return std::all_of(q.coeffs.begin(), q.coeffs.end(),
                     [](const Rational& c) { return c == 0; });
}

// Scales a row by the positive rational turning it into a primitive integer
// vector (coprime coefficients, denominators cleared). Canonical up to the
// sign pattern, which positive scaling preserves.
inline Ineq normalized_row(const Ineq& q) {
  BigInt l = denominator(q.constant);
  for (const auto& c : q.coeffs) l = lcm(l, denominator(c));
  BigInt g = abs(numerator(q.constant) * (l / denominator(q.constant)));
  for (const auto& c : q.coeffs) g = gcd(g, numerator(c) * (l / denominator(c)));
  Rational scale = g == 0 ? Rational(l) : Rational(l, g);
  Ineq out;
  out.coeffs.reserve(q.coeffs.size());
  for (const auto& c : q.coeffs) out.coeffs.push_back(c * scale);
  out.constant = q.constant * scale;
  return out;
}

// Drops trivially-true rows, normalizes each remaining row to primitive
// integer form, deduplicates, sorts. Keeps infeasibility witnesses.
inline HPoly normalized(const HPoly& h) {
  HPoly out(h.dim);
  for (const auto& q : h.ineqs) {
    if (is_zero_row(q)) {
      if (q.constant < 0) out.ineqs.push_back(Ineq{QVector(h.dim, Rational(0)), Rational(-1)});
      continue;
    }
    out.ineqs.push_back(normalized_row(q));
  }
  std::sort(out.ineqs.begin(), out.ineqs.end());
  out.ineqs.erase(std::unique(out.ineqs.begin(), out.ineqs.end()), out.ineqs.end());
  return out;
}

inline bool syntactically_infeasible(const HPoly& h) {
  return std::any_of(h.ineqs.begin(), h.ineqs.end(),
                     [](const Ineq& q) { return is_zero_row(q) && q.constant < 0; });
}

inline bool contains_point(const HPoly& h, const QVector& z) {
  if (z.size() != h.dim) throw DimensionError("contains_point: dimension mismatch");
  for (const auto& q : h.ineqs)
    if (dot(q.coeffs, z) + q.constant < 0) return false;
  return true;
}

// Pins the given variables to fixed values; remaining variables keep their
// relative order.
inline HPoly substitute(const HPoly& h, const std::vector<std::size_t>& vars,
                        const QVector& values) {
  if (vars.size() != values.size()) throw DimensionError("substitute: mismatched pins");
  std::vector<std::optional<Rational>> pin(h.dim);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] >= h.dim) throw DimensionError("substitute: variable out of range");
    pin[vars[i]] = values[i];
  }
  std::size_t kept = 0;
  for (std::size_t j = 0; j < h.dim; ++j)
    if (!pin[j]) ++kept;
  HPoly out(kept);
  for (const auto& q : h.ineqs) {
    QVector coeffs;
    coeffs.reserve(kept);
    Rational constant = q.constant;
    for (std::size_t j = 0; j < h.dim; ++j) {
      if (pin[j])
        constant += q.coeffs[j] * *pin[j];
      else
        coeffs.push_back(q.coeffs[j]);
    }
    out.ineqs.push_back(Ineq{std::move(coeffs), std::move(constant)});
  }
  return out;
}

struct Interval1D {
  std::optional<Rational> lower;  // nullopt = -inf
  std::optional<Rational> upper;  // nullopt = +inf
  bool empty = false;
};

// Tightest interval containing the solution set of a 1-dimensional system.
inline Interval1D interval_of_1d(const HPoly& h) {
  if (h.dim != 1) throw DimensionError("interval_of_1d: system is not 1-dimensional");
  Interval1D out;
  for (const auto& q : h.ineqs) {
    const Rational& a = q.coeffs[0];
    if (a == 0) {
      if (q.constant < 0) out.empty = true;
      continue;
    }
    Rational bound = -q.constant / a;
    if (a > 0) {
      if (!out.lower || bound > *out.lower) out.lower = bound;
    } else {
      if (!out.upper || bound < *out.upper) out.upper = bound;
    }
  }
  if (out.lower && out.upper && *out.lower > *out.upper) out.empty = true;
  if (out.empty) {
    out.lower.reset();
    out.upper.reset();
  }
  return out;
}

inline std::string to_string(const HPoly& h) {
  std::string s = "{dim=" + std::to_string(h.dim);
  for (const auto& q : h.ineqs) {
    s += "; ";
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
      if (j) s += " ";
      s += to_string(q.coeffs[j]);
    }
    s += " | " + to_string(q.constant);
  }
  s += "}";
  return s;
}

}  // namespace polyrel
