#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "polyrel/fourier_motzkin.hpp"
#include "polyrel/hpoly.hpp"

namespace polyrel {

// Generator view of a polyhedron: conv(vertices) + cone(rays) + span(lines).
// Rays and lines are nonzero; rays are scaled positively so the first nonzero
// coordinate has absolute value 1, lines so it equals 1. Empty everywhere
// means the empty polyhedron; a cone carries either no vertex or the single
// zero vertex.
struct VRep {
  std::size_t dim = 0;
  std::vector<QVector> vertices;
  std::vector<QVector> rays;
  std::vector<QVector> lines;

  bool operator==(const VRep&) const = default;

  bool empty() const { return vertices.empty() && rays.empty() && lines.empty(); }
};

namespace detail {

inline bool is_zero_vec(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

inline QVector normalized_ray(QVector v) {
  for (const auto& c : v)
    if (c != 0) {
      Rational s = abs(c);
      for (auto& e : v) e /= s;
      return v;
    }
  return v;
}

inline QVector normalized_line(QVector v) {
  for (const auto& c : v)
    if (c != 0) {
      Rational s = c;
      for (auto& e : v) e /= s;
      return v;
    }
  return v;
}

// Reduced row echelon form of a line basis; rows ordered by pivot column.
inline void rref_lines(std::vector<QVector>& lines, std::size_t dim) {
  std::vector<QVector> basis;
  for (std::size_t col = 0, row = 0; col < dim && row < lines.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < lines.size() && lines[pivot][col] == 0) ++pivot;
    if (pivot == lines.size()) continue;
    std::swap(lines[row], lines[pivot]);
    Rational inv = lines[row][col];
    for (auto& e : lines[row]) e /= inv;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (i == row || lines[i][col] == 0) continue;
      Rational f = lines[i][col];
      for (std::size_t j = 0; j < dim; ++j) lines[i][j] -= f * lines[row][j];
    }
    ++row;
  }
  std::erase_if(lines, is_zero_vec);
}

// Canonical coset representative modulo span(lines); lines must be in RREF.
inline void reduce_mod_lines(QVector& v, const std::vector<QVector>& lines) {
  for (const auto& l : lines) {
    std::size_t p = 0;
    while (p < l.size() && l[p] == 0) ++p;
    if (p == l.size()) continue;
    if (v[p] == 0) continue;
    Rational f = v[p] / l[p];
    for (std::size_t j = 0; j < l.size(); ++j) v[j] -= f * l[j];
  }
}

struct ConeGens {
  std::vector<QVector> rays;
  std::vector<QVector> lines;
};

// Incremental double description for the cone { z | for all rows: a.z >= 0 }.
// Maintains a line basis (the exact lineality of the rows seen so far) plus
// the extreme rays modulo that lineality.
inline ConeGens cone_generators(const HPoly& h) {
  std::size_t d = h.dim;
  std::vector<QVector> lines;
  for (std::size_t i = 0; i < d; ++i) {
    QVector e(d, Rational(0));
    e[i] = 1;
    lines.push_back(std::move(e));
  }
  std::vector<QVector> rays;
  std::vector<QVector> processed;

  auto canonicalize_rays = [&](std::vector<QVector>& rs) {
    std::set<QVector> seen;
    std::vector<QVector> out;
    for (auto& r : rs) {
      reduce_mod_lines(r, lines);
      if (is_zero_vec(r)) continue;
      QVector n = normalized_ray(std::move(r));
      if (seen.insert(n).second) out.push_back(std::move(n));
    }
    rs = std::move(out);
  };

  auto active_rows = [&](const QVector& r) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < processed.size(); ++i)
      if (dot(processed[i], r) == 0) idx.push_back(i);
    return idx;
  };

  auto rank_of_rows = [&](const std::vector<std::size_t>& idx) {
    QMatrix m(idx.size(), d);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) m.at(i, j) = processed[idx[i]][j];
    return rank(m);
  };

  auto prune_nonextreme = [&]() {
    std::size_t target = d - lines.size() - 1;
    std::erase_if(rays, [&](const QVector& r) { return rank_of_rows(active_rows(r)) != target; });
  };

  for (const auto& q : normalized(h).ineqs) {
    if (is_zero_vec(q.coeffs)) continue;
    const QVector& a = q.coeffs;
    std::size_t pivot = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (dot(a, lines[i]) != 0) {
        pivot = i;
        break;
      }
    if (pivot != lines.size()) {
      QVector l0 = std::move(lines[pivot]);
      lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(pivot));
      Rational a0 = dot(a, l0);
      if (a0 < 0) {
        for (auto& e : l0) e = -e;
        a0 = -a0;
      }
      for (auto& l : lines) {
        Rational f = dot(a, l) / a0;
        if (f == 0) continue;
        for (std::size_t j = 0; j < d; ++j) l[j] -= f * l0[j];
      }
      rref_lines(lines, d);
      for (auto& r : rays) {
        Rational f = dot(a, r) / a0;
        if (f == 0) continue;
        for (std::size_t j = 0; j < d; ++j) r[j] -= f * l0[j];
      }
      rays.push_back(std::move(l0));
      canonicalize_rays(rays);
    } else {
      std::vector<QVector> pos, zero, neg;
      for (auto& r : rays) {
        int s = sign(dot(a, r));
        (s > 0 ? pos : s < 0 ? neg : zero).push_back(std::move(r));
      }
      if (!neg.empty()) {
        std::vector<QVector> next = pos;
        next.insert(next.end(), zero.begin(), zero.end());
        // Two extreme rays are adjacent iff their shared active rows have
        // rank d - lineality - 2.
        if (d >= lines.size() + 2) {
          std::size_t adj_rank = d - lines.size() - 2;
          for (const auto& p : pos)
            for (const auto& n : neg) {
              std::vector<std::size_t> shared;
              for (std::size_t i = 0; i < processed.size(); ++i)
                if (dot(processed[i], p) == 0 && dot(processed[i], n) == 0) shared.push_back(i);
              if (rank_of_rows(shared) != adj_rank) continue;
              Rational ap = dot(a, p), an = dot(a, n);
              QVector combo(d);
              for (std::size_t j = 0; j < d; ++j) combo[j] = ap * n[j] - an * p[j];
              next.push_back(std::move(combo));
            }
        }
        rays = std::move(next);
        canonicalize_rays(rays);
      } else {
        rays = std::move(pos);
        for (auto& r : zero) rays.push_back(std::move(r));
      }
    }
    processed.push_back(a);
    prune_nonextreme();
  }

  for (auto& l : lines) l = normalized_line(std::move(l));
  std::sort(lines.begin(), lines.end());
  std::sort(rays.begin(), rays.end());
  return ConeGens{std::move(rays), std::move(lines)};
}

// { z | A z + b >= 0 } lifted to the cone { (z, y) | A z + b y >= 0, y >= 0 }.
inline HPoly homogenized(const HPoly& h) {
  HPoly out(h.dim + 1);
  for (const auto& q : h.ineqs) {
    QVector coeffs = q.coeffs;
    coeffs.push_back(q.constant);
    out.add(std::move(coeffs), Rational(0));
  }
  QVector y_row(h.dim + 1, Rational(0));
  y_row[h.dim] = 1;
  out.add(std::move(y_row), Rational(0));
  return out;
}

}  // namespace detail

// H-to-V conversion by double description. Cones are converted directly (the
// zero cone keeps a single zero vertex); general polyhedra go through the
// homogenization, classifying lifted rays by the sign of the extra
// coordinate. An infeasible input yields the all-empty VRep.
inline VRep h_to_v(const HPoly& h) {
  VRep out;
  out.dim = h.dim;
  if (h.is_cone()) {
    auto gens = detail::cone_generators(h);
    out.rays = std::move(gens.rays);
    out.lines = std::move(gens.lines);
    if (out.rays.empty() && out.lines.empty()) out.vertices.push_back(QVector(h.dim, Rational(0)));
    return out;
  }
  auto gens = detail::cone_generators(detail::homogenized(h));
  for (const auto& r : gens.rays) {
    if (r[h.dim] > 0) {
      QVector v(h.dim);
      for (std::size_t j = 0; j < h.dim; ++j) v[j] = r[j] / r[h.dim];
      out.vertices.push_back(std::move(v));
    } else {
      QVector v(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(h.dim));
      if (!detail::is_zero_vec(v)) out.rays.push_back(detail::normalized_ray(std::move(v)));
    }
  }
  for (const auto& l : gens.lines) {
    QVector v(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(h.dim));
    if (!detail::is_zero_vec(v)) out.lines.push_back(detail::normalized_line(std::move(v)));
  }
  if (out.vertices.empty()) return VRep{h.dim, {}, {}, {}};
  std::sort(out.vertices.begin(), out.vertices.end());
  std::sort(out.rays.begin(), out.rays.end());
  std::sort(out.lines.begin(), out.lines.end());
  return out;
}

// V-to-H conversion: encode z as a combination of the generators with
// nonnegative vertex and ray multipliers (vertex multipliers summing to one)
// and eliminate the multipliers.
inline HPoly v_to_h(const VRep& v) {
  if (v.empty()) {
    HPoly out(v.dim);
    out.add(QVector(v.dim, Rational(0)), Rational(-1));
    return out;
  }
  std::size_t nv = v.vertices.size(), nr = v.rays.size(), nl = v.lines.size();
  std::size_t total = v.dim + nv + nr + nl;
  HPoly sys(total);
  for (std::size_t i = 0; i < v.dim; ++i) {
    QVector row(total, Rational(0));
    row[i] = 1;
    for (std::size_t j = 0; j < nv; ++j) row[v.dim + j] = -v.vertices[j][i];
    for (std::size_t j = 0; j < nr; ++j) row[v.dim + nv + j] = -v.rays[j][i];
    for (std::size_t j = 0; j < nl; ++j) row[v.dim + nv + nr + j] = -v.lines[j][i];
    QVector neg(total);
    for (std::size_t j = 0; j < total; ++j) neg[j] = -row[j];
    sys.add(std::move(row), Rational(0));
    sys.add(std::move(neg), Rational(0));
  }
  for (std::size_t j = 0; j < nv + nr; ++j) {
    QVector row(total, Rational(0));
    row[v.dim + j] = 1;
    sys.add(std::move(row), Rational(0));
  }
  if (nv > 0) {
    QVector ones(total, Rational(0));
    for (std::size_t j = 0; j < nv; ++j) ones[v.dim + j] = 1;
    QVector neg = ones;
    for (auto& e : neg) e = -e;
    sys.add(std::move(ones), Rational(-1));
    sys.add(std::move(neg), Rational(1));
  }
  std::vector<std::size_t> keep(v.dim);
  for (std::size_t i = 0; i < v.dim; ++i) keep[i] = i;
  return remove_redundancy_default(project(sys, keep));
}

// Dual cone { y | y.x >= 0 for all x in the cone }, read off the generators:
// rays become inequality normals, lines become equations.
inline HPoly dual_cone(const HPoly& h) {
  if (!h.is_cone()) throw Error("dual_cone: input is not a cone");
  VRep gens = h_to_v(h);
  HPoly out(h.dim);
  for (const auto& r : gens.rays) out.add(r, Rational(0));
  for (const auto& l : gens.lines) {
    out.add(l, Rational(0));
    QVector neg(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) neg[j] = -l[j];
    out.add(std::move(neg), Rational(0));
  }
  return out;
}

// Inclusion of H-polyhedra. Nonempty inputs are homogenized (inclusion is
// preserved and reflected for nonempty polyhedra) and the cone inclusion is
// decided by membership of every generator of the left cone in the right one.
inline bool includes_hp(const HPoly& p1, const HPoly& p2) {
  if (p1.dim != p2.dim) throw DimensionError("includes_hp: dimension mismatch");
  if (!is_feasible(p1)) return true;
  if (!is_feasible(p2)) return false;
  HPoly h1 = detail::homogenized(p1);
  HPoly h2 = detail::homogenized(p2);
  auto gens = detail::cone_generators(h1);
  for (const auto& r : gens.rays)
    for (const auto& q : h2.ineqs)
      if (dot(q.coeffs, r) < 0) return false;
  for (const auto& l : gens.lines)
    for (const auto& q : h2.ineqs)
      if (dot(q.coeffs, l) != 0) return false;
  return true;
}

inline bool equivalent_hp(const HPoly& p1, const HPoly& p2) {
  return includes_hp(p1, p2) && includes_hp(p2, p1);
}

}  // namespace polyrel
