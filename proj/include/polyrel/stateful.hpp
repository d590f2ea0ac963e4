#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "polyrel/relation.hpp"
#include "polyrel/semantics.hpp"

namespace polyrel {

struct SearchBoundExceeded : Error {
  using Error::Error;
};

// A stateful polyhedral process: s registers plus a transition relation over
// (state-before, left ports) -> (state-after, right ports), stored as a
// PolyRelation with left = s + n and right = s + m.
struct StatefulProcess {
  std::size_t regs = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  PolyRelation rel;

  StatefulProcess() = default;
  StatefulProcess(std::size_t s, std::size_t n_, std::size_t m_, PolyRelation r)
      : regs(s), n(n_), m(m_), rel(std::move(r)) {
    if (rel.left != regs + n || rel.right != regs + m)
      throw DimensionError("StatefulProcess: relation boundary mismatch");
  }
};

struct Transition {
  QVector u;  // state before
  QVector l;  // left ports
  QVector v;  // state after
  QVector r;  // right ports
};

// Composition: registers accumulate (first argument's registers first), the
// shared middle ports are conjoined and eliminated.
inline StatefulProcess st_compose(const StatefulProcess& p, const StatefulProcess& q) {
  if (p.m != q.n) throw DimensionError("st_compose: boundary mismatch");
  std::size_t s = p.regs, t = q.regs, n = p.n, m = p.m, o = q.m;
  // Variable layout: u_p(s) u_q(t) l(n) v_p(s) v_q(t) r(o) mid(m)
  std::size_t total = s + t + n + s + t + o + m;
  std::size_t off_uq = s, off_l = s + t, off_vp = s + t + n, off_vq = s + t + n + s,
              off_r = s + t + n + s + t, off_mid = s + t + n + s + t + o;
  HPoly sys(total);
  for (const auto& row : p.rel.body.ineqs) {
    QVector coeffs(total, Rational(0));
    for (std::size_t j = 0; j < s; ++j) coeffs[j] = row.coeffs[j];
    for (std::size_t j = 0; j < n; ++j) coeffs[off_l + j] = row.coeffs[s + j];
    for (std::size_t j = 0; j < s; ++j) coeffs[off_vp + j] = row.coeffs[s + n + j];
    for (std::size_t j = 0; j < m; ++j) coeffs[off_mid + j] = row.coeffs[s + n + s + j];
    sys.add(std::move(coeffs), row.constant);
  }
  for (const auto& row : q.rel.body.ineqs) {
    QVector coeffs(total, Rational(0));
    for (std::size_t j = 0; j < t; ++j) coeffs[off_uq + j] = row.coeffs[j];
    for (std::size_t j = 0; j < m; ++j) coeffs[off_mid + j] = row.coeffs[t + j];
    for (std::size_t j = 0; j < t; ++j) coeffs[off_vq + j] = row.coeffs[t + m + j];
    for (std::size_t j = 0; j < o; ++j) coeffs[off_r + j] = row.coeffs[t + m + t + j];
    sys.add(std::move(coeffs), row.constant);
  }
  std::vector<std::size_t> keep(off_mid);
  std::iota(keep.begin(), keep.end(), 0);
  HPoly body = remove_redundancy_default(project(sys, keep));
  return StatefulProcess(s + t, n, o, PolyRelation(s + t + n, s + t + o, std::move(body)));
}

// Monoidal product: registers and boundaries stack blockwise.
inline StatefulProcess st_tensor(const StatefulProcess& p, const StatefulProcess& q) {
  std::size_t s = p.regs, t = q.regs, n1 = p.n, m1 = p.m, n2 = q.n, m2 = q.m;
  std::size_t total = s + t + n1 + n2 + s + t + m1 + m2;
  std::size_t off_uq = s, off_l1 = s + t, off_l2 = s + t + n1, off_vp = s + t + n1 + n2,
              off_vq = off_vp + s, off_r1 = off_vq + t, off_r2 = off_r1 + m1;
  HPoly sys(total);
  for (const auto& row : p.rel.body.ineqs) {
    QVector coeffs(total, Rational(0));
    for (std::size_t j = 0; j < s; ++j) coeffs[j] = row.coeffs[j];
    for (std::size_t j = 0; j < n1; ++j) coeffs[off_l1 + j] = row.coeffs[s + j];
    for (std::size_t j = 0; j < s; ++j) coeffs[off_vp + j] = row.coeffs[s + n1 + j];
    for (std::size_t j = 0; j < m1; ++j) coeffs[off_r1 + j] = row.coeffs[s + n1 + s + j];
    sys.add(std::move(coeffs), row.constant);
  }
  for (const auto& row : q.rel.body.ineqs) {
    QVector coeffs(total, Rational(0));
    for (std::size_t j = 0; j < t; ++j) coeffs[off_uq + j] = row.coeffs[j];
    for (std::size_t j = 0; j < n2; ++j) coeffs[off_l2 + j] = row.coeffs[t + j];
    for (std::size_t j = 0; j < t; ++j) coeffs[off_vq + j] = row.coeffs[t + n2 + j];
    for (std::size_t j = 0; j < m2; ++j) coeffs[off_r2 + j] = row.coeffs[t + n2 + t + j];
    sys.add(std::move(coeffs), row.constant);
  }
  return StatefulProcess(s + t, n1 + n2, m1 + m2,
                         PolyRelation(s + t + n1 + n2, s + t + m1 + m2, std::move(sys)));
}

// Register semantics: one register, transitions (k, l, l, k).
inline StatefulProcess register_process() {
  PolyRelation rel(2, 2);  // (u, l) -> (v, r)
  detail::add_equality(rel, {Rational(0), Rational(1), Rational(-1), Rational(0)}, Rational(0));
  detail::add_equality(rel, {Rational(1), Rational(0), Rational(0), Rational(-1)}, Rational(0));
  return StatefulProcess(1, 1, 1, std::move(rel));
}

// Structural evaluation in the stateful semantics; register-free subterms
// evaluate exactly as in the stateless functor.
inline StatefulProcess st_eval(const Diagram& d) {
  validate(d);
  if (!(d.flags() & Diagram::kReg)) {
    PolyRelation r = eval(d);
    return StatefulProcess(0, r.left, r.right, std::move(r));
  }
  switch (d.tag()) {
    case Diagram::Tag::Gen: return register_process();
    case Diagram::Tag::Seq: {
      // wiring on either side only renames ports
      if (auto p = wiring_perm(d.second())) {
        StatefulProcess a = st_eval(d.first());
        std::vector<std::size_t> block(a.regs + a.m);
        for (std::size_t i = 0; i < a.regs; ++i) block[i] = i;
        for (std::size_t i = 0; i < a.m; ++i) block[a.regs + i] = a.regs + (*p)[i];
        return StatefulProcess(a.regs, a.n, a.m,
                               detail::permute_right_ports(a.rel, block));
      }
      if (auto p = wiring_perm(d.first())) {
        StatefulProcess b = st_eval(d.second());
        std::vector<std::size_t> block(b.regs + b.n);
        for (std::size_t i = 0; i < b.regs; ++i) block[i] = i;
        for (std::size_t i = 0; i < b.n; ++i) block[b.regs + i] = b.regs + (*p)[i];
        return StatefulProcess(b.regs, b.n, b.m, detail::permute_left_ports(b.rel, block));
      }
      return st_compose(st_eval(d.first()), st_eval(d.second()));
    }
    case Diagram::Tag::Tensor: return st_tensor(st_eval(d.first()), st_eval(d.second()));
    default: throw Error("st_eval: unreachable");
  }
}

inline QVector transition_point(const StatefulProcess& p, const Transition& t) {
  if (t.u.size() != p.regs || t.l.size() != p.n || t.v.size() != p.regs || t.r.size() != p.m)
    throw DimensionError("st_transition: dimension mismatch");
  QVector z;
  z.reserve(2 * p.regs + p.n + p.m);
  z.insert(z.end(), t.u.begin(), t.u.end());
  z.insert(z.end(), t.l.begin(), t.l.end());
  z.insert(z.end(), t.v.begin(), t.v.end());
  z.insert(z.end(), t.r.begin(), t.r.end());
  return z;
}

inline bool st_transition(const StatefulProcess& p, const Transition& t) {
  return contains_point(p.rel.body, transition_point(p, t));
}

// The polyhedron of reachable (state-after, right ports) from a fixed
// state-before and left-port valuation.
inline HPoly st_step_set(const StatefulProcess& p, const QVector& u, const QVector& l) {
  if (u.size() != p.regs || l.size() != p.n) throw DimensionError("st_step_set: dimension mismatch");
  std::vector<std::size_t> vars(p.regs + p.n);
  std::iota(vars.begin(), vars.end(), 0);
  QVector values = u;
  values.insert(values.end(), l.begin(), l.end());
  return substitute(p.rel.body, vars, values);
}

namespace detail {

inline PolyRelation permute_registers(const StatefulProcess& p,
                                      const std::vector<std::size_t>& perm) {
  // Variable i of the permuted relation reads variable map[i] of the original.
  std::size_t s = p.regs;
  PolyRelation out(p.rel.left, p.rel.right);
  for (const auto& row : p.rel.body.ineqs) {
    QVector coeffs(row.coeffs.size());
    for (std::size_t j = 0; j < s; ++j) {
      coeffs[perm[j]] = row.coeffs[j];
      coeffs[s + p.n + perm[j]] = row.coeffs[s + p.n + j];
    }
    for (std::size_t j = 0; j < p.n; ++j) coeffs[s + j] = row.coeffs[s + j];
    for (std::size_t j = 0; j < p.m; ++j) coeffs[s + p.n + s + j] = row.coeffs[s + p.n + s + j];
    out.body.add(std::move(coeffs), row.constant);
  }
  return out;
}

}  // namespace detail

// Raw inclusion of transition relations, register order taken as-is.
inline bool st_includes(const StatefulProcess& p, const StatefulProcess& q) {
  if (p.regs != q.regs || p.n != q.n || p.m != q.m) return false;
  return includes_rel(p.rel, q.rel);
}

// Equivalence up to a register relabelling: true iff some permutation of the
// registers makes the relations mutually included. Exhaustive search, capped
// at 8 registers.
inline bool st_equiv_perm(const StatefulProcess& p, const StatefulProcess& q) {
  if (p.regs != q.regs || p.n != q.n || p.m != q.m) return false;
  if (p.regs > 8)
    throw SearchBoundExceeded("st_equiv_perm: register permutation search bound (8) exceeded");
  std::vector<std::size_t> perm(p.regs);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    PolyRelation permuted = detail::permute_registers(p, perm);
    if (includes_rel(permuted, q.rel) && includes_rel(q.rel, permuted)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace polyrel
