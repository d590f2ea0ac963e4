#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyrel/diagram.hpp"
#include "polyrel/stateful.hpp"

namespace polyrel {

// Unset bound means an unbounded place.
using PlaceBound = std::optional<Rational>;

// A bounded continuous Petri net: markings and firing amounts range over the
// nonnegative rationals, pre/post are places x transitions matrices.
struct PetriNet {
  std::size_t places = 0;
  std::size_t transitions = 0;
  QMatrix pre;
  QMatrix post;
  std::vector<PlaceBound> bounds;
};

// t-dimensional vector with nonnegative entries.
using FiringVector = QVector;

namespace detail {

inline void validate_petri(const PetriNet& net) {
  if (net.pre.rows != net.places || net.pre.cols != net.transitions ||
      net.post.rows != net.places || net.post.cols != net.transitions)
    throw DimensionError("petri net: pre/post must be places x transitions");
  if (net.bounds.size() != net.places)
    throw DimensionError("petri net: one bound per place required");
  for (const auto& e : net.pre.entries)
    if (e < 0) throw Error("petri net: negative pre entry");
  for (const auto& e : net.post.entries)
    if (e < 0) throw Error("petri net: negative post entry");
  for (const auto& b : net.bounds)
    if (b && *b < 0) throw Error("petri net: negative bound");
}

inline bool marking_in_bounds(const PetriNet& net, const QVector& y) {
  for (std::size_t i = 0; i < net.places; ++i) {
    if (y[i] < 0) return false;
    if (net.bounds[i] && y[i] > *net.bounds[i]) return false;
  }
  return true;
}

}  // namespace detail

// One step of the definition: y -> z iff some nonnegative firing vector t has
// pre.t <= y and z = y - pre.t + post.t, with both markings within bounds.
// Out-of-bounds inputs answer false.
inline bool petri_can_step(const PetriNet& net, const QVector& y, const QVector& z) {
  detail::validate_petri(net);
  if (y.size() != net.places || z.size() != net.places)
    throw DimensionError("petri_can_step: marking dimension mismatch");
  if (!detail::marking_in_bounds(net, y) || !detail::marking_in_bounds(net, z)) return false;
  HPoly sys(net.transitions);
  for (std::size_t j = 0; j < net.transitions; ++j) {
    QVector row(net.transitions, Rational(0));
    row[j] = 1;
    sys.add(std::move(row), Rational(0));
  }
  for (std::size_t i = 0; i < net.places; ++i) {
    QVector row(net.transitions);
    for (std::size_t j = 0; j < net.transitions; ++j) row[j] = -net.pre.at(i, j);
    sys.add(std::move(row), y[i]);
  }
  for (std::size_t i = 0; i < net.places; ++i) {
    QVector row(net.transitions);
    for (std::size_t j = 0; j < net.transitions; ++j)
      row[j] = net.post.at(i, j) - net.pre.at(i, j);
    QVector neg(net.transitions);
    for (std::size_t j = 0; j < net.transitions; ++j) neg[j] = -row[j];
    Rational c = y[i] - z[i];
    sys.add(std::move(row), c);
    sys.add(std::move(neg), -c);
  }
  return is_feasible(sys);
}

// Applies a concrete firing vector; Infeasible (nullopt) if it over-consumes
// or leaves the bounds.
inline std::optional<QVector> petri_fire(const PetriNet& net, const QVector& y,
                                         const FiringVector& t) {
  detail::validate_petri(net);
  if (y.size() != net.places || t.size() != net.transitions)
    throw DimensionError("petri_fire: dimension mismatch");
  for (const auto& e : t)
    if (e < 0) return std::nullopt;
  if (!detail::marking_in_bounds(net, y)) return std::nullopt;
  QVector consumed = mat_mul(net.pre, t);
  QVector produced = mat_mul(net.post, t);
  QVector z(net.places);
  for (std::size_t i = 0; i < net.places; ++i) {
    if (consumed[i] > y[i]) return std::nullopt;
    z[i] = y[i] - consumed[i] + produced[i];
  }
  if (!detail::marking_in_bounds(net, z)) return std::nullopt;
  return z;
}

// The synchronous buffer with an upper bound on the stored value; unbounded
// places keep the plain register.
inline Diagram buffer_gadget(const PlaceBound& bound) {
  if (!bound) return gen(GenKind::Register);
  return seq(upper_bound_wire(*bound), gen(GenKind::Register), upper_bound_wire(*bound));
}

// A place: positive adder into the buffer, positive coadder out of it, with
// the surplus fed back through the compact-closed loop. Left port is inflow,
// right port is outflow.
inline Diagram place_gadget(const PlaceBound& bound) {
  Diagram posadd = seq(tensor(nonneg_wire(), nonneg_wire()), gen(GenKind::Add));
  Diagram poscoadd = seq(gen(GenKind::CoAdd), tensor(nonneg_wire(), nonneg_wire()));
  Diagram f = seq(posadd, buffer_gadget(bound), poscoadd);
  return seq(tensor(cup(1), id(1)), tensor(id(1), f), tensor(cap(1), id(1)));
}

// Closed diagram of the net: duplicated nonnegative firing amounts feed the
// pre and post matrices, whose outputs meet each place's out and in port.
inline Diagram encode_petri(const PetriNet& net) {
  detail::validate_petri(net);
  std::size_t t = net.transitions, p = net.places;
  Diagram firing = id(0);
  for (std::size_t j = 0; j < t; ++j)
    firing = tensor(firing, seq(cup(1), tensor(nonneg_wire(), id(1))));
  std::vector<std::size_t> deinterleave(2 * t);
  for (std::size_t j = 0; j < t; ++j) {
    deinterleave[2 * j] = j;
    deinterleave[2 * j + 1] = t + j;
  }
  Diagram matrices = tensor(diagram_of_matrix(net.pre, MatrixSide::Right),
                            diagram_of_matrix(net.post, MatrixSide::Right));
  std::vector<std::size_t> pair_up(2 * p);
  for (std::size_t i = 0; i < p; ++i) {
    pair_up[i] = 2 * i;          // outflow block
    pair_up[p + i] = 2 * i + 1;  // inflow block
  }
  Diagram sinks = id(0);
  for (std::size_t i = 0; i < p; ++i)
    sinks = tensor(sinks, seq(tensor(id(1), place_gadget(net.bounds[i])), cap(1)));
  return seq(firing, perm_to_diagram(deinterleave), matrices, perm_to_diagram(pair_up), sinks);
}

// The encoded route to the step relation; agrees with petri_can_step.
inline bool petri_step_via_process(const PetriNet& net, const QVector& y, const QVector& z) {
  if (y.size() != net.places || z.size() != net.places)
    throw DimensionError("petri_step_via_process: marking dimension mismatch");
  StatefulProcess proc = st_eval(encode_petri(net));
  return st_transition(proc, Transition{y, {}, z, {}});
}

}  // namespace polyrel
