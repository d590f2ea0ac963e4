#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyrel/diagram.hpp"
#include "polyrel/semantics.hpp"

namespace polyrel {

struct FlowEdge {
  std::size_t from;
  std::size_t to;
  Rational cap;
};

// A capacitated s-t network. The encoder needs a topological layering from
// source to sink: a DAG with no edge entering the source or leaving the sink.
struct FlowNetwork {
  std::vector<std::string> nodes;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::vector<FlowEdge> edges;
};

// {(x, x) | 0 <= x <= k}: a capacity-k edge.
inline Diagram edge_gadget(const Rational& cap) {
  return seq(nonneg_wire(), upper_bound_wire(cap));
}

namespace detail {

inline std::vector<std::size_t> topo_order(const FlowNetwork& net) {
  std::size_t n = net.nodes.size();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& e : net.edges) {
    if (e.from >= n || e.to >= n) throw Error("flow network: edge endpoint out of range");
    ++indeg[e.to];
  }
  std::vector<std::size_t> order;
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.erase(queue.begin());
    order.push_back(v);
    for (const auto& e : net.edges)
      if (e.from == v && --indeg[e.to] == 0) queue.push_back(e.to);
  }
  if (order.size() != n) throw Error("flow network is not layerable: the graph has a cycle");
  return order;
}

inline void validate_flow(const FlowNetwork& net) {
  if (net.source == net.sink) throw Error("flow network: source equals sink");
  if (net.source >= net.nodes.size() || net.sink >= net.nodes.size())
    throw Error("flow network: source or sink out of range");
  for (const auto& e : net.edges) {
    if (e.cap < 0) throw Error("flow network: negative capacity");
    if (e.to == net.source) throw Error("flow network is not layerable: edge into the source");
    if (e.from == net.sink) throw Error("flow network is not layerable: edge out of the sink");
  }
}

}  // namespace detail

// Encoding of the network as a 1 -> 1 circuit: every edge becomes the
// capacity gadget, every node the adder/coadder junction equating inflow and
// outflow. Nodes are processed in topological order; wires for edges that
// jump layers pass through as identities.
inline Diagram encode_flow(const FlowNetwork& net) {
  detail::validate_flow(net);
  auto order = detail::topo_order(net);
  constexpr std::size_t kOut = static_cast<std::size_t>(-1);
  std::vector<std::size_t> wire_dest{net.source};  // the global input heads to the source
  Diagram d = id(1);
  for (std::size_t v : order) {
    // Stable-partition the wires entering v to the front.
    std::size_t incoming = 0;
    for (std::size_t dest : wire_dest)
      if (dest == v) ++incoming;
    if (v != net.source && incoming == 0 && v != net.sink) {
      bool has_out = std::any_of(net.edges.begin(), net.edges.end(),
                                 [&](const FlowEdge& e) { return e.from == v; });
      if (!has_out) continue;  // isolated node
    }
    std::vector<std::size_t> perm(wire_dest.size());
    std::size_t front = 0, back = incoming;
    for (std::size_t i = 0; i < wire_dest.size(); ++i)
      perm[i] = wire_dest[i] == v ? front++ : back++;
    d = seq(d, perm_to_diagram(perm));
    std::size_t passing = wire_dest.size() - incoming;

    std::vector<const FlowEdge*> outs;
    for (const auto& e : net.edges)
      if (e.from == v) outs.push_back(&e);

    Diagram junction;
    std::vector<std::size_t> new_dest;
    if (v == net.sink) {
      junction = add_tree(incoming);  // the sink's outflow is the global output
      new_dest.push_back(kOut);
    } else {
      junction = seq(add_tree(incoming), coadd_tree(outs.size()));
      Diagram caps = id(0);
      for (const FlowEdge* e : outs) {
        caps = tensor(caps, edge_gadget(e->cap));
        new_dest.push_back(e->to);
      }
      junction = seq(junction, caps);
    }
    d = seq(d, tensor(junction, id(passing)));
    for (std::size_t dest : wire_dest)
      if (dest != v) new_dest.push_back(dest);
    wire_dest = std::move(new_dest);
  }
  if (wire_dest.size() != 1 || wire_dest[0] != kOut)
    throw Error("flow network is not layerable: dangling edges remain");
  return d;
}

// The network's maximum flow, read off the evaluated encoding: project the
// diagonal relation to one port and take the upper end of the interval.
// nullopt means the flow is unbounded (no finite s-t cut).
inline std::optional<Rational> max_flow(const FlowNetwork& net) {
  PolyRelation rel = eval(encode_flow(net));
  Interval1D iv = interval_of_1d(project(rel.body, {0}));
  if (iv.empty) throw Error("max_flow: encoded relation is empty");
  if (!iv.upper) return std::nullopt;
  return *iv.upper;
}

}  // namespace polyrel
