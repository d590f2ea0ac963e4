#pragma once

// Independent max-flow oracle: Edmonds-Karp augmenting paths over exact
// rationals. Test-side only; shares nothing with the diagrammatic route.

#include <optional>
#include <queue>
#include <vector>

#include "polyrel/flow.hpp"

namespace testflow {

using namespace polyrel;

inline std::optional<Rational> ford_fulkerson(const FlowNetwork& net) {
  std::size_t n = net.nodes.size();
  std::vector<std::vector<Rational>> cap(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& e : net.edges) cap[e.from][e.to] += e.cap;
  Rational total = 0;
  while (true) {
    std::vector<std::size_t> parent(n, n);
    parent[net.source] = net.source;
    std::queue<std::size_t> q;
    q.push(net.source);
    while (!q.empty() && parent[net.sink] == n) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < n; ++v)
        if (parent[v] == n && cap[u][v] > 0) {
          parent[v] = u;
          q.push(v);
        }
    }
    if (parent[net.sink] == n) return total;
    Rational bottleneck;
    bool first = true;
    for (std::size_t v = net.sink; v != net.source; v = parent[v]) {
      const Rational& c = cap[parent[v]][v];
      if (first || c < bottleneck) bottleneck = c;
      first = false;
    }
    if (bottleneck == 0) return total;
    for (std::size_t v = net.sink; v != net.source; v = parent[v]) {
      cap[parent[v]][v] -= bottleneck;
      cap[v][parent[v]] += bottleneck;
    }
    total += bottleneck;
  }
}

// Random layered DAG: source, up to two middle layers, sink; integer
// capacities up to 10.
inline FlowNetwork random_layered(std::mt19937& rng, std::size_t max_nodes = 8,
                                  std::size_t max_edges = 12) {
  std::uniform_int_distribution<std::size_t> mid(1, (max_nodes - 2) / 2);
  std::size_t l1 = mid(rng), l2 = mid(rng);
  FlowNetwork net;
  net.nodes.push_back("s");
  std::vector<std::size_t> layer1, layer2;
  for (std::size_t i = 0; i < l1; ++i) {
    layer1.push_back(net.nodes.size());
    net.nodes.push_back("a" + std::to_string(i));
  }
  for (std::size_t i = 0; i < l2; ++i) {
    layer2.push_back(net.nodes.size());
    net.nodes.push_back("b" + std::to_string(i));
  }
  net.sink = net.nodes.size();
  net.nodes.push_back("t");
  net.source = 0;
  std::uniform_int_distribution<int> capd(0, 10);
  std::uniform_int_distribution<int> pct(0, 99);
  auto add_edge = [&](std::size_t from, std::size_t to) {
    net.edges.push_back(FlowEdge{from, to, Rational(capd(rng))});
  };
  // guarantee connectivity through the first of each layer
  add_edge(net.source, layer1[0]);
  add_edge(layer1[0], layer2[0]);
  add_edge(layer2[0], net.sink);
  while (net.edges.size() < max_edges && pct(rng) < 85) {
    int shape = pct(rng);
    std::uniform_int_distribution<std::size_t> p1(0, layer1.size() - 1);
    std::uniform_int_distribution<std::size_t> p2(0, layer2.size() - 1);
    if (shape < 30)
      add_edge(net.source, layer1[p1(rng)]);
    else if (shape < 60)
      add_edge(layer1[p1(rng)], layer2[p2(rng)]);
    else if (shape < 85)
      add_edge(layer2[p2(rng)], net.sink);
    else
      add_edge(layer1[p1(rng)], net.sink);  // a layer-skipping edge
  }
  return net;
}

}  // namespace testflow
