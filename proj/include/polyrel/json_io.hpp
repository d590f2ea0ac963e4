#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyrel/flow.hpp"
#include "polyrel/hpoly.hpp"
#include "polyrel/petri.hpp"
#include "polyrel/relation.hpp"
#include "polyrel/stateful.hpp"
#include "polyrel/vrep.hpp"

namespace polyrel {

using Json = nlohmann::ordered_json;

inline Json to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& e : v) a.push_back(to_string(e));
  return a;
}

inline QVector qvector_from_json(const Json& j) {
  QVector v;
  for (const auto& e : j) v.push_back(parse_rational(e.get<std::string>()));
  return v;
}

// {"dim": n, "ineqs": [[c1, ..., cn, b], ...]}; rows are emitted in
// normalized, sorted order so output is deterministic.
inline Json to_json(const HPoly& h) {
  HPoly n = normalized(h);
  Json rows = Json::array();
  for (const auto& q : n.ineqs) {
    Json row = to_json(q.coeffs);
    row.push_back(to_string(q.constant));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", h.dim}, {"ineqs", std::move(rows)}};
}

inline HPoly hpoly_from_json(const Json& j) {
  HPoly h(j.at("dim").get<std::size_t>());
  for (const auto& row : j.at("ineqs")) {
    if (row.size() != h.dim + 1) throw DimensionError("hpoly json: row width != dim + 1");
    QVector coeffs;
    for (std::size_t k = 0; k + 1 < row.size(); ++k)
      coeffs.push_back(parse_rational(row[k].get<std::string>()));
    h.add(std::move(coeffs), parse_rational(row[row.size() - 1].get<std::string>()));
  }
  return h;
}

inline Json to_json(const PolyRelation& p) {
  Json j = to_json(p.body);
  j = Json{{"left", p.left}, {"right", p.right}, {"dim", j["dim"]}, {"ineqs", j["ineqs"]}};
  return j;
}

inline PolyRelation relation_from_json(const Json& j) {
  return PolyRelation(j.at("left").get<std::size_t>(), j.at("right").get<std::size_t>(),
                      hpoly_from_json(j));
}

inline Json to_json(const VRep& v) {
  auto vecs = [](const std::vector<QVector>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(to_json(x));
    return a;
  };
  return Json{{"dim", v.dim},
              {"vertices", vecs(v.vertices)},
              {"rays", vecs(v.rays)},
              {"lines", vecs(v.lines)}};
}

inline VRep vrep_from_json(const Json& j) {
  VRep v;
  v.dim = j.at("dim").get<std::size_t>();
  for (const auto& x : j.at("vertices")) v.vertices.push_back(qvector_from_json(x));
  for (const auto& x : j.at("rays")) v.rays.push_back(qvector_from_json(x));
  for (const auto& x : j.at("lines")) v.lines.push_back(qvector_from_json(x));
  return v;
}

inline Json to_json(const StatefulProcess& p) {
  return Json{{"regs", p.regs}, {"n", p.n}, {"m", p.m}, {"rel", to_json(p.rel)}};
}

inline StatefulProcess process_from_json(const Json& j) {
  return StatefulProcess(j.at("regs").get<std::size_t>(), j.at("n").get<std::size_t>(),
                         j.at("m").get<std::size_t>(), relation_from_json(j.at("rel")));
}

inline FlowNetwork flow_from_json(const Json& j) {
  FlowNetwork net;
  for (const auto& n : j.at("nodes")) net.nodes.push_back(n.get<std::string>());
  auto index_of = [&](const std::string& name) {
    auto it = std::find(net.nodes.begin(), net.nodes.end(), name);
    if (it == net.nodes.end()) throw Error("flow json: unknown node '" + name + "'");
    return static_cast<std::size_t>(it - net.nodes.begin());
  };
  net.source = index_of(j.at("source").get<std::string>());
  net.sink = index_of(j.at("sink").get<std::string>());
  for (const auto& e : j.at("edges"))
    net.edges.push_back(FlowEdge{index_of(e.at("from").get<std::string>()),
                                 index_of(e.at("to").get<std::string>()),
                                 parse_rational(e.at("cap").get<std::string>())});
  return net;
}

inline Json to_json(const FlowNetwork& net) {
  Json edges = Json::array();
  for (const auto& e : net.edges)
    edges.push_back(Json{{"from", net.nodes[e.from]},
                         {"to", net.nodes[e.to]},
                         {"cap", to_string(e.cap)}});
  return Json{{"nodes", net.nodes},
              {"source", net.nodes[net.source]},
              {"sink", net.nodes[net.sink]},
              {"edges", std::move(edges)}};
}

inline PetriNet petri_from_json(const Json& j) {
  PetriNet net;
  net.places = j.at("places").get<std::size_t>();
  net.transitions = j.at("transitions").get<std::size_t>();
  auto matrix = [&](const Json& rows) {
    QMatrix m(net.places, net.transitions);
    if (rows.size() != net.places) throw DimensionError("petri json: matrix row count");
    for (std::size_t i = 0; i < net.places; ++i) {
      if (rows[i].size() != net.transitions)
        throw DimensionError("petri json: matrix column count");
      for (std::size_t k = 0; k < net.transitions; ++k)
        m.at(i, k) = parse_rational(rows[i][k].get<std::string>());
    }
    return m;
  };
  net.pre = matrix(j.at("pre"));
  net.post = matrix(j.at("post"));
  for (const auto& b : j.at("bounds")) {
    std::string s = b.get<std::string>();
    if (s == "inf")
      net.bounds.push_back(std::nullopt);
    else
      net.bounds.push_back(parse_rational(s));
  }
  if (net.bounds.size() != net.places) throw DimensionError("petri json: bounds count");
  return net;
}

inline Json to_json(const PetriNet& net) {
  auto matrix = [&](const QMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < m.cols; ++k) row.push_back(to_string(m.at(i, k)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  Json bounds = Json::array();
  for (const auto& b : net.bounds) bounds.push_back(b ? to_string(*b) : "inf");
  return Json{{"places", net.places},
              {"transitions", net.transitions},
              {"pre", matrix(net.pre)},
              {"post", matrix(net.post)},
              {"bounds", std::move(bounds)}};
}

}  // namespace polyrel
