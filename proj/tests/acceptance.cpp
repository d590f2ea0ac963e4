// Acceptance suite: each check prints one pass/fail line; the process exits
// nonzero if any fails. Randomness is seeded, so runs are reproducible.

#include <chrono>
#include <iostream>
#include <random>
#include <string>

#include "flow_oracle.hpp"
#include "gen_util.hpp"
#include "polyrel/polyrel.hpp"

using namespace polyrel;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool pass, double seconds, double budget) {
  bool ok = pass && (budget <= 0 || seconds < budget);
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << number << "] " << what;
  std::cout << "  (" << seconds << "s";
  if (budget > 0) std::cout << " / budget " << budget << "s";
  std::cout << ")\n";
  if (!ok) ++failures;
}

template <typename F>
void criterion(int number, const std::string& what, double budget, F&& body) {
  auto t0 = Clock::now();
  bool pass = false;
  try {
    pass = body();
  } catch (const std::exception& e) {
    std::cout << "      exception: " << e.what() << "\n";
    pass = false;
  }
  double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  report(number, what, pass, seconds, budget);
}

HPoly random_system(std::mt19937& rng, std::size_t dim, std::size_t max_rows, bool cone) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<std::size_t> rows(1, max_rows);
  HPoly h(dim);
  std::size_t k = rows(rng);
  for (std::size_t i = 0; i < k; ++i) {
    QVector q(dim);
    for (auto& e : q) e = Rational(coeff(rng));
    h.add(std::move(q), cone ? Rational(0) : Rational(coeff(rng)));
  }
  return h;
}

bool check_axioms() {
  AxiomReport report = axiom_suite();
  for (const auto& r : report.results)
    if (!r.pass) std::cout << "      axiom " << r.name << " failed\n";
  return report.all_pass() && report.results.size() >= 150;
}

bool check_derived_laws() {
  Diagram geq = gen(GenKind::Geq);
  if (!equiv(seq(geq, geq), geq)) return false;
  if (!includes(id(1), geq)) return false;
  Diagram antisym = seq(gen(GenKind::Copy), tensor(geq, leq_wire()), gen(GenKind::CoCopy));
  if (!includes(antisym, id(1))) return false;

  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(0, 9);
  std::uniform_int_distribution<int> den(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Rational k(num(rng), den(rng)), q(num(rng), den(rng)), slack(num(rng), den(rng));
    Rational l = k + q + slack;
    Diagram parallel_pair =
        seq(gen(GenKind::CoAdd), tensor(edge_gadget(k), edge_gadget(q)), gen(GenKind::Add));
    if (!equiv(parallel_pair, edge_gadget(k + q))) return false;
    Diagram wide = seq(tensor(edge_gadget(k), edge_gadget(q)), gen(GenKind::Add));
    if (!equiv(seq(wide, edge_gadget(l)), wide)) return false;
  }
  return true;
}

bool check_fm_oracle() {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> dims(2, 4);
  std::uniform_int_distribution<int> coord(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t dim = dims(rng);
    HPoly h = random_system(rng, dim, 6, false);
    std::uniform_int_distribution<std::size_t> keep_count(1, dim - 1);
    std::size_t kc = keep_count(rng);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < kc; ++j) keep.push_back(j);
    HPoly proj = project(h, keep);
    for (int s = 0; s < 50; ++s) {
      QVector z(kc);
      for (auto& e : z) e = Rational(coord(rng));
      if (contains_point(proj, z) != is_feasible(substitute(h, keep, z))) return false;
    }
  }
  return true;
}

bool check_weyl_minkowski() {
  std::mt19937 rng(13);
  std::uniform_int_distribution<std::size_t> dims(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    HPoly c = random_system(rng, dims(rng), 6, true);
    VRep v = h_to_v(c);
    for (const auto& r : v.rays)
      for (const auto& q : c.ineqs)
        if (dot(q.coeffs, r) < 0) return false;
    for (const auto& l : v.lines)
      for (const auto& q : c.ineqs)
        if (dot(q.coeffs, l) != 0) return false;
    HPoly back = v_to_h(v);
    if (!includes_hp(back, c) || !includes_hp(c, back)) return false;
  }
  return true;
}

bool check_polar() {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    Diagram c = testgen::random_diagram(rng, testgen::Palette::circ_geq(), 5, 3, 5);
    if (!equiv(polar_syntactic(polar_syntactic(c)), c)) return false;
  }
  int antitone = 0;
  while (antitone < 100) {
    Diagram c = testgen::random_diagram(rng, testgen::Palette::circ_geq(), 3, 2, 4);
    Diagram d = testgen::random_diagram(rng, testgen::Palette::circ_geq(), 3, 2, 4);
    Validated vc = validate(c), vd = validate(d);
    if (vc.dom != vd.dom || vc.cod != vd.cod) continue;
    Diagram meet = intersect(c, d);
    if (!includes(meet, c)) return false;
    if (!includes(polar_syntactic(c), polar_syntactic(meet))) return false;
    ++antitone;
  }
  int right_terms = 0;
  while (right_terms < 50) {
    Diagram c = testgen::random_diagram(rng, testgen::Palette::circ_right(), 3, 2, 4);
    if (validate(c).frag != Fragment::CircRight) continue;
    std::uint8_t f = polar_syntactic(c).flags();
    if (f & (Diagram::kRight | Diagram::kGeq | Diagram::kOne | Diagram::kReg)) return false;
    ++right_terms;
  }
  return true;
}

bool check_normal_forms() {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    Diagram c = testgen::random_diagram(rng, testgen::Palette::acirc_geq(), 5, 3, 5);
    if (!equiv(c, poly_nf(c))) return false;
  }
  for (int trial = 0; trial < 100; ++trial) {
    Diagram c = testgen::random_diagram(rng, testgen::Palette::circ_geq(), 5, 3, 5);
    if (!equiv(c, fg_nf(c))) return false;
  }
  return true;
}

bool check_homogenization() {
  std::mt19937 rng(23);
  std::uniform_int_distribution<std::size_t> dims(1, 3);
  int done = 0;
  while (done < 200) {
    std::size_t dim = dims(rng);
    HPoly p1 = random_system(rng, dim, 4, false);
    HPoly p2 = random_system(rng, dim, 4, false);
    if (!is_feasible(p1) || !is_feasible(p2)) continue;
    ++done;
    bool via_homog = includes_hp(p1, p2);
    VRep v = h_to_v(p1);
    bool cert = true;
    // a vertex-free nonempty VRep is a cone and contains the origin
    if (v.vertices.empty() && !v.empty() && !contains_point(p2, QVector(dim, Rational(0))))
      cert = false;
    for (const auto& vert : v.vertices)
      if (!contains_point(p2, vert)) cert = false;
    for (const auto& r : v.rays)
      for (const auto& q : p2.ineqs)
        if (dot(q.coeffs, r) < 0) cert = false;
    for (const auto& l : v.lines)
      for (const auto& q : p2.ineqs)
        if (dot(q.coeffs, l) != 0) cert = false;
    if (via_homog != cert) return false;
  }
  // empty-polyhedron corner cases
  HPoly empty(1);
  empty.add({Rational(1)}, Rational(-1));
  empty.add({Rational(-1)}, Rational(0));
  HPoly any(1);
  any.add({Rational(1)}, Rational(0));
  return includes_hp(empty, any) && !includes_hp(any, empty);
}

bool check_emptiness() {
  if (!is_empty(false_gadget())) return false;
  std::mt19937 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    Diagram d = testgen::random_diagram(rng, testgen::Palette::acirc_geq(), 3);
    if (!is_empty(tensor(false_gadget(), d))) return false;
  }
  return true;
}

bool check_max_flow() {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    FlowNetwork net = testflow::random_layered(rng);
    auto mine = max_flow(net);
    auto oracle = testflow::ford_fulkerson(net);
    if (!mine || !oracle || *mine != *oracle) return false;
  }
  return true;
}

bool check_petri() {
  std::mt19937 rng(37);
  std::uniform_int_distribution<std::size_t> size(1, 3);
  std::uniform_int_distribution<int> entry(0, 2);
  std::uniform_int_distribution<int> num(0, 8);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> pct(0, 99);
  int probes = 0;
  while (probes < 200) {
    PetriNet net;
    net.places = size(rng);
    net.transitions = size(rng);
    net.pre = QMatrix(net.places, net.transitions);
    net.post = QMatrix(net.places, net.transitions);
    for (auto& e : net.pre.entries) e = Rational(entry(rng));
    for (auto& e : net.post.entries) e = Rational(entry(rng));
    for (std::size_t i = 0; i < net.places; ++i) {
      if (pct(rng) < 40)
        net.bounds.push_back(std::nullopt);
      else
        net.bounds.push_back(Rational(entry(rng) + 2));
    }
    StatefulProcess proc = st_eval(encode_petri(net));
    if (proc.regs != net.places) return false;
    auto marking = [&]() {
      QVector y(net.places);
      for (std::size_t i = 0; i < net.places; ++i) {
        Rational v(num(rng), den(rng));
        if (net.bounds[i] && v > *net.bounds[i]) v = *net.bounds[i];
        y[i] = v;
      }
      return y;
    };
    for (int s = 0; s < 10 && probes < 200; ++s, ++probes) {
      QVector y = marking();
      QVector z;
      if (s % 2 == 0) {
        z = marking();
      } else {
        FiringVector t(net.transitions);
        for (auto& e : t) e = Rational(entry(rng), den(rng));
        auto fired = petri_fire(net, y, t);
        z = fired ? *fired : marking();
      }
      if (petri_can_step(net, y, z) != st_transition(proc, Transition{y, {}, z, {}}))
        return false;
    }
  }
  // the half-firing example on the pure consumer
  PetriNet consumer;
  consumer.places = 1;
  consumer.transitions = 1;
  consumer.pre = QMatrix{{Rational(1)}};
  consumer.post = QMatrix{{Rational(0)}};
  consumer.bounds = {std::nullopt};
  if (!petri_can_step(consumer, {Rational(1)}, {Rational(1, 2)})) return false;
  if (!petri_step_via_process(consumer, {Rational(1)}, {Rational(1, 2)})) return false;
  // bounded-place rejection
  PetriNet producer;
  producer.places = 1;
  producer.transitions = 1;
  producer.pre = QMatrix{{Rational(0)}};
  producer.post = QMatrix{{Rational(1)}};
  producer.bounds = {Rational(1)};
  if (petri_can_step(producer, {Rational(1)}, {Rational(2)})) return false;
  if (petri_step_via_process(producer, {Rational(1)}, {Rational(2)})) return false;
  return true;
}

bool check_register_sos() {
  StatefulProcess reg = st_eval(gen(GenKind::Register));
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> which(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    Rational k(num(rng), den(rng)), l(num(rng), den(rng));
    if (!st_transition(reg, Transition{{k}, {l}, {l}, {k}})) return false;
  }
  for (int trial = 0; trial < 100; ++trial) {
    Rational k(num(rng), den(rng)), l(num(rng), den(rng));
    QVector q[4] = {{k}, {l}, {l}, {k}};
    int slot = which(rng);
    q[slot][0] += Rational(1, 5);  // perturb one component off the orbit
    if (st_transition(reg, Transition{q[0], q[1], q[2], q[3]})) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "axiom soundness suite passes completely", 10.0, check_axioms);
  criterion(2, "derived laws: transitivity, reflexivity, antisymmetry, capacity laws", 5.0,
            check_derived_laws);
  criterion(3, "Fourier-Motzkin projection vs pinned feasibility, 200 systems x 50 points", 30.0,
            check_fm_oracle);
  criterion(4, "Weyl-Minkowski round trip and ray soundness on 200 cones", 60.0,
            check_weyl_minkowski);
  criterion(5, "polar involution, antitonicity, fragment swap", 0, check_polar);
  criterion(6, "normal forms preserve semantics on random diagrams", 0, check_normal_forms);
  criterion(7, "homogenized inclusion matches generator certificates", 0, check_homogenization);
  criterion(8, "false gadget is empty and absorbs under tensor", 0, check_emptiness);
  criterion(9, "max flow equals the augmenting-path oracle on 100 networks", 0, check_max_flow);
  criterion(10, "petri step relation matches the encoded process on 200 probes", 0, check_petri);
  criterion(11, "register admits exactly the buffer transitions", 0, check_register_sos);
  if (failures == 0)
    std::cout << "all acceptance criteria pass\n";
  else
    std::cout << failures << " acceptance criteria FAILED\n";
  return failures == 0 ? 0 : 1;
}
