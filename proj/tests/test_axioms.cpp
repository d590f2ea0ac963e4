#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "polyrel/axioms.hpp"

using namespace polyrel;

TEST_CASE("axiom table parses and expands", "[axioms]") {
  auto entries = axiom_table();
  CHECK(entries.size() > 100);  // scalar families expand over the probe set
  for (const auto& e : entries) {
    Validated l = validate(e.lhs), r = validate(e.rhs);
    CHECK(l.dom == r.dom);
    CHECK(l.cod == r.cod);
  }
  // side conditions filter the probes
  int p5 = 0, p6 = 0, rinv = 0;
  for (const auto& e : entries) {
    if (e.name.rfind("P5[", 0) == 0) ++p5;
    if (e.name.rfind("P6[", 0) == 0) ++p6;
    if (e.name.rfind("r-inv[", 0) == 0) ++rinv;
  }
  CHECK(p5 == 4);   // k in {1/2, 1, 2, 3}
  CHECK(p6 == 2);   // k in {-2, -1}
  CHECK(rinv == 6); // k != 0
}

TEST_CASE("every axiom is sound", "[axioms]") {
  AxiomReport report = axiom_suite();
  for (const auto& r : report.results) {
    INFO(r.name);
    CHECK(r.pass);
  }
  CHECK(report.all_pass());
}

TEST_CASE("named probes from the order fragment", "[axioms]") {
  // P5 at k = 2 and P6 at k = -1
  CHECK(equiv(parse_dsl("scalar(2) ; geq"), parse_dsl("geq ; scalar(2)")));
  CHECK(equiv(parse_dsl("scalar(-1) ; geq"), parse_dsl("leq ; scalar(-1)")));
  // AP1 reads as: the constant one is nonnegative
  CHECK(equiv(parse_dsl("id(0)"), parse_dsl("one ; geq ; cozero")));
}

TEST_CASE("shipped table file matches the embedded one", "[axioms]") {
  std::ifstream in(std::string(POLYREL_SOURCE_DIR) + "/data/axioms.txt");
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == std::string(axiom_table_text()));
}
