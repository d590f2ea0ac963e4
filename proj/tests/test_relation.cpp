#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "polyrel/relation.hpp"

using namespace polyrel;

namespace {

PolyRelation geq_rel() {
  PolyRelation p(1, 1);
  p.body.add({Rational(1), Rational(-1)}, Rational(0));
  return p;
}

PolyRelation scalar_rel(const Rational& k) {
  PolyRelation p(1, 1);
  p.body.add({k, Rational(-1)}, Rational(0));
  p.body.add({-k, Rational(1)}, Rational(0));
  return p;
}

PolyRelation random_relation(std::mt19937& rng, std::size_t left, std::size_t right) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::uniform_int_distribution<std::size_t> rows(1, 4);
  PolyRelation p(left, right);
  std::size_t k = rows(rng);
  for (std::size_t i = 0; i < k; ++i) {
    QVector q(left + right);
    for (auto& e : q) e = Rational(coeff(rng));
    p.body.add(std::move(q), Rational(coeff(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("compose_rel", "[relation]") {
  // geq ; geq is geq again (transitivity)
  PolyRelation gg = compose_rel(geq_rel(), geq_rel());
  CHECK(equivalent_rel(gg, geq_rel()));

  // identity is a two-sided unit
  std::mt19937 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    PolyRelation p = random_relation(rng, 2, 2);
    CHECK(equivalent_rel(compose_rel(p, identity_relation(2)), p));
    CHECK(equivalent_rel(compose_rel(identity_relation(2), p), p));
  }

  // scalar(2) ; geq = {(x, y) | 2x >= y}, checked on a grid
  PolyRelation sg = compose_rel(scalar_rel(Rational(2)), geq_rel());
  for (int x = -4; x <= 4; ++x)
    for (int y = -4; y <= 4; ++y)
      CHECK(contains_point(sg.body, {Rational(x), Rational(y)}) == (2 * x >= y));

  CHECK_THROWS_AS(compose_rel(geq_rel(), identity_relation(2)), DimensionError);
}

TEST_CASE("compose_rel associativity", "[relation]") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    PolyRelation a = random_relation(rng, 1, 2);
    PolyRelation b = random_relation(rng, 2, 2);
    PolyRelation c = random_relation(rng, 2, 1);
    PolyRelation left = compose_rel(compose_rel(a, b), c);
    PolyRelation right = compose_rel(a, compose_rel(b, c));
    CHECK(equivalent_rel(left, right));
  }
}

TEST_CASE("tensor_rel", "[relation]") {
  PolyRelation gg = tensor_rel(geq_rel(), geq_rel());
  CHECK(gg.left == 2);
  CHECK(gg.right == 2);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d)
          CHECK(contains_point(gg.body, {Rational(a), Rational(b), Rational(c), Rational(d)}) ==
                (a >= c && b >= d));

  // unit of the tensor
  std::mt19937 rng(59);
  PolyRelation p = random_relation(rng, 2, 1);
  PolyRelation unit(0, 0);
  CHECK(equivalent_rel(tensor_rel(p, unit), p));
  CHECK(equivalent_rel(tensor_rel(unit, p), p));
}

TEST_CASE("converse_rel", "[relation]") {
  CHECK(equivalent_rel(converse_rel(identity_relation(2)), identity_relation(2)));

  PolyRelation g = converse_rel(geq_rel());
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      CHECK(contains_point(g.body, {Rational(a), Rational(b)}) == (b >= a));

  std::mt19937 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    PolyRelation p = random_relation(rng, 2, 3);
    CHECK(equivalent_rel(converse_rel(converse_rel(p)), p));
  }
}

TEST_CASE("homogenize", "[relation]") {
  PolyRelation p(1, 0);
  p.body.add({Rational(1)}, Rational(-1));  // x >= 1
  PolyRelation h = homogenize(p);
  CHECK(h.right == 1);
  CHECK(h.body.is_cone());
  HPoly expect(2);
  expect.add({Rational(1), Rational(-1)}, Rational(0));
  expect.add({Rational(0), Rational(1)}, Rational(0));
  CHECK(equivalent_hp(h.body, expect));

  // a cone homogenizes to itself plus the free fresh coordinate
  PolyRelation cone(1, 1);
  cone.body.add({Rational(1), Rational(-1)}, Rational(0));
  PolyRelation hc = homogenize(cone);
  for (const auto& row : hc.body.ineqs) CHECK(row.constant == 0);

  // the homogenization of an empty polyhedron confines the fresh variable to 0
  PolyRelation e(1, 0);
  e.body.add({Rational(1)}, Rational(-1));
  e.body.add({Rational(-1)}, Rational(0));
  PolyRelation he = homogenize(e);
  HPoly slice = substitute(he.body, {1}, {Rational(1)});
  CHECK_FALSE(is_feasible(slice));
  CHECK(is_feasible(he.body));
}
