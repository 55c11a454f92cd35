#include "doctest.h"

#include <map>

#include "lfc/io.hpp"
#include "lfc/poly_avoider.hpp"

using namespace lfc;

namespace {

const char* kAp3 = "n=1\nv=3\n1 0 0 : 1\n0 1 0 : -2\n0 0 1 : 1\n";
const char* kSum3 = "n=1\nv=3\n1 0 0 : 1\n0 1 0 : 1\n0 0 1 : 1\n";
const char* kSquare = "n=1\nv=3\n2 0 0 : 1\n0 1 0 : 1\n0 0 1 : -1\n";

std::vector<BallFamily> first_balls(const Field& field, std::size_t v, int mu) {
  std::vector<BallFamily> T(v);
  for (std::size_t i = 0; i < v; ++i) T[i].push_back(child_at(field, unit_ball(field, 1), mu, i));
  return T;
}

}  // namespace

TEST_CASE("evaluation and derivatives") {
  Field z5 = Field::padic(5, 8);
  Polynomial p = parse_polynomial(z5, kSquare);
  CHECK(p.degree() == 2);
  CHECK(p.nvars() == 3);
  std::vector<Element> pt{z5.from_int(3), z5.from_int(4), z5.from_int(6)};
  CHECK(p.eval(pt) == z5.from_int(9 + 4 - 6));
  Polynomial d0 = p.derivative(0);
  CHECK(d0.eval(pt) == z5.from_int(6));
  CHECK(p.derivative(0).derivative(0).is_constant());
  CHECK(p.derivative(1).derivative(1).is_zero());
  CHECK(p.blocks() == std::vector<std::size_t>{0, 1, 2});
  CHECK(p.monomial_count_bound() == 10);
}

TEST_CASE("coefficient heights use the cheaper sign") {
  Field z5 = Field::padic(5, 8);
  Polynomial p = parse_polynomial(z5, kAp3);
  CHECK(p.coeff_height_bound() == 0);
  CHECK(magnitude_height(z5.from_int(-2), 7) == 0);
  CHECK(p.to_string() == "1*x3 + -2*x2 + 1*x1");
}

TEST_CASE("signed parts recombine") {
  Field z3 = Field::padic(3, 8);
  Polynomial p = parse_polynomial(z3, kAp3);
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      std::vector<Element> pt{z3.from_int(a), z3.from_int(b), z3.from_int(a + b)};
      auto [pos, neg] = p.signed_parts(pt);
      CHECK(pos - neg == p.eval(pt));
    }
}

TEST_CASE("polynomial arithmetic") {
  Field z3 = Field::padic(3, 8);
  Polynomial p = parse_polynomial(z3, kSum3);
  Polynomial x1 = variable_like(p, 0);
  Polynomial sq = x1 * x1;
  CHECK(sq.degree() == 2);
  Polynomial diff = p - p;
  CHECK(diff.is_zero());
  std::vector<Element> pt{z3.from_int(2), z3.from_int(1), z3.from_int(1)};
  CHECK((p + constant_like(p, z3.from_int(5))).eval(pt) == z3.from_int(9));
}

TEST_CASE("derivative lower bound") {
  Field z5 = Field::padic(5, 8);
  Polynomial p = parse_polynomial(z5, kSquare);
  auto T = first_balls(z5, 3, 1);
  // d/dx1 = 2 x1 vanishes on the ball around 0.
  CHECK_THROWS_AS(derivative_lower_bound(p.derivative(0), T), Error);
  CHECK(derivative_lower_bound(p.derivative(1), T) == 0);
}

TEST_CASE("single-scale avoidance: sum of three in Z_3") {
  Field z3 = Field::padic(3, 12);
  Polynomial p = parse_polynomial(z3, kSum3);
  const HeightProfile prof = measure_height_profile(z3);
  auto T = first_balls(z3, 3, 1);
  AvoidResult res = avoid_single_scale(T, p, 2, 0, 1, 2, prof);
  REQUIRE(res.S.size() == 3);
  for (const auto& fam : res.S) CHECK(fam.size() == 3);
  auto sw = sweep_centers(p, res.S);
  CHECK_FALSE(sw.vanished);
  CHECK(sw.max_valuation <= res.cert.lower_bound_exp);
  CHECK(sw.tuples == 27);
}

TEST_CASE("single-scale avoidance: x1 - 2x2 + x3 in Z_5") {
  Field z5 = Field::padic(5, 24);
  Polynomial p = parse_polynomial(z5, kAp3);
  const HeightProfile prof = measure_height_profile(z5);
  auto T = first_balls(z5, 3, 1);
  AvoidResult res = avoid_single_scale(T, p, 2, 0, 1, 2, prof);
  for (std::size_t i = 0; i < 3; ++i) {
    std::map<Element::Coords, int> per_cell;
    for (const auto& s : res.S[i]) {
      CHECK(ball_contains(z5, T[i][0], s));
      ++per_cell[z5.reduce(s.center[0], 2).coords()];
    }
    CHECK(per_cell.size() == 5);
    for (const auto& [k, c] : per_cell) CHECK(c == 1);
  }
  for (const auto& fam : res.S)
    for (const auto& b : fam) CHECK(b.lambda > res.cert.lower_bound_exp);
  auto sw = sweep_centers(p, res.S);
  CHECK_FALSE(sw.vanished);
  CHECK(sw.max_valuation <= res.cert.lower_bound_exp);
}

TEST_CASE("avoidance rejects bad inputs") {
  Field z5 = Field::padic(5, 24);
  Polynomial p = parse_polynomial(z5, kAp3);
  const HeightProfile prof = measure_height_profile(z5);
  auto T = first_balls(z5, 3, 1);
  CHECK_THROWS_AS(avoid_single_scale(T, p, 2, 0, 2, 2, prof), Error);
  CHECK_THROWS_AS(avoid_single_scale(T, p, 7, 0, 1, 2, prof), Error);
  Field tiny = Field::padic(5, 3);
  Polynomial q = parse_polynomial(tiny, kAp3);
  auto T2 = first_balls(tiny, 3, 1);
  CHECK_THROWS_AS(avoid_single_scale(T2, q, 2, 0, 1, 2, measure_height_profile(tiny)), Error);
}
