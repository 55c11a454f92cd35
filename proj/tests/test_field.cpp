#include "doctest.h"

#include <random>

#include "lfc/field.hpp"

using namespace lfc;

namespace {

Field ramified_2() {
  FieldParams fp;
  fp.p = 2;
  fp.e = 2;
  fp.precision = 8;
  fp.eisenstein_coeffs = {DigitLiteral{{{0, 1}}, true}, DigitLiteral{{{0}}, false}};
  return Field::make(fp);
}

Field unramified(unsigned p, unsigned f, std::vector<unsigned> residue_poly) {
  FieldParams fp;
  fp.p = p;
  fp.f = f;
  fp.residue_poly = std::move(residue_poly);
  fp.precision = 6;
  return Field::make(fp);
}

}  // namespace

TEST_CASE("ring axioms on random integers") {
  for (auto field : {Field::padic(5, 8), Field::power_series(3, 8), ramified_2()}) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-5000, 5000);
    for (int i = 0; i < 200; ++i) {
      Element a = field.from_int(d(rng)), b = field.from_int(d(rng)), c = field.from_int(d(rng));
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a * (b * c) == (a * b) * c);
      CHECK(a - a == field.zero());
      CHECK(-a + a == field.zero());
    }
  }
}

TEST_CASE("integer embedding and valuation in Z_5") {
  Field z5 = Field::padic(5, 8);
  CHECK(z5.from_int(-1) + z5.one() == z5.zero());
  CHECK(valuation(z5.from_int(50)) == 2);
  CHECK(valuation(z5.from_int(7)) == 0);
  CHECK_FALSE(valuation(z5.zero()).has_value());
  CHECK(z5.from_int(3) * z5.from_int(4) == z5.from_int(12));
  CHECK(z5.reduce(z5.from_int(37), 2) == z5.from_int(12));
}

TEST_CASE("Hensel lift of x^2 + 1 in Z_5") {
  Field z5 = Field::padic(5, 8);
  std::vector<Element> poly{z5.one(), z5.zero(), z5.one()};
  for (long long start : {2, 3}) {
    Element r = hensel_lift(poly, z5.from_int(start), 0);
    CHECK(r * r == z5.from_int(-1));
    CHECK(z5.reduce(r, 1) == z5.from_int(start));
  }
}

TEST_CASE("Teichmuller generator of an unramified extension") {
  Field f9 = unramified(3, 2, {2, 2, 1});  // x^2 + 2x + 2 over F_3
  CHECK(f9.q() == 9);
  Element t = f9.t1();
  CHECK(f9.power(t, 8) == f9.one());
  CHECK_FALSE(f9.power(t, 4) == f9.one());
  CHECK_FALSE(f9.power(t, 2) == f9.one());

  Field f4 = unramified(2, 2, {1, 1, 1});
  CHECK(f4.power(f4.t1(), 3) == f4.one());
  CHECK_FALSE(f4.t1() == f4.one());
}

TEST_CASE("Eisenstein root in Z_2[sqrt 2]") {
  Field k = ramified_2();
  CHECK(k.q() == 2);
  CHECK(k.uniformizer_precision() == 16);
  Element t2 = k.t2();
  CHECK(t2 * t2 == k.from_int(2));
  CHECK(valuation(t2) == 1);
  CHECK(valuation(k.from_int(2)) == 2);
  for (int w = 0; w < 10; ++w) CHECK(valuation(k.uniformizer_power(w)) == w);
}

TEST_CASE("power series over F_2 and F_3") {
  Field f2 = Field::power_series(2, 8);
  Element t = f2.uniformizer_power(1);
  Element x = f2.one() + t;
  CHECK(x * x == f2.one() + t * t);
  CHECK(-x == x);
  CHECK(f2.from_int(2) == f2.zero());

  Field f3 = Field::power_series(3, 8);
  Element y = f3.one() + f3.uniformizer_power(1);
  CHECK(f3.power(y, 3) == f3.one() + f3.uniformizer_power(3));
}

TEST_CASE("exact division") {
  Field z5 = Field::padic(5, 8);
  Element w = z5.from_int(10), y = z5.from_int(5);
  CHECK(y * z5.divide(w, y) == w);
  Field k = ramified_2();
  Element a = k.t2() * k.from_int(3);
  CHECK(k.t2() * k.divide(a, k.t2()) == a);
}

TEST_CASE("invalid parameters are rejected") {
  FieldParams fp;
  fp.p = 4;
  CHECK_THROWS_AS(Field::make(fp), Error);
  fp.p = 2;
  fp.e = 2;
  fp.eisenstein_coeffs = {DigitLiteral{{{1}}, false}, DigitLiteral{{{0}}, false}};
  CHECK_THROWS_AS(Field::make(fp), Error);
}
