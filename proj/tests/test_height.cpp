#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "lfc/ball.hpp"
#include "lfc/height.hpp"

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

}  // namespace

TEST_CASE("height examples") {
  Field z3 = Field::padic(3, 8);
  CHECK(raw_height(z3.zero()) == 0);
  CHECK(raw_height(z3.from_int(5)) == 1);
  CHECK(raw_height(z3.from_int(9)) == 2);
  CHECK_FALSE(height(z3.from_int(-1), 6).has_value());
  Field f2 = Field::power_series(2, 8);
  Element x = f2.one() + f2.uniformizer_power(3);
  CHECK(raw_height(x) == 3);
  CHECK(raw_height(-x) == 3);
}

TEST_CASE("enumeration sizes") {
  CHECK(enumerate_height_leq(Field::padic(3, 8), 1).size() == 9);
  CHECK(enumerate_height_leq(Field::power_series(2, 8), 0).size() == 2);
  CHECK(enumerate_height_leq(ramified_2(), 0).size() == 4);
  CHECK_THROWS_AS(enumerate_height_leq(Field::padic(3, 4), 4), Error);
}

TEST_CASE("lsd comparison") {
  Field z3 = Field::padic(3, 8);
  CHECK(differs_only_in_lsd(z3.from_int(2), z3.from_int(2), 0));
  CHECK_FALSE(differs_only_in_lsd(z3.from_int(2), z3.from_int(5), 1));
  CHECK(differs_only_in_lsd(z3.from_int(1), z3.from_int(4), 2));
}

TEST_CASE("negation representatives") {
  Field z3 = Field::padic(3, 8);
  auto reps = neg_representatives(z3);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0] == z3.zero());
  CHECK(reps[1] == z3.from_int(-1));
  for (const auto& x : enumerate_height_leq(z3, 2)) {
    bool found = false;
    for (const auto& a : reps) found = found || differs_only_in_lsd(-x, a, 2 + 1);
    CHECK(found);
  }
  CHECK(neg_representatives(ramified_2()).size() == 4);
  CHECK_THROWS_AS(neg_representatives(Field::power_series(2, 8)), Error);
}

TEST_CASE("sum and product height bounds") {
  for (auto field : {Field::padic(3, 8), Field::power_series(2, 8), ramified_2()}) {
    const HeightProfile prof = measure_height_profile(field);
    REQUIRE(prof.c_mul.has_value());
    auto elems = enumerate_height_leq(field, 2);
    for (const auto& x : elems)
      for (const auto& y : elems) {
        const int hx = raw_height(x), hy = raw_height(y);
        CHECK(raw_height(x + y) <= std::max(hx, hy) + prof.c_add);
        CHECK(raw_height(x * y) <= hx + hy + *prof.c_mul);
      }
  }
  const HeightProfile f2 = measure_height_profile(Field::power_series(2, 8));
  CHECK(f2.c_add == 0);
  CHECK(f2.c_mul == 0);
}

TEST_CASE("perturbation examples") {
  Field z3 = Field::padic(3, 8);
  CHECK(perturbation_holds(z3.zero(), z3.zero(), z3.from_int(9)));
  CHECK(perturbation_holds(z3.from_int(4), z3.from_int(7), z3.from_int(9)));
  CHECK(perturbation_holds(z3.zero(), z3.from_int(1), z3.from_int(9)));
  // Height 0 and |delta| = q^-1 is not enough: -1 + 3 - 2 = 0.
  CHECK_FALSE(perturbation_holds(z3.from_int(1), z3.from_int(2), z3.from_int(3)));
  CHECK_THROWS_AS(perturbation_holds(z3.one(), z3.one(), z3.zero()), Error);
}

TEST_CASE("difference form holds at |delta| <= q^-e(h+1)") {
  for (auto field : {Field::padic(3, 8), ramified_2()}) {
    const int e = static_cast<int>(field.e());
    for (int h = 0; h <= 2; ++h) {
      auto elems = enumerate_height_leq(field, h);
      std::vector<Element> deltas;
      for (int w = e * (h + 1); w < field.uniformizer_precision(); ++w)
        deltas.push_back(field.uniformizer_power(w));
      for (const auto& x : elems)
        for (const auto& y : elems)
          for (const auto& d : deltas) {
            auto v = valuation(x - y + d);
            CHECK((v && *v <= *valuation(d)));
          }
    }
  }
}

TEST_CASE("ball-height bijection") {
  for (auto field : {Field::padic(3, 8), Field::power_series(2, 8), ramified_2()}) {
    const int e = static_cast<int>(field.e());
    for (int h = 0; h <= 2; ++h) {
      std::map<Element::Coords, int> per_ball;
      for (const auto& x : enumerate_height_leq(field, h)) ++per_ball[field.reduce(x, e * (h + 1)).coords()];
      const std::size_t balls = static_cast<std::size_t>(std::pow(field.q(), e * (h + 1)));
      CHECK(per_ball.size() == balls);
      for (const auto& [k, c] : per_ball) CHECK(c == 1);
    }
  }
}

TEST_CASE("perturbation bound holds one digit further out") {
  for (auto field : {Field::padic(3, 8), ramified_2()}) {
    const int e = static_cast<int>(field.e());
    for (int h = 0; h <= 2; ++h) {
      auto elems = enumerate_height_leq(field, h);
      const Ball zero = ball_of(field, {field.zero()}, e * (h + 2));
      const auto count = child_count(field, 1, e * (h + 2), field.uniformizer_precision());
      for (std::uint64_t i = 1; i < count; ++i) {
        const Element d = child_at(field, zero, field.uniformizer_precision(), i).center[0];
        for (const auto& x : elems)
          for (const auto& y : elems) CHECK(perturbation_holds(x, y, d));
      }
    }
  }
}
