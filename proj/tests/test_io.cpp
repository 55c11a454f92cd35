#include "doctest.h"

#include "lfc/io.hpp"

using namespace lfc;

TEST_CASE("literals") {
  auto a = parse_literal("3,1");
  REQUIRE(a.components.size() == 1);
  CHECK(a.components[0] == std::vector<unsigned>{3, 1});
  CHECK_FALSE(a.negative);
  auto b = parse_literal("-0,1|1");
  CHECK(b.negative);
  CHECK(b.components.size() == 2);
  CHECK_THROWS_AS(parse_literal("1,x"), Error);
}

TEST_CASE("field specs") {
  auto fp = parse_field_spec("# comment\ncharacteristic=zero\np=2\ne=2\neisenstein=-0,1;0\nprecision=8\n");
  CHECK(fp.p == 2);
  CHECK(fp.e == 2);
  CHECK(fp.precision == 8);
  Field k = Field::make(fp);
  CHECK(k.t2() * k.t2() == k.from_int(2));
  CHECK(k.from_literal(fp.eisenstein_coeffs[0]) == k.from_int(-2));

  auto f2 = parse_field_spec("characteristic=finite\np=2\nN=8\n");
  CHECK(f2.characteristic == Characteristic::finite);
  CHECK(f2.precision == 8);
  CHECK_THROWS_AS(parse_field_spec("p=5\nbogus=1\n"), Error);
  CHECK_THROWS_AS(parse_field_spec("p=five\n"), Error);
}

TEST_CASE("polynomial round trip") {
  Field z5 = Field::padic(5, 12);
  const std::string text = "n=1\nv=3\n2 0 0 : 1\n0 1 0 : [3,1]\n0 0 1 : -1\n";
  Polynomial p = parse_polynomial(z5, text);
  CHECK(p.terms().size() == 3);
  Polynomial q = parse_polynomial(z5, format_polynomial(p));
  CHECK(format_polynomial(q) == format_polynomial(p));
  std::vector<Element> pt{z5.from_int(2), z5.from_int(3), z5.from_int(4)};
  CHECK(p.eval(pt) == z5.from_int(4 + 8 * 3 - 4));
  CHECK_THROWS_AS(parse_polynomial(z5, "n=1\nv=2\n1 0 0 : 1\n"), Error);
  CHECK_THROWS_AS(parse_polynomial(z5, "v=2\n1 0 : 1\n"), Error);
}

TEST_CASE("element formatting") {
  Field z5 = Field::padic(5, 8);
  CHECK(format_element(z5.from_int(0)) == "0");
  CHECK(format_element(z5.from_int(16)) == "1,3");
  FieldParams fp;
  fp.p = 2;
  fp.e = 2;
  fp.precision = 4;
  fp.eisenstein_coeffs = {DigitLiteral{{{0, 1}}, true}, DigitLiteral{{{0}}, false}};
  Field k = Field::make(fp);
  CHECK(format_element(k.t2() + k.one()) == "1|1");
}
