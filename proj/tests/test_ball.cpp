#include "doctest.h"

#include <algorithm>
#include <set>

#include "lfc/ball.hpp"

using namespace lfc;

TEST_CASE("children are distinct, contained and in tree order") {
  FieldParams fp;
  fp.p = 2;
  fp.f = 2;
  fp.residue_poly = {1, 1, 1};
  fp.precision = 6;
  for (auto field : {Field::padic(3, 6), Field::power_series(2, 6), Field::make(fp)}) {
    for (std::size_t n : {1u, 2u}) {
      Ball root = ball_of(field, std::vector<Element>(n, field.from_int(1)), 1);
      auto kids = subdivide(field, root, 3);
      CHECK(kids.size() == child_count(field, n, 1, 3));
      std::set<std::vector<Element::Coords>> seen;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        CHECK(ball_contains(field, root, kids[i]));
        CHECK(child_index(field, root, kids[i]) == i);
        std::vector<Element::Coords> key;
        for (const auto& c : kids[i].center) key.push_back(c.coords());
        seen.insert(key);
        if (i > 0) CHECK(tree_less(field, kids[i - 1], kids[i]));
      }
      CHECK(seen.size() == kids.size());
    }
  }
}

TEST_CASE("descendants of one ball are contiguous in tree order") {
  Field z3 = Field::padic(3, 6);
  Ball unit = unit_ball(z3, 2);
  auto fine = subdivide(z3, unit, 2);
  std::vector<std::size_t> parent;
  for (const auto& b : fine) parent.push_back(child_index(z3, unit, ball_of(z3, b.center, 1)));
  CHECK(std::is_sorted(parent.begin(), parent.end()));
  Ball mid = ball_of(z3, fine[5].center, 1);
  CHECK(tree_less(z3, mid, fine[5]));
  CHECK_FALSE(tree_less(z3, fine[5], mid));
}

TEST_CASE("radius checks") {
  Field z3 = Field::padic(3, 4);
  CHECK_THROWS_AS(ball_of(z3, {z3.one()}, 5), Error);
  CHECK_THROWS_AS(child_count(z3, 1, 2, 1), Error);
  CHECK_THROWS_AS(child_at(z3, unit_ball(z3, 1), 1, 3), Error);
}
