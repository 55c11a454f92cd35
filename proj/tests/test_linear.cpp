#include "doctest.h"

#include "lfc/linear_avoider.hpp"

using namespace lfc;

namespace {

std::vector<Element> ints(const Field& field, std::vector<long long> xs) {
  std::vector<Element> out;
  for (long long x : xs) out.push_back(field.from_int(x));
  return out;
}

}  // namespace

TEST_CASE("alpha validation") {
  Field z5 = Field::padic(5, 24);
  CHECK(check_alpha(ints(z5, {1, -2, 1})).ok);
  CHECK_FALSE(check_alpha(ints(z5, {1, 1, 1})).ok);
  CHECK_FALSE(check_alpha(ints(z5, {1, -1, 1, -1})).ok);
  CHECK_FALSE(check_alpha(ints(z5, {1})).ok);
  CHECK_THROWS_AS(make_linear_spec(z5, ints(z5, {1, -1, 1, -1}), 1), Error);
}

TEST_CASE("constants for alpha = (1, -2, 1) in Z_5") {
  Field z5 = Field::padic(5, 54);
  auto spec = make_linear_spec(z5, ints(z5, {1, -2, 1}), 1);
  // One constant per proper nonempty subset; every complement sum is a unit.
  REQUIRE(spec.c1.size() == 6);
  for (int c : spec.c1) CHECK(c == 1);
  CHECK(spec.c_star == 7);
  CHECK(simul_min_lambda0(z5, spec) == 22);
  CHECK_FALSE(simul_feasible(z5, spec, 21));
  CHECK(simul_feasible(z5, spec, 22));
}

TEST_CASE("normalization divides by the smallest valuation") {
  Field z5 = Field::padic(5, 24);
  auto spec = make_linear_spec(z5, ints(z5, {5, -10, 5}), 1);
  CHECK(spec.alpha[0] == z5.one());
  CHECK(spec.c_star == 7);
}

TEST_CASE("pair refinement separates") {
  Field z5 = Field::padic(5, 54);
  auto spec = make_linear_spec(z5, ints(z5, {1, -2, 1}), 1);
  Ball root = ball_of(z5, {z5.zero()}, 22);
  Ball B1 = child_at(z5, root, 23, 0), B2 = child_at(z5, root, 23, 1);
  for (unsigned mask = 1; mask < 7; ++mask) {
    auto r = refine_pair(z5, B1, B2, mask, spec);
    CHECK(r.verified);
    CHECK(ball_contains(z5, B1, r.B1));
    CHECK(ball_contains(z5, B2, r.B2));
  }
  auto all = refine_all_subsets(z5, B1, B2, spec);
  CHECK(all.steps.size() == 6);
  CHECK(ball_contains(z5, B1, all.B1));
  CHECK(ball_contains(z5, B2, all.B2));
}

TEST_CASE("simultaneous tree to depth 3") {
  Field z5 = Field::padic(5, 54);
  auto spec = make_linear_spec(z5, ints(z5, {1, -2, 1}), 1);
  auto tree = build_simul_set(z5, spec, 22, 3);
  REQUIRE(tree.depth() == 3);
  for (std::size_t j = 0; j <= 3; ++j) {
    CHECK(tree.levels[j].size() == (std::size_t{1} << j));
    CHECK(quadratic_dominance(z5, spec, 22, j));
    for (std::size_t i = 1; i < tree.levels[j].size(); ++i)
      CHECK(tree_less(z5, tree.levels[j][i - 1], tree.levels[j][i]));
    if (j == 0) continue;
    for (const auto& b : tree.levels[j]) {
      bool nested = false;
      for (const auto& a : tree.levels[j - 1]) nested = nested || ball_contains(z5, a, b);
      CHECK(nested);
    }
    auto sep = verify_separation(z5, spec, tree, j);
    CHECK(sep.ok);
    CHECK(sep.tuples == (std::uint64_t{1} << (3 * j)) - (std::uint64_t{1} << j));
    CHECK(verify_perturbed(z5, spec, tree, j, square_gap_perturbation()).ok);
  }
}
