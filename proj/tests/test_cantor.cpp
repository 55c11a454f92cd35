#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "lfc/cantor_engine.hpp"
#include "lfc/io.hpp"

using namespace lfc;

namespace {

const char* kAp3 = "n=1\nv=3\n1 0 0 : 1\n0 1 0 : -2\n0 0 1 : 1\n";
const char* kSquare = "n=1\nv=3\n2 0 0 : 1\n0 1 0 : 1\n0 0 1 : -1\n";

ConstructionTree make_tree(const Field& field, std::vector<const char*> polys, int lambda0 = 1) {
  std::vector<FunctionEntry> reg;
  for (const char* text : polys) reg.push_back(polynomial_entry(parse_polynomial(field, text)));
  Schedule sch;
  sch.lambda0 = lambda0;
  Ball root = unit_ball(field, reg.front().n());
  return ConstructionTree(field, std::move(reg), root, sch);
}

std::string item_text(const QueueItem& it) {
  std::ostringstream os;
  os << "l=" << it.ell << " k=" << it.k << " j0=" << it.j0 << " sigma=";
  for (std::size_t i = 0; i < it.sigma.size(); ++i) os << (i ? "," : "") << it.sigma[i];
  return os.str();
}

}  // namespace

TEST_CASE("injection unranking is a lexicographic bijection") {
  for (int M = 1; M <= 6; ++M)
    for (std::size_t v = 1; v <= 3; ++v) {
      const BigInt total = injection_count(M, v);
      std::vector<std::vector<BigInt>> seen;
      for (BigInt r = 0; r < total; ++r) {
        auto s = unrank_injection(M, v, r);
        REQUIRE(s.size() == v);
        std::set<BigInt> distinct(s.begin(), s.end());
        CHECK(distinct.size() == v);
        for (const auto& x : s) CHECK(x < M);
        if (!seen.empty()) CHECK(seen.back() < s);
        seen.push_back(s);
      }
      if (static_cast<std::size_t>(M) < v) CHECK(total == 0);
    }
  CHECK(injection_count(5, 3) == 60);
  CHECK(unrank_injection(5, 3, 0) == std::vector<BigInt>{0, 1, 2});
  CHECK(unrank_injection(5, 3, 59) == std::vector<BigInt>{4, 3, 2});
}

TEST_CASE("derivative chain") {
  Field z5 = Field::padic(5, 24);
  auto e = polynomial_entry(parse_polynomial(z5, kSquare));
  CHECK(e.r() == 2);
  CHECK(e.derivative(e.r()).is_constant());
  CHECK_FALSE(e.derivative(e.r()).is_zero());
  Field f2 = Field::power_series(2, 8);
  CHECK_THROWS_AS(polynomial_entry(parse_polynomial(f2, "n=1\nv=2\n2 0 : 1\n0 1 : 1\n")), Error);
}

TEST_CASE("three stages for x1 - 2x2 + x3 in Z_5") {
  Field z5 = Field::padic(5, 24);
  auto tree = make_tree(z5, {kAp3});
  tree.run(3);
  CHECK(tree.lambdas() == std::vector<int>{1, 8, 15, 22});
  for (const auto& st : tree.stages()) CHECK(st.cert.kind == "poly");
  auto rep = verify_tree(tree);
  CHECK(rep.ok);
  CHECK(rep.certificates == 3);

  // Leaves are disjoint and in tree order; ball_at unranks in tree order.
  const auto balls = tree.leaf_balls();
  for (std::size_t i = 1; i < balls.size(); ++i) {
    CHECK(tree_less(z5, balls[i - 1], balls[i]));
    CHECK_FALSE(ball_contains(z5, balls[i - 1], balls[i]));
  }
  for (std::size_t j = 0; j <= 3; ++j) {
    const BigInt M = tree.ball_count(j);
    std::vector<Ball> picks;
    for (const BigInt& idx : std::vector<BigInt>{0, M / 2, M - 1}) {
      picks.push_back(tree.ball_at(j, idx));
      CHECK(picks.back().lambda == tree.lambda(j));
    }
    CHECK(tree_less(z5, picks[0], picks[1]));
    CHECK(tree_less(z5, picks[1], picks[2]));
    if (j == 3)
      for (const auto& b : picks) CHECK_FALSE(tree.intersect(b).empty());
  }
  CHECK_THROWS_AS(tree.process_next(), Error);
}

TEST_CASE("Minkowski counts: leaves, descent and brute force agree") {
  Field z5 = Field::padic(5, 24);
  auto tree = make_tree(z5, {kAp3});
  tree.run(2);
  const Ball unit = unit_ball(z5, 1);
  for (int mu = 0; mu <= tree.lambdas().back(); ++mu) {
    const BigInt a = minkowski_count(tree, mu);
    CHECK(a == minkowski_count_descent(tree, mu));
    if (mu <= 7) {
      std::uint64_t brute = 0;
      const std::uint64_t total = child_count(z5, 1, 0, mu);
      for (std::uint64_t i = 0; i < total; ++i)
        if (!tree.intersect(child_at(z5, unit, mu, i)).empty()) ++brute;
      CHECK(a == BigInt(brute));
    }
  }
}

TEST_CASE("s-contribution audit") {
  Field z5 = Field::padic(5, 24);
  auto tree = make_tree(z5, {kAp3});
  tree.run(3);
  CHECK(target_dimension(tree) == doctest::Approx(1.0));
  auto rep = audit_s_contribution(tree, 50, 0.5L, 9);
  CHECK(rep.coverings == 50);
  CHECK(rep.ok());
  CHECK(rep.part1_cases + rep.part2_cases == 50);
}

TEST_CASE("golden queue trace for two functions") {
  Field z5 = Field::padic(5, 32);
  auto tree = make_tree(z5, {kAp3, kSquare});
  tree.run(4);
  std::ostringstream os;
  for (const auto& st : tree.stages())
    os << "stage " << st.j << " " << item_text(st.item) << " lambda=" << st.lambda << " kind=" << st.cert.kind
       << "\n";
  for (std::size_t j = 0; j <= tree.stage(); ++j)
    os << "M_" << j << "=" << tree.ball_count(j) << " queue_length=" << tree.queue_length(j) << "\n";
  const BigInt block0 = tree.queue_length(0);
  const BigInt f1 = injection_count(tree.ball_count(1), 3);
  for (const BigInt& pos : std::vector<BigInt>{0, 1, 59, block0, block0 + 1, block0 + f1 - 1, block0 + f1,
                                               block0 + f1 + 1, block0 + f1 + 2})
    os << "item " << pos << " " << item_text(tree.queue_item(pos)) << "\n";

  const std::string path = std::string(LFC_TEST_DATA) + "/queue_trace.golden";
  if (std::getenv("LFC_UPDATE_GOLDEN")) {
    std::ofstream(path) << os.str();
  }
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(golden.str() == os.str());
}
