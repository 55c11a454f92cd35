#pragma once

// Simultaneous avoidance for every function whose linearization along the
// diagonal is a fixed alpha: a binary Cantor tree where each ball keeps two
// sub-balls separated for every mixed pattern of arguments.

#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lfc/ball.hpp"

namespace lfc {

struct AlphaCheck {
  bool ok = false;
  std::string reason;
};

/// sum alpha = 0, and no proper nonempty partial sum vanishes. A partial sum
/// that is zero at precision counts as vanishing.
AlphaCheck check_alpha(const std::vector<Element>& alpha);

struct LinearFormSpec {
  std::vector<Element> alpha;   // normalized: integral, one unit component
  long long C = 1;              // |G(x)| <= C sum |x_j - x_1|^2
  std::size_t v = 0;
  /// c1[mask - 1] = 1 + v(sum_{j not in A} alpha_j), A given by mask bits.
  std::vector<int> c1;
  int c_star = 0;               // C* = q^-c_star, c_star = 1 + sum c1
};

/// Validates alpha (v >= 3), normalizes it and derives every c1.
LinearFormSpec make_linear_spec(const Field& field, std::vector<Element> alpha,
                                long long C);

struct PairRefinement {
  Ball B1;
  Ball B2;
  unsigned mask = 0;
  int c1 = 0;
  bool translated = false;
  bool verified = false;        // alpha . B' avoids the ball around 0
};

/// One subset step on disjoint balls of equal radius.
PairRefinement refine_pair(const Field& field, const Ball& B1, const Ball& B2,
                           unsigned mask, const LinearFormSpec& spec);

struct SubsetRefinement {
  Ball B1;
  Ball B2;
  std::vector<PairRefinement> steps;  // binary-counter order of masks
  int separation_exp = 0;             // |alpha.x| >= q^-separation_exp
};

SubsetRefinement refine_all_subsets(const Field& field, const Ball& B1,
                                    const Ball& B2, const LinearFormSpec& spec);

struct SimulTree {
  int lambda0 = 0;
  int c_star = 0;
  std::vector<BallFamily> levels;     // levels[j]: 2^j balls, tree order
  std::vector<std::size_t> translations;  // per level
  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
};

/// C v q^-lambda0 < (C*)^3, compared exactly.
bool simul_feasible(const Field& field, const LinearFormSpec& spec, int lambda0);
/// Smallest lambda0 that is feasible.
int simul_min_lambda0(const Field& field, const LinearFormSpec& spec);

SimulTree build_simul_set(const Field& field, const LinearFormSpec& spec,
                          int lambda0, std::size_t depth);

/// C v (C*)^(2j-2) q^(-2 lambda0) < (C*)^j q^-lambda0, exact.
bool quadratic_dominance(const Field& field, const LinearFormSpec& spec,
                         int lambda0, std::size_t j);

struct SeparationReport {
  std::size_t depth = 0;
  int radius_exp = 0;
  int bound_exp = 0;                  // lambda0 + depth * c_star
  int max_valuation = -1;
  std::uint64_t tuples = 0;
  bool ok = true;
  std::string first_violation;
};

/// Every v-tuple of level-j centers not all in one ball has
/// |alpha.x| >= q^-(lambda0 + j c_star).
SeparationReport verify_separation(const Field& field, const LinearFormSpec& spec,
                                   const SimulTree& tree, std::size_t j);

/// f = alpha.x + G(x) is nonzero at every mixed tuple of level-j centers.
using Perturbation = std::function<Element(const std::vector<Element>&)>;
SeparationReport verify_perturbed(const Field& field, const LinearFormSpec& spec,
                                  const SimulTree& tree, std::size_t j,
                                  const Perturbation& G);

/// (x_2 - x_1)^2.
Perturbation square_gap_perturbation();

}  // namespace lfc
