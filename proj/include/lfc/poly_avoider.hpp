#pragma once

// Single-scale avoidance for a polynomial with a large partial derivative:
// pick one small ball per cell so that |p| stays away from zero on every
// product of chosen balls.

#include <string>
#include <vector>

#include "lfc/ball.hpp"
#include "lfc/height.hpp"
#include "lfc/polynomial.hpp"

namespace lfc {

struct AvoidanceCertificate {
  std::string kind;                  // "poly", "smooth" or "linear"
  std::vector<std::size_t> covered_tuple;
  int lower_bound_exp = 0;           // |f| >= q^-L on S_1 x ... x S_v
  int mu = 0;
  int nu = 0;
  int lambda = 0;
  int h = 0;                         // grid height
  int A = 0;                         // derivative exponent
  int delta_valuation = 0;
  std::size_t pivot = 0;             // variable carrying the perturbation
  int height_bound = 0;              // H = b + d*h + d*C_mul + s*C_add
};

struct AvoidResult {
  std::vector<BallFamily> S;         // one ball per cell, cell order
  AvoidanceCertificate cert;
};

/// Certified A with |dp| >= q^-A on every point of the product of families
/// (indexed by block). Throws infeasible when the bound cannot be certified
/// within the evaluation budget.
int derivative_lower_bound(const Polynomial& dp,
                           const std::vector<BallFamily>& T,
                           std::size_t budget = 2'000'000);

/// Core step on explicit cells (one family of balls per block, radii may
/// differ). Every chosen ball lies inside its cell.
AvoidResult avoid_cells(const Polynomial& p, std::size_t pivot, int A,
                        const std::vector<BallFamily>& cells,
                        const HeightProfile& profile);

/// Each T_i is a union of q^-mu balls; they are cut into q^-nu cells first.
AvoidResult avoid_single_scale(const std::vector<BallFamily>& T,
                               const Polynomial& p, std::size_t pivot, int A,
                               int mu, int nu, const HeightProfile& profile);

/// Evaluates p at every tuple of ball centers (one ball per block) and
/// records the largest valuation seen. Decisive for a bound L whenever every
/// ball is finer than q^-L.
struct SweepResult {
  std::uint64_t tuples = 0;
  bool vanished = false;             // p was 0 at precision somewhere
  int max_valuation = -1;
  std::vector<std::size_t> worst;    // ball indices of the worst tuple
};
SweepResult sweep_centers(const Polynomial& p,
                          const std::vector<BallFamily>& S);

}  // namespace lfc
