#pragma once

// Zero-set box counting, the projection selection and the single-scale
// avoidance step for maps f : R^{nv} -> R^m with a nondegenerate minor.
//
// Bounds are kept as exponents: C_k = q^-c_k. c2 may be absent (C2 = 0).

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lfc/ball.hpp"
#include "lfc/poly_avoider.hpp"
#include "lfc/polynomial.hpp"

namespace lfc {

using BigInt = boost::multiprecision::cpp_int;

struct SmoothFunctionSpec {
  using Eval = std::function<std::vector<Element>(std::span<const Element>)>;

  std::string name;
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t v = 2;
  Eval eval;
  int c0 = 0;                  // some minor has |det| >= q^-c0
  int c1 = 0;                  // derivative entries have |.| <= q^-c1
  std::optional<int> c2;       // Taylor remainder <= q^-c2 |h|^2
  std::vector<std::size_t> minor_columns;
  std::vector<Polynomial> components;  // present when built from polynomials
};

/// Bounds computed from the coefficients; C0 is certified over the unit
/// ball for the best minor found.
SmoothFunctionSpec smooth_from_polynomials(std::string name,
                                           std::vector<Polynomial> components);

/// Named built-ins: x-minus-y, x2-minus-y, ap3 (x1 - 2x2 + x3),
/// ap3-quad (x1 + x2 - 2x3 + (x2 - x1)^2), and "linear:a1,a2,..".
SmoothFunctionSpec builtin_smooth(const Field& field, const std::string& name);

/// Largest valuation that still marks a q^-lambda box as meeting the zero
/// set: a box is counted when min_k v(f_k(center)) >= threshold.
int zero_threshold(const SmoothFunctionSpec& f, int lambda);

/// q^-lambda sub-balls of T (an nv-dimensional ball) whose center passes the
/// threshold, in tree order.
BallFamily zero_boxes(const Field& field, const SmoothFunctionSpec& f,
                      const Ball& T, int lambda);
std::uint64_t count_zero_boxes(const Field& field, const SmoothFunctionSpec& f,
                               const Ball& T, int lambda);

/// count <= C3 q^(-mu + lambda(nv - m)) with C3 = (2 C1 / k0)^m q^(nv) and
/// k0 = C0 C1^-(m-1), compared exactly.
bool within_box_bound(const Field& field, const SmoothFunctionSpec& f,
                      std::uint64_t count, int mu, int lambda);
std::string box_bound_string(const Field& field, const SmoothFunctionSpec& f,
                             int mu, int lambda);

/// Zero boxes per slab (non-minor coordinates fixed mod lambda) and the
/// per-slab bound (2 C1 / k0)^m.
struct SlabReport {
  std::uint64_t slabs_total = 0;
  std::size_t slabs_hit = 0;
  std::uint64_t max_per_slab = 0;
  bool within_bound = true;
};
SlabReport slab_decomposition(const Field& field, const SmoothFunctionSpec& f,
                              const Ball& T, int lambda);

struct ProjectResult {
  BallFamily cells;            // q^-nu cells of T in tree order
  BallFamily S;                // selected q^-lambda ball per cell
  BallFamily B_prime;          // T'-parts of B above S, tree order
};

struct ProjectCheck {
  bool a = false;
  bool b = false;
  bool c = false;
  std::string detail;
};

/// B holds q^-lambda balls of dimension n*r whose first n coordinates lie in
/// T. For every q^-nu cell of T the first lambda-ball (tree order) with the
/// fewest B-balls above it is chosen.
ProjectResult project_select(const Field& field, const BallFamily& T,
                             std::size_t n, const BallFamily& B, int mu,
                             int nu, int lambda);
ProjectCheck check_projection(const Field& field, const BallFamily& T,
                              std::size_t n, const BallFamily& B,
                              const ProjectResult& res, int mu, int nu,
                              int lambda);

struct SmoothAvoidResult {
  std::vector<BallFamily> S;
  AvoidanceCertificate cert;
  std::uint64_t zero_box_count = 0;
  std::vector<ProjectCheck> checks;
  std::size_t covered_cells = 0;   // q^-nu cells of T_v lost entirely
  std::size_t total_cells = 0;
};

/// Each T_i is a union of q^-mu balls. lambda starts from
/// max(nu + 1, ceil(n^2 (v-1) nu / m) + mu) and grows until at most a
/// q^-mu fraction of the cells of T_v is lost.
SmoothAvoidResult avoid_single_scale_smooth(const Field& field,
                                            const std::vector<BallFamily>& T,
                                            const SmoothFunctionSpec& f,
                                            int mu, int nu);

/// Exhaustive check of |f| >= q^-L over all products of balls, refining a
/// ball only while its center value does not yet decide the box.
struct SmoothSweep {
  std::uint64_t boxes = 0;
  bool ok = true;
  int max_valuation = -1;
};
SmoothSweep sweep_smooth(const Field& field, const SmoothFunctionSpec& f,
                         const std::vector<BallFamily>& S, int L);

}  // namespace lfc
