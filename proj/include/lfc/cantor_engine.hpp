#pragma once

// Queue-driven nested construction E_0 > E_1 > ... and its auditors.
//
// E_j is kept as a forest of disjoint leaf balls (radii may differ). The
// family of q^-lambda_j balls whose union is E_j is never materialized; it is
// counted and unranked through the leaves, which are kept in tree order.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lfc/ball.hpp"
#include "lfc/height.hpp"
#include "lfc/poly_avoider.hpp"
#include "lfc/polynomial.hpp"
#include "lfc/smooth_avoider.hpp"

namespace lfc {

using BigInt = boost::multiprecision::cpp_int;

struct FunctionEntry {
  enum class Kind { polynomial, smooth };
  Kind kind = Kind::polynomial;
  std::optional<Polynomial> poly;
  std::optional<SmoothFunctionSpec> smooth;
  /// Variables differentiated by D_1, D_2, ...; D_r f is a nonzero constant.
  std::vector<std::size_t> chain;

  std::size_t v() const;
  std::size_t n() const;
  /// Number of derivative orders queued for this function.
  std::size_t r() const;
  /// D_k f as a polynomial (polynomial entries only).
  Polynomial derivative(std::size_t k) const;
};

/// Chain from the highest-degree term (first in exponent order), last
/// variable differentiated first. Fails when D_r f vanishes (characteristic p).
FunctionEntry polynomial_entry(const Polynomial& p);
FunctionEntry smooth_entry(const SmoothFunctionSpec& f);

struct QueueItem {
  std::size_t ell = 0;        // 1-based function index
  std::size_t k = 0;
  std::vector<BigInt> sigma;  // 0-based indices into the stage-j0 ball list
  std::size_t j0 = 0;
};

struct Node {
  Ball ball;
  std::size_t stage = 0;
  std::optional<std::size_t> parent;
};

struct StageRecord {
  std::size_t j = 0;
  QueueItem item;
  int mu = 0;
  int nu = 0;
  int lambda = 0;
  double eps = 0;
  bool growth_inequality = false;   // lambda_j < nu_j (n/D + eps_j) - n mu_j
  AvoidanceCertificate cert;
  std::vector<Ball> parents;        // B_sigma(i) at stage j0
  std::string target;               // the function avoided
  std::vector<ProjectCheck> checks; // smooth stages: one per projection
  std::uint64_t zero_boxes = 0;
};

struct Schedule {
  int lambda0 = 1;
  int gap = 1;                      // nu = round_up_e(rho + gap) per cell
};

class ConstructionTree {
 public:
  ConstructionTree(const Field& field, std::vector<FunctionEntry> registry,
                   Ball root, Schedule schedule);

  const Field& field() const noexcept { return field_; }
  const std::vector<FunctionEntry>& registry() const noexcept { return registry_; }
  const Schedule& schedule() const noexcept { return schedule_; }
  std::size_t n() const noexcept { return root_.dim(); }
  const Ball& root() const noexcept { return root_; }

  std::size_t stage() const noexcept { return stages_.size(); }
  /// lambda_j for j <= stage().
  int lambda(std::size_t j) const { return lambdas_.at(j); }
  const std::vector<int>& lambdas() const noexcept { return lambdas_; }
  const std::vector<StageRecord>& stages() const noexcept { return stages_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  /// Node ids of the current leaves, tree order.
  const std::vector<std::size_t>& leaves() const noexcept { return leaves_; }
  std::vector<Ball> leaf_balls() const;

  /// M_j = number of q^-lambda_j balls in E_j (j <= stage()).
  BigInt ball_count(std::size_t j) const;
  /// The index-th q^-lambda_j ball of E_j in tree order.
  Ball ball_at(std::size_t j, const BigInt& index) const;

  /// Length of the queue after stage j has been appended.
  BigInt queue_length(std::size_t j) const;
  /// Item at 0-based position pos (must lie in an appended block).
  QueueItem queue_item(const BigInt& pos) const;

  /// Processes the next queue item; returns the new stage record.
  const StageRecord& process_next();
  void run(std::size_t depth);

  /// Leaves of the current tree inside ball B (or B itself when a coarser
  /// leaf contains it); empty when B misses E.
  BallFamily intersect(const Ball& B) const;

 private:
  struct Snapshot {
    std::vector<Ball> leaves;
    std::vector<BigInt> prefix;  // cumulative ball counts at lambda
    int lambda = 0;
  };
  Snapshot snapshot() const;
  /// Leaf node ids inside B, or the single coarser leaf containing B.
  std::vector<std::size_t> intersect_ids(const Ball& B, bool& coarse) const;
  void replace_leaves(const std::vector<std::size_t>& old_ids,
                      const std::vector<std::pair<Ball, std::size_t>>& fresh);
  int round_up_e(int x) const;

  Field field_;
  std::vector<FunctionEntry> registry_;
  Ball root_;
  Schedule schedule_;
  HeightProfile profile_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> leaves_;
  std::vector<int> lambdas_;
  std::vector<Snapshot> snapshots_;
  std::vector<StageRecord> stages_;
};

/// Falling factorial M (M-1) ... (M-v+1): number of injections.
BigInt injection_count(const BigInt& M, std::size_t v);
/// rank-th injection {0..v-1} -> {0..M-1} in lexicographic order.
std::vector<BigInt> unrank_injection(const BigInt& M, std::size_t v,
                                     BigInt rank);

struct VerifyReport {
  std::size_t certificates = 0;
  std::uint64_t tuples = 0;
  bool ok = true;
  std::string first_violation;
  std::vector<std::string> lines;   // one per certificate
};
/// Re-evaluates every stored certificate over the current leaves.
VerifyReport verify_tree(const ConstructionTree& tree);

/// Number of q^-mu balls meeting E, bottom-up from the leaves.
BigInt minkowski_count(const ConstructionTree& tree, int mu);
/// Same count by top-down descent from the root.
BigInt minkowski_count_descent(const ConstructionTree& tree, int mu);

/// Per-radius counts of covering balls; exact s-contribution bookkeeping.
struct Contribution {
  std::map<int, BigInt> by_radius;
  long double value(unsigned q, long double s) const;
  bool dominated_by(const Contribution& other) const;
};

Contribution s_contribution(const Field& field, const BallFamily& covering,
                            const Ball& V);

struct AuditReport {
  std::size_t coverings = 0;
  std::size_t superadditivity_failures = 0;
  std::size_t dichotomy_failures = 0;
  std::size_t invalid_coverings = 0;
  std::size_t part1_cases = 0;
  std::size_t part2_cases = 0;
  std::size_t prop_bound_holds = 0;  // s(V) >= q^-mu s / 4, reported only
  long double s = 0;
  long double D = 0;
  std::vector<std::string> lines;
  bool ok() const {
    return superadditivity_failures == 0 && dichotomy_failures == 0 &&
           invalid_coverings == 0;
  }
};

/// Target dimension D: min over the registry of n/d (polynomials) or
/// m/(n(v-1)) (smooth maps).
long double target_dimension(const ConstructionTree& tree);

/// Random mixed-scale coverings at the tree scales, seeded.
AuditReport audit_s_contribution(const ConstructionTree& tree,
                                 std::size_t coverings, long double s,
                                 std::uint64_t seed);

}  // namespace lfc
