#pragma once

// One entry point per front-end mode. Each returns a deterministic text
// report plus the serialized artifact (when there is one).

#include <cstdint>
#include <string>
#include <vector>

#include "lfc/cantor_engine.hpp"
#include "lfc/linear_avoider.hpp"

namespace lfc {

struct RunReport {
  std::string report;
  std::string artifact;
  bool verified = true;
  std::string first_violation;
  std::string halted;             // precision ran out; the prefix is still certified
};

struct PolyAvoidOptions {
  int mu = 1;
  int nu = 2;
  std::size_t balls_per_set = 1;  // q^-mu balls in each T_i
  bool verify = true;
};
RunReport run_poly_avoid(const Field& field, const Polynomial& p,
                         const PolyAvoidOptions& opt);

struct TreeOptions {
  Schedule schedule;
  std::size_t depth = 3;
  bool verify = true;
  bool minkowski = true;
};
/// Builds the construction tree; smooth-avoid is the same run with a smooth
/// registry and a report of every projection check.
RunReport run_cantor(const Field& field, std::vector<FunctionEntry> registry,
                     const TreeOptions& opt);

struct AuditOptions {
  std::size_t coverings = 100;
  long double s_factor = 0.5;     // s = s_factor * D
  std::uint64_t seed = 1;
};
RunReport run_audit(const Field& field, std::vector<FunctionEntry> registry,
                    const TreeOptions& opt, const AuditOptions& audit);

struct LinearOptions {
  std::vector<long long> alpha;
  long long C = 1;
  int lambda0 = -1;               // -1: smallest feasible
  std::size_t depth = 4;
  bool verify = true;
};
RunReport run_linear_simul(const Field& field, const LinearOptions& opt);

struct BoxCountOptions {
  int mu = 0;
  int lambda = 1;
  bool slabs = false;
};
RunReport run_box_count(const Field& field, const SmoothFunctionSpec& f,
                        const BoxCountOptions& opt);

}  // namespace lfc
