#include "lfc/linear_avoider.hpp"

#include <algorithm>
#include <sstream>

#include "tuples.hpp"

namespace lfc {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt big_pow(unsigned base, long long exp) {
  BigInt r = 1;
  for (long long i = 0; i < exp; ++i) r *= base;
  return r;
}

Element dot(const std::vector<Element>& alpha, const std::vector<Element>& x) {
  Element s = alpha[0].integer(0);
  for (std::size_t j = 0; j < alpha.size(); ++j) s += alpha[j] * x[j];
  return s;
}

Element complement_sum(const std::vector<Element>& alpha, unsigned mask) {
  Element s = alpha[0].integer(0);
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (!(mask >> j & 1u)) s += alpha[j];
  return s;
}

std::string mask_string(unsigned mask, std::size_t v) {
  std::string s;
  for (std::size_t j = 0; j < v; ++j) s += (mask >> j & 1u) ? '1' : '0';
  return s;
}

}  // namespace

AlphaCheck check_alpha(const std::vector<Element>& alpha) {
  AlphaCheck out;
  const std::size_t v = alpha.size();
  if (v < 2 || v > 20) {
    out.reason = "alpha must have between 2 and 20 components";
    return out;
  }
  Element total = alpha[0].integer(0);
  for (const auto& a : alpha) total += a;
  if (!total.is_zero()) {
    out.reason = "the components of alpha do not sum to 0";
    return out;
  }
  const unsigned full = (1u << v) - 1;
  for (unsigned u = 1; u < full; ++u) {
    Element s = alpha[0].integer(0);
    for (std::size_t j = 0; j < v; ++j)
      if (u >> j & 1u) s += alpha[j];
    if (s.is_zero()) {
      out.reason = "a proper partial sum of alpha vanishes at working precision, u = " + mask_string(u, v);
      return out;
    }
  }
  out.ok = true;
  return out;
}

LinearFormSpec make_linear_spec(const Field& field, std::vector<Element> alpha,
                                long long C) {
  if (alpha.size() < 3) fail(ErrorKind::invalid_argument, "linear forms need v >= 3");
  if (C < 0) fail(ErrorKind::invalid_argument, "C must be nonnegative");
  auto chk = check_alpha(alpha);
  if (!chk.ok) fail(ErrorKind::infeasible, chk.reason);
  std::size_t lead = 0;
  int best = -1;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    auto w = valuation(alpha[j]);
    if (w && (best < 0 || *w < best)) {
      best = *w;
      lead = j;
    }
  }
  if (best > 0) {
    const Element u = alpha[lead];
    for (auto& a : alpha) a = field.divide(a, u);
  }
  LinearFormSpec spec;
  spec.alpha = std::move(alpha);
  spec.C = C;
  spec.v = spec.alpha.size();
  const unsigned full = (1u << spec.v) - 1;
  spec.c_star = 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    auto w = valuation(complement_sum(spec.alpha, mask));
    if (!w)
      fail(ErrorKind::precision_exhausted,
           "C_1 for subset " + mask_string(mask, spec.v) + " is indeterminate at precision");
    spec.c1.push_back(1 + *w);
    spec.c_star += 1 + *w;
  }
  return spec;
}

PairRefinement refine_pair(const Field& field, const Ball& B1, const Ball& B2,
                           unsigned mask, const LinearFormSpec& spec) {
  const unsigned full = (1u << spec.v) - 1;
  if (mask == 0 || mask >= full) fail(ErrorKind::invalid_argument, "subset must be proper and nonempty");
  if (B1.lambda != B2.lambda || B1.dim() != 1 || B2.dim() != 1)
    fail(ErrorKind::invalid_argument, "pair must be one-dimensional balls of equal radius");
  if (B1 == B2) fail(ErrorKind::invalid_argument, "pair must be disjoint");
  PairRefinement r;
  r.mask = mask;
  r.c1 = spec.c1[mask - 1];
  const int rho = B1.lambda;
  const int fine = rho + r.c1;
  if (fine > field.uniformizer_precision())
    fail(ErrorKind::precision_exhausted, "refined radius beyond precision");
  r.B1 = child_at(field, B1, fine, 0);
  r.B2 = child_at(field, B2, fine, 0);
  auto pattern = [&](const Ball& a, const Ball& b) {
    std::vector<Element> x;
    for (std::size_t j = 0; j < spec.v; ++j) x.push_back((mask >> j & 1u) ? a.center[0] : b.center[0]);
    return dot(spec.alpha, x);
  };
  auto val = valuation(pattern(r.B1, r.B2));
  if (!val || *val >= fine) {
    // alpha.B sits in the ball around 0; shifting B2 by pi^rho moves it by
    // exactly q^-(fine-1).
    r.translated = true;
    std::vector<Element> c{r.B2.center[0] + field.uniformizer_power(rho)};
    r.B2 = ball_of(field, std::move(c), fine);
    val = valuation(pattern(r.B1, r.B2));
  }
  r.verified = val && *val < fine && ball_contains(field, B2, r.B2);
  if (!r.verified)
    fail(ErrorKind::verification_failed,
         "translated pair still meets 0 for subset " + mask_string(mask, spec.v));
  return r;
}

SubsetRefinement refine_all_subsets(const Field& field, const Ball& B1,
                                    const Ball& B2, const LinearFormSpec& spec) {
  SubsetRefinement out;
  out.B1 = B1;
  out.B2 = B2;
  const unsigned full = (1u << spec.v) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    auto step = refine_pair(field, out.B1, out.B2, mask, spec);
    out.B1 = step.B1;
    out.B2 = step.B2;
    out.steps.push_back(std::move(step));
  }
  out.separation_exp = out.B1.lambda - 1;
  return out;
}

bool simul_feasible(const Field& field, const LinearFormSpec& spec, int lambda0) {
  const long long E = static_cast<long long>(lambda0) - 3LL * spec.c_star;
  if (E < 0) return false;
  return BigInt(spec.C) * spec.v < big_pow(field.q(), E);
}

int simul_min_lambda0(const Field& field, const LinearFormSpec& spec) {
  int l = 0;
  while (!simul_feasible(field, spec, l)) ++l;
  return l;
}

SimulTree build_simul_set(const Field& field, const LinearFormSpec& spec,
                          int lambda0, std::size_t depth) {
  if (!simul_feasible(field, spec, lambda0))
    fail(ErrorKind::infeasible,
         "lambda_0 = " + std::to_string(lambda0) + " violates C v q^-lambda0 < (C*)^3; need at least " +
             std::to_string(simul_min_lambda0(field, spec)));
  const long long last = lambda0 + static_cast<long long>(depth) * spec.c_star;
  if (last >= field.uniformizer_precision())
    fail(ErrorKind::precision_exhausted,
         "depth " + std::to_string(depth) + " needs radius exponent " + std::to_string(last) +
             " below precision " + std::to_string(field.uniformizer_precision()));
  if (depth > 20) fail(ErrorKind::infeasible, "depth above 20");
  SimulTree tree;
  tree.lambda0 = lambda0;
  tree.c_star = spec.c_star;
  tree.levels.push_back({ball_of(field, {field.zero()}, lambda0)});
  tree.translations.push_back(0);
  for (std::size_t j = 1; j <= depth; ++j) {
    BallFamily next;
    std::size_t moved = 0;
    for (const auto& B : tree.levels.back()) {
      Ball c1 = child_at(field, B, B.lambda + 1, 0);
      Ball c2 = child_at(field, B, B.lambda + 1, 1);
      auto ref = refine_all_subsets(field, c1, c2, spec);
      for (const auto& s : ref.steps) moved += s.translated;
      next.push_back(ref.B1);
      next.push_back(ref.B2);
    }
    std::sort(next.begin(), next.end(),
              [&](const Ball& a, const Ball& b) { return tree_less(field, a, b); });
    tree.levels.push_back(std::move(next));
    tree.translations.push_back(moved);
  }
  return tree;
}

bool quadratic_dominance(const Field& field, const LinearFormSpec& spec,
                         int lambda0, std::size_t j) {
  // C v < q^(c*(j-2) + lambda0)
  const long long E = static_cast<long long>(spec.c_star) * (static_cast<long long>(j) - 2) + lambda0;
  const BigInt lhs = BigInt(spec.C) * spec.v;
  if (E >= 0) return lhs < big_pow(field.q(), E);
  return lhs * big_pow(field.q(), -E) < 1;
}

namespace {

template <typename Check>
SeparationReport sweep_mixed(const SimulTree& tree, const LinearFormSpec& spec,
                             std::size_t j, Check check) {
  if (j > tree.depth()) fail(ErrorKind::invalid_argument, "level beyond the tree depth");
  SeparationReport rep;
  rep.depth = j;
  const auto& level = tree.levels[j];
  rep.radius_exp = level.front().lambda;
  rep.bound_exp = tree.lambda0 + static_cast<int>(j) * spec.c_star;
  std::vector<std::size_t> sizes(spec.v, level.size());
  std::vector<Element> x(spec.v);
  detail::for_each_tuple(sizes, [&](const std::vector<std::size_t>& idx) {
    if (std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return i == idx[0]; })) return;
    for (std::size_t k = 0; k < spec.v; ++k) x[k] = level[idx[k]].center[0];
    ++rep.tuples;
    auto val = check(x);
    if (val) rep.max_valuation = std::max(rep.max_valuation, *val);
    if (!val || *val > rep.bound_exp) {
      if (rep.ok) {
        std::ostringstream os;
        os << "tuple (";
        for (std::size_t k = 0; k < spec.v; ++k) os << (k ? "," : "") << idx[k];
        os << ") valuation " << (val ? std::to_string(*val) : std::string("inf")) << " > "
           << rep.bound_exp;
        rep.first_violation = os.str();
      }
      rep.ok = false;
    }
  });
  return rep;
}

}  // namespace

SeparationReport verify_separation(const Field&, const LinearFormSpec& spec,
                                   const SimulTree& tree, std::size_t j) {
  return sweep_mixed(tree, spec, j, [&](const std::vector<Element>& x) {
    return valuation(dot(spec.alpha, x));
  });
}

SeparationReport verify_perturbed(const Field&, const LinearFormSpec& spec,
                                  const SimulTree& tree, std::size_t j,
                                  const Perturbation& G) {
  return sweep_mixed(tree, spec, j, [&](const std::vector<Element>& x) {
    return valuation(dot(spec.alpha, x) + G(x));
  });
}

Perturbation square_gap_perturbation() {
  return [](const std::vector<Element>& x) {
    Element d = x[1] - x[0];
    return d * d;
  };
}

}  // namespace lfc
