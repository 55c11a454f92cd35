#include "lfc/poly_avoider.hpp"

#include <algorithm>
#include <functional>

namespace lfc {

namespace {

std::vector<Element> flatten(const Field& field, std::size_t n, std::size_t v,
                             const std::vector<const Ball*>& balls) {
  std::vector<Element> point(n * v, field.zero());
  for (std::size_t i = 0; i < v; ++i)
    if (balls[i] != nullptr)
      for (std::size_t c = 0; c < n; ++c) point[i * n + c] = balls[i]->center[c];
  return point;
}

}  // namespace

int derivative_lower_bound(const Polynomial& dp,
                           const std::vector<BallFamily>& T,
                           std::size_t budget) {
  const Field& field = dp.field();
  if (dp.is_zero())
    fail(ErrorKind::infeasible, "derivative vanishes identically");
  if (dp.is_constant()) {
    auto v = valuation(dp.terms().front().coef);
    if (!v) fail(ErrorKind::infeasible, "derivative vanishes at precision");
    return *v;
  }
  if (T.size() != dp.v())
    fail(ErrorKind::invalid_argument, "one ball family per argument required");
  const auto blocks = dp.blocks();
  const std::size_t n = dp.n();
  std::size_t evals = 0;
  int worst = 0;

  std::function<void(std::vector<Ball>&)> refine = [&](std::vector<Ball>& box) {
    std::vector<const Ball*> per_block(dp.v(), nullptr);
    int lambda_min = field.uniformizer_precision();
    std::size_t coarsest = 0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      per_block[blocks[k]] = &box[k];
      if (box[k].lambda < lambda_min) {
        lambda_min = box[k].lambda;
        coarsest = k;
      }
    }
    if (++evals > budget)
      fail(ErrorKind::infeasible, "derivative bound not certified within budget");
    auto w = dp.eval(flatten(field, n, dp.v(), per_block));
    auto vw = valuation(w);
    if (vw && *vw < lambda_min) {
      worst = std::max(worst, *vw);
      return;
    }
    if (lambda_min + 1 > field.uniformizer_precision())
      fail(ErrorKind::infeasible, "derivative vanishes on the ball product at precision");
    Ball parent = box[coarsest];
    for (auto& child : subdivide(field, parent, parent.lambda + 1)) {
      box[coarsest] = std::move(child);
      refine(box);
    }
    box[coarsest] = parent;
  };

  std::vector<std::size_t> idx(blocks.size(), 0);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    if (T[blocks[k]].empty()) return 0;  // empty product
  while (true) {
    std::vector<Ball> box;
    for (std::size_t k = 0; k < blocks.size(); ++k) box.push_back(T[blocks[k]][idx[k]]);
    refine(box);
    std::size_t k = blocks.size();
    bool done = true;
    while (k > 0) {
      --k;
      if (++idx[k] < T[blocks[k]].size()) {
        done = false;
        break;
      }
      idx[k] = 0;
    }
    if (done) return worst;
  }
}

AvoidResult avoid_cells(const Polynomial& p, std::size_t pivot, int A,
                        const std::vector<BallFamily>& cells,
                        const HeightProfile& profile) {
  const Field& field = p.field();
  if (cells.size() != p.v())
    fail(ErrorKind::invalid_argument, "one cell family per argument required");
  if (pivot >= p.nvars()) fail(ErrorKind::invalid_argument, "pivot out of range");
  if (p.is_zero()) fail(ErrorKind::infeasible, "polynomial is identically zero");
  AvoidResult res;
  res.cert.kind = "poly";
  res.cert.A = A;
  res.cert.pivot = pivot;
  const int e = static_cast<int>(field.e());
  int max_rho = 0;
  for (const auto& fam : cells)
    for (const auto& cell : fam) max_rho = std::max(max_rho, cell.lambda);
  res.cert.nu = max_rho;

  if (p.is_constant()) {
    auto v = valuation(p.terms().front().coef);
    if (!v) fail(ErrorKind::infeasible, "constant polynomial vanishes at precision");
    res.S = cells;
    res.cert.lower_bound_exp = *v;
    res.cert.lambda = max_rho;
    return res;
  }
  if (!profile.c_mul)
    fail(ErrorKind::invalid_argument,
         "field has no finite multiplicative height slack at this precision");

  const int g = std::max(0, (max_rho + e - 1) / e - 1);
  const long long b = p.coeff_height_bound();
  const long long d = p.degree();
  const long long s = static_cast<long long>(p.monomial_count_bound());
  const long long H = b + d * g + d * *profile.c_mul + s * profile.c_add;
  const long long w = std::max<long long>(e * (H + 1), A + 1);
  const long long lambda = A + w + 1;
  if (lambda > field.uniformizer_precision())
    fail(ErrorKind::precision_exhausted,
         "avoidance needs radius exponent " + std::to_string(lambda) +
             " but precision carries " +
             std::to_string(field.uniformizer_precision()));
  const Element delta = field.uniformizer_power(static_cast<int>(w));
  const std::size_t n = p.n();
  const std::size_t pivot_block = pivot / n;
  const std::size_t pivot_coord = pivot % n;

  res.S.resize(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (const auto& cell : cells[i]) {
      std::vector<Element> center = cell.center;
      if (i == pivot_block) center[pivot_coord] += delta;
      res.S[i].push_back(ball_of(field, std::move(center), static_cast<int>(lambda)));
    }
  res.cert.h = g;
  res.cert.height_bound = static_cast<int>(H);
  res.cert.delta_valuation = static_cast<int>(w);
  res.cert.lambda = static_cast<int>(lambda);
  res.cert.lower_bound_exp = static_cast<int>(A + w);
  return res;
}

AvoidResult avoid_single_scale(const std::vector<BallFamily>& T,
                               const Polynomial& p, std::size_t pivot, int A,
                               int mu, int nu, const HeightProfile& profile) {
  const Field& field = p.field();
  if (nu <= mu) fail(ErrorKind::invalid_argument, "nu must exceed mu");
  if (field.characteristic() == Characteristic::zero &&
      nu % static_cast<int>(field.e()) != 0)
    fail(ErrorKind::invalid_argument, "nu must be divisible by e");
  std::vector<BallFamily> cells(T.size());
  for (std::size_t i = 0; i < T.size(); ++i)
    for (const auto& ball : T[i]) {
      if (ball.lambda != mu)
        fail(ErrorKind::invalid_argument, "T families must consist of q^-mu balls");
      auto kids = subdivide(field, ball, nu);
      cells[i].insert(cells[i].end(), kids.begin(), kids.end());
    }
  if (pivot >= p.nvars()) fail(ErrorKind::invalid_argument, "pivot out of range");
  const int certified = derivative_lower_bound(p.derivative(pivot), T);
  if (certified > A)
    fail(ErrorKind::invalid_argument,
         "derivative bound q^-" + std::to_string(A) +
             " does not hold; certified exponent is " + std::to_string(certified));
  AvoidResult res = avoid_cells(p, pivot, A, cells, profile);
  res.cert.mu = mu;
  res.cert.nu = nu;
  return res;
}

SweepResult sweep_centers(const Polynomial& p,
                          const std::vector<BallFamily>& S) {
  SweepResult out;
  if (S.size() != p.v())
    fail(ErrorKind::invalid_argument, "one ball family per argument required");
  for (const auto& fam : S)
    if (fam.empty()) return out;
  const std::size_t n = p.n();
  std::vector<std::size_t> idx(S.size(), 0);
  std::vector<Element> point(p.nvars(), p.field().zero());
  while (true) {
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t c = 0; c < n; ++c) point[i * n + c] = S[i][idx[i]].center[c];
    ++out.tuples;
    auto v = valuation(p.eval(point));
    if (!v) {
      if (!out.vanished) out.worst = idx;
      out.vanished = true;
    } else if (!out.vanished && *v > out.max_valuation) {
      out.max_valuation = *v;
      out.worst = idx;
    }
    std::size_t k = S.size();
    while (true) {
      if (k == 0) return out;
      --k;
      if (++idx[k] < S[k].size()) break;
      idx[k] = 0;
    }
  }
}

}  // namespace lfc
