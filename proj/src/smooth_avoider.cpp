#include "lfc/smooth_avoider.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>
#include <sstream>

#include "tuples.hpp"

namespace lfc {

namespace {

using CoordKey = std::vector<Element::Coords>;

CoordKey key_of(std::span<const Element> xs) {
  CoordKey k;
  k.reserve(xs.size());
  for (const auto& x : xs) k.push_back(x.coords());
  return k;
}

// min_k v(f_k), nullopt when every component vanishes at precision.
std::optional<int> norm_valuation(const std::vector<Element>& vals) {
  std::optional<int> best;
  for (const auto& y : vals) {
    auto v = valuation(y);
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

BigInt big_pow(unsigned long long base, long long exp) {
  BigInt r = 1;
  for (long long i = 0; i < exp; ++i) r *= base;
  return r;
}

// count * q^max(0,-E) <= mult * q^max(0,E)
bool le_scaled(const BigInt& count, const BigInt& mult, unsigned q, long long E) {
  if (E >= 0) return count <= mult * big_pow(q, E);
  return count * big_pow(q, -E) <= mult;
}

BigInt two_pow(std::size_t m) { return BigInt(1) << static_cast<unsigned>(m); }

Polynomial determinant(const std::vector<std::vector<Polynomial>>& M) {
  const std::size_t m = M.size();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial total = constant_like(M[0][0], M[0][0].field().zero());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Polynomial prod = constant_like(M[0][0], M[0][0].field().one());
    for (std::size_t i = 0; i < m; ++i) prod = prod * M[i][perm[i]];
    total = inversions % 2 == 0 ? total + prod : total - prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

template <typename Visit>
void visit_zero_boxes(const Field& field, const SmoothFunctionSpec& f,
                      const Ball& B, int lambda, const int thr, Visit& visit) {
  auto val = norm_valuation(f.eval(B.center));
  if (B.lambda == lambda) {
    if (!val || *val >= thr) visit(B);
    return;
  }
  if (val && *val < zero_threshold(f, B.lambda)) return;
  for (const auto& child : subdivide(field, B, B.lambda + 1))
    visit_zero_boxes(field, f, child, lambda, thr, visit);
}

void check_shape(const SmoothFunctionSpec& f, const Ball& T) {
  if (T.dim() != f.n * f.v)
    fail(ErrorKind::invalid_argument, "ball dimension differs from n*v");
}

}  // namespace

SmoothFunctionSpec smooth_from_polynomials(std::string name,
                                           std::vector<Polynomial> components) {
  if (components.empty())
    fail(ErrorKind::invalid_argument, "smooth map needs at least one component");
  const auto& first = components.front();
  const Field field = first.field();
  SmoothFunctionSpec f;
  f.name = std::move(name);
  f.m = components.size();
  f.n = first.n();
  f.v = first.v();
  const std::size_t nv = f.n * f.v;
  if (f.m > nv) fail(ErrorKind::invalid_argument, "m exceeds the number of variables");

  std::optional<int> c1;
  std::optional<int> c2;
  for (const auto& comp : components) {
    if (comp.n() != f.n || comp.v() != f.v)
      fail(ErrorKind::invalid_argument, "components have different shapes");
    for (const auto& t : comp.terms()) {
      auto v = valuation(t.coef);
      if (!v) continue;
      unsigned deg = std::accumulate(t.exps.begin(), t.exps.end(), 0u);
      if (deg >= 2 && (!c2 || *v < *c2)) c2 = *v;
    }
    for (std::size_t k = 0; k < nv; ++k)
      for (const auto& t : comp.derivative(k).terms()) {
        auto v = valuation(t.coef);
        if (v && (!c1 || *v < *c1)) c1 = *v;
      }
  }
  if (!c1) fail(ErrorKind::invalid_argument, "derivative vanishes identically");
  f.c1 = *c1;
  f.c2 = c2;

  // Best m x m minor over the unit ball.
  std::vector<BallFamily> unit(f.v, BallFamily{unit_ball(field, f.n)});
  std::vector<bool> choose(nv, false);
  std::fill(choose.begin(), choose.begin() + static_cast<long>(f.m), true);
  std::optional<int> best;
  do {
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < nv; ++k)
      if (choose[k]) cols.push_back(k);
    std::vector<std::vector<Polynomial>> M;
    for (const auto& comp : components) {
      std::vector<Polynomial> row;
      for (std::size_t c : cols) row.push_back(comp.derivative(c));
      M.push_back(std::move(row));
    }
    Polynomial det = determinant(M);
    try {
      int a = derivative_lower_bound(det, unit, 200'000);
      if (!best || a < *best) {
        best = a;
        f.minor_columns = cols;
      }
    } catch (const Error&) {
      // this minor degenerates somewhere on the unit ball
    }
  } while (std::prev_permutation(choose.begin(), choose.end()));
  if (!best)
    fail(ErrorKind::invalid_argument, "no minor of Df is bounded away from zero");
  f.c0 = *best;

  f.components = components;
  auto comps = std::make_shared<std::vector<Polynomial>>(std::move(components));
  f.eval = [comps](std::span<const Element> x) {
    std::vector<Element> out;
    out.reserve(comps->size());
    for (const auto& c : *comps) out.push_back(c.eval(x));
    return out;
  };
  return f;
}

SmoothFunctionSpec builtin_smooth(const Field& field, const std::string& name) {
  auto mono = [&](std::vector<unsigned> e, long long c) {
    return Term{std::move(e), field.from_int(c)};
  };
  if (name == "x-minus-y")
    return smooth_from_polynomials(
        name, {Polynomial(field, 1, 2, {mono({1, 0}, 1), mono({0, 1}, -1)})});
  if (name == "x2-minus-y")
    return smooth_from_polynomials(
        name, {Polynomial(field, 1, 2, {mono({2, 0}, 1), mono({0, 1}, -1)})});
  if (name == "ap3")
    return smooth_from_polynomials(
        name, {Polynomial(field, 1, 3,
                          {mono({1, 0, 0}, 1), mono({0, 1, 0}, -2),
                           mono({0, 0, 1}, 1)})});
  if (name == "ap3-quad")
    return smooth_from_polynomials(
        name, {Polynomial(field, 1, 3,
                          {mono({1, 0, 0}, 1), mono({0, 1, 0}, 1),
                           mono({0, 0, 1}, -2), mono({2, 0, 0}, 1),
                           mono({1, 1, 0}, -2), mono({0, 2, 0}, 1)})});
  if (name.rfind("linear:", 0) == 0) {
    std::vector<long long> coefs;
    std::stringstream ss(name.substr(7));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        coefs.push_back(std::stoll(item));
      } catch (const std::exception&) {
        fail(ErrorKind::invalid_argument, "bad linear form coefficient '" + item + "'");
      }
    }
    if (coefs.size() < 2)
      fail(ErrorKind::invalid_argument, "linear form needs at least two coefficients");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < coefs.size(); ++i) {
      std::vector<unsigned> e(coefs.size(), 0);
      e[i] = 1;
      terms.push_back(mono(e, coefs[i]));
    }
    return smooth_from_polynomials(name, {Polynomial(field, 1, coefs.size(), terms)});
  }
  fail(ErrorKind::invalid_argument, "unknown built-in function '" + name + "'");
}

int zero_threshold(const SmoothFunctionSpec& f, int lambda) {
  int thr = f.c1 + lambda;
  if (f.c2) thr = std::min(thr, *f.c2 + 2 * lambda);
  return thr;
}

BallFamily zero_boxes(const Field& field, const SmoothFunctionSpec& f,
                      const Ball& T, int lambda) {
  check_shape(f, T);
  if (lambda < T.lambda) fail(ErrorKind::invalid_argument, "lambda below the ball radius");
  BallFamily out;
  auto visit = [&](const Ball& b) { out.push_back(b); };
  visit_zero_boxes(field, f, T, lambda, zero_threshold(f, lambda), visit);
  return out;
}

std::uint64_t count_zero_boxes(const Field& field, const SmoothFunctionSpec& f,
                               const Ball& T, int lambda) {
  check_shape(f, T);
  if (lambda < T.lambda) fail(ErrorKind::invalid_argument, "lambda below the ball radius");
  std::uint64_t count = 0;
  auto visit = [&](const Ball&) { ++count; };
  visit_zero_boxes(field, f, T, lambda, zero_threshold(f, lambda), visit);
  return count;
}

bool within_box_bound(const Field& field, const SmoothFunctionSpec& f,
                      std::uint64_t count, int mu, int lambda) {
  const long long m = static_cast<long long>(f.m);
  const long long nv = static_cast<long long>(f.n * f.v);
  const long long E = m * (f.c0 - m * f.c1) + nv - mu + lambda * (nv - m);
  return le_scaled(BigInt(count), two_pow(f.m), field.q(), E);
}

std::string box_bound_string(const Field& field, const SmoothFunctionSpec& f,
                             int mu, int lambda) {
  const long long m = static_cast<long long>(f.m);
  const long long nv = static_cast<long long>(f.n * f.v);
  const long long E = m * (f.c0 - m * f.c1) + nv - mu + lambda * (nv - m);
  std::ostringstream os;
  os << "C3*q^(-mu+lambda(nv-m)) = 2^" << m << " * " << field.q() << "^" << E;
  return os.str();
}

SlabReport slab_decomposition(const Field& field, const SmoothFunctionSpec& f,
                              const Ball& T, int lambda) {
  SlabReport rep;
  const std::size_t nv = f.n * f.v;
  std::vector<bool> minor(nv, false);
  for (std::size_t c : f.minor_columns) minor[c] = true;
  std::map<CoordKey, std::uint64_t> per_slab;
  for (const auto& box : zero_boxes(field, f, T, lambda)) {
    CoordKey key;
    for (std::size_t k = 0; k < nv; ++k)
      if (!minor[k]) key.push_back(box.center[k].coords());
    ++per_slab[key];
  }
  rep.slabs_total = child_count(field, nv - f.m, T.lambda, lambda);
  rep.slabs_hit = per_slab.size();
  for (const auto& [key, count] : per_slab)
    rep.max_per_slab = std::max(rep.max_per_slab, count);
  const long long m = static_cast<long long>(f.m);
  rep.within_bound = le_scaled(BigInt(rep.max_per_slab), two_pow(f.m), field.q(),
                               m * (f.c0 - m * f.c1));
  return rep;
}

ProjectResult project_select(const Field& field, const BallFamily& T,
                             std::size_t n, const BallFamily& B, int mu,
                             int nu, int lambda) {
  if (!(mu < nu && nu < lambda))
    fail(ErrorKind::invalid_argument, "projection needs mu < nu < lambda");
  ProjectResult res;
  // cell key -> (child rank -> indices of B above that child)
  std::map<CoordKey, std::map<std::uint64_t, std::vector<std::size_t>>> occupied;
  for (std::size_t i = 0; i < B.size(); ++i) {
    const Ball& b = B[i];
    if (b.lambda != lambda || b.dim() <= n)
      fail(ErrorKind::invalid_argument, "B must hold q^-lambda balls of dimension > n");
    Ball tpart{std::vector<Element>(b.center.begin(), b.center.begin() + n), lambda};
    Ball cell = ball_of(field, tpart.center, nu);
    occupied[key_of(cell.center)][child_index(field, cell, tpart)].push_back(i);
  }
  const std::uint64_t per_cell = child_count(field, n, nu, lambda);
  std::set<CoordKey> prime_keys;
  std::vector<Ball> prime;
  for (const auto& tb : T) {
    if (tb.lambda != mu || tb.dim() != n)
      fail(ErrorKind::invalid_argument, "T must hold n-dimensional q^-mu balls");
    for (auto& cell : subdivide(field, tb, nu)) {
      auto it = occupied.find(key_of(cell.center));
      std::uint64_t pick = 0;
      const std::vector<std::size_t>* above = nullptr;
      if (it != occupied.end()) {
        const auto& occ = it->second;
        if (occ.size() < per_cell) {
          for (const auto& [rank, list] : occ) {
            if (rank != pick) break;
            ++pick;
          }
        } else {
          std::size_t best = SIZE_MAX;
          for (const auto& [rank, list] : occ)
            if (list.size() < best) {
              best = list.size();
              pick = rank;
              above = &list;
            }
        }
      }
      res.S.push_back(child_at(field, cell, lambda, pick));
      if (above != nullptr)
        for (std::size_t i : *above) {
          std::vector<Element> rest(B[i].center.begin() + n, B[i].center.end());
          if (prime_keys.insert(key_of(rest)).second)
            prime.push_back(Ball{std::move(rest), lambda});
        }
      res.cells.push_back(std::move(cell));
    }
  }
  std::sort(prime.begin(), prime.end(),
            [&](const Ball& a, const Ball& b) { return tree_less(field, a, b); });
  res.B_prime = std::move(prime);
  return res;
}

ProjectCheck check_projection(const Field& field, const BallFamily& T,
                              std::size_t n, const BallFamily& B,
                              const ProjectResult& res, int mu, int nu,
                              int lambda) {
  ProjectCheck chk;
  std::ostringstream why;
  // (a) one q^-lambda ball of S in every cell, nothing elsewhere.
  std::map<CoordKey, std::size_t> hits;
  for (const auto& cell : res.cells) hits[key_of(cell.center)] = 0;
  bool a_ok = true;
  for (const auto& s : res.S) {
    if (s.lambda != lambda) a_ok = false;
    auto it = hits.find(key_of(ball_of(field, s.center, nu).center));
    if (it == hits.end())
      a_ok = false;
    else
      ++it->second;
  }
  for (const auto& [key, count] : hits)
    if (count != 1) a_ok = false;
  const long long need_exp = (static_cast<long long>(nu) - 2LL * mu) * static_cast<long long>(n);
  if (need_exp > 0 && BigInt(res.cells.size()) < big_pow(field.q(), need_exp)) a_ok = false;
  std::size_t t_cells = 0;
  for (const auto& tb : T) t_cells += child_count(field, n, tb.lambda, nu);
  if (t_cells != res.cells.size()) a_ok = false;
  chk.a = a_ok;
  if (!a_ok) why << "(a) a cell does not meet S in exactly one ball; ";

  // (b) #B' <= q^(mu(n+1) + nu n - lambda n) #B.
  const long long nn = static_cast<long long>(n);
  const long long E = mu * (nn + 1) + nu * nn - static_cast<long long>(lambda) * nn;
  chk.b = le_scaled(BigInt(res.B_prime.size()), BigInt(B.size()), field.q(), E);
  if (!chk.b) why << "(b) #B' exceeds the cardinality bound; ";

  // (c) (S x T') meets B only inside S x B'.
  std::set<CoordKey> s_keys, prime_keys;
  for (const auto& s : res.S) s_keys.insert(key_of(s.center));
  for (const auto& b : res.B_prime) prime_keys.insert(key_of(b.center));
  chk.c = true;
  for (const auto& b : B) {
    std::span<const Element> tpart(b.center.data(), n);
    std::span<const Element> rest(b.center.data() + n, b.center.size() - n);
    if (s_keys.count(key_of(tpart)) && !prime_keys.count(key_of(rest))) {
      chk.c = false;
      why << "(c) a ball of B over S is missing from B'; ";
      break;
    }
  }
  chk.detail = why.str();
  return chk;
}

namespace {

// Sub-balls of U (all radii <= lambda) covering U minus the given
// q^-lambda balls, coarsest possible, tree order.
void ball_difference(const Field& field, const Ball& U,
                     const std::vector<const Ball*>& holes, int lambda,
                     BallFamily& out) {
  if (holes.empty()) {
    out.push_back(U);
    return;
  }
  if (U.lambda >= lambda) return;
  for (auto& child : subdivide(field, U, U.lambda + 1)) {
    std::vector<const Ball*> inside;
    for (const Ball* h : holes)
      if (ball_contains(field, child, *h)) inside.push_back(h);
    ball_difference(field, child, inside, lambda, out);
  }
}

}  // namespace

SmoothAvoidResult avoid_single_scale_smooth(const Field& field,
                                            const std::vector<BallFamily>& T,
                                            const SmoothFunctionSpec& f,
                                            int mu, int nu) {
  const std::size_t v = f.v, n = f.n, m = f.m;
  if (T.size() != v) fail(ErrorKind::invalid_argument, "one family per argument required");
  if (v < 2) fail(ErrorKind::invalid_argument, "smooth avoidance needs v >= 2");
  if (nu <= mu) fail(ErrorKind::invalid_argument, "nu must exceed mu");
  for (const auto& fam : T)
    for (const auto& b : fam)
      if (b.lambda != mu || b.dim() != n)
        fail(ErrorKind::invalid_argument, "T families must consist of n-dimensional q^-mu balls");

  const long long scaled = static_cast<long long>(n * n * (v - 1)) * nu;
  const int start = std::max<int>(nu + 1, static_cast<int>((scaled + static_cast<long long>(m) - 1) /
                                                              static_cast<long long>(m)) + mu);
  std::vector<std::size_t> sizes;
  for (const auto& fam : T) sizes.push_back(fam.size());

  for (int lambda = start;; ++lambda) {
    if (lambda > field.uniformizer_precision() ||
        zero_threshold(f, lambda) > field.uniformizer_precision())
      fail(ErrorKind::precision_exhausted,
           "smooth avoidance needs radius exponent beyond precision");
    SmoothAvoidResult res;
    BallFamily current;
    detail::for_each_tuple(sizes, [&](const std::vector<std::size_t>& idx) {
      Ball prod;
      prod.lambda = mu;
      for (std::size_t i = 0; i < v; ++i)
        prod.center.insert(prod.center.end(), T[i][idx[i]].center.begin(),
                           T[i][idx[i]].center.end());
      auto boxes = zero_boxes(field, f, prod, lambda);
      current.insert(current.end(), boxes.begin(), boxes.end());
    });
    res.zero_box_count = current.size();
    res.S.resize(v);
    for (std::size_t i = 0; i + 1 < v; ++i) {
      auto pr = project_select(field, T[i], n, current, mu, nu, lambda);
      auto chk = check_projection(field, T[i], n, current, pr, mu, nu, lambda);
      if (!(chk.a && chk.b && chk.c))
        fail(ErrorKind::verification_failed, "projection postcondition failed: " + chk.detail);
      res.checks.push_back(chk);
      res.S[i] = std::move(pr.S);
      current = std::move(pr.B_prime);
    }
    std::map<CoordKey, std::vector<const Ball*>> holes;
    for (const auto& b : current) holes[key_of(ball_of(field, b.center, nu).center)].push_back(&b);
    for (const auto& tb : T[v - 1])
      for (const auto& cell : subdivide(field, tb, nu)) {
        ++res.total_cells;
        auto it = holes.find(key_of(cell.center));
        if (it == holes.end()) {
          res.S[v - 1].push_back(cell);
          continue;
        }
        const std::size_t before = res.S[v - 1].size();
        ball_difference(field, cell, it->second, lambda, res.S[v - 1]);
        if (res.S[v - 1].size() == before) ++res.covered_cells;
      }
    // At most a q^-mu fraction of the cells may be lost.
    if (BigInt(res.covered_cells) * big_pow(field.q(), mu) <= BigInt(res.total_cells)) {
      res.cert.kind = "smooth";
      res.cert.mu = mu;
      res.cert.nu = nu;
      res.cert.lambda = lambda;
      res.cert.lower_bound_exp = zero_threshold(f, lambda) - 1;
      return res;
    }
  }
}

SmoothSweep sweep_smooth(const Field& field, const SmoothFunctionSpec& f,
                         const std::vector<BallFamily>& S, int L) {
  SmoothSweep out;
  if (S.size() != f.v) fail(ErrorKind::invalid_argument, "one family per argument required");
  std::vector<std::size_t> sizes;
  for (const auto& fam : S) sizes.push_back(fam.size());
  std::vector<Ball> box(f.v);
  std::vector<Element> point(f.n * f.v, field.zero());

  std::function<void()> rec = [&]() {
    int rho = INT_MAX;
    std::size_t coarsest = 0;
    for (std::size_t i = 0; i < f.v; ++i) {
      for (std::size_t c = 0; c < f.n; ++c) point[i * f.n + c] = box[i].center[c];
      if (box[i].lambda < rho) {
        rho = box[i].lambda;
        coarsest = i;
      }
    }
    auto val = norm_valuation(f.eval(point));
    if (val && *val < zero_threshold(f, rho)) {
      ++out.boxes;
      out.max_valuation = std::max(out.max_valuation, *val);
      if (*val > L) out.ok = false;
      return;
    }
    if (rho >= field.uniformizer_precision()) {
      ++out.boxes;
      out.ok = false;
      return;
    }
    Ball parent = box[coarsest];
    for (auto& child : subdivide(field, parent, parent.lambda + 1)) {
      box[coarsest] = std::move(child);
      rec();
      if (!out.ok) break;
    }
    box[coarsest] = parent;
  };

  detail::for_each_tuple(sizes, [&](const std::vector<std::size_t>& idx) {
    if (!out.ok) return;
    for (std::size_t i = 0; i < f.v; ++i) box[i] = S[i][idx[i]];
    rec();
  });
  return out;
}

}  // namespace lfc
