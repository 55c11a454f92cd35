#include "lfc/cantor_engine.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace lfc {

namespace {

using CoordKey = std::vector<Element::Coords>;

CoordKey key_of(const std::vector<Element>& xs) {
  CoordKey k;
  k.reserve(xs.size());
  for (const auto& x : xs) k.push_back(x.coords());
  return k;
}

BigInt big_pow(unsigned base, long long exp) {
  BigInt r = 1;
  for (long long i = 0; i < exp; ++i) r *= base;
  return r;
}

// Sub-balls of U covering U minus the holes, coarsest possible, tree order.
void ball_difference(const Field& field, const Ball& U,
                     const std::vector<const Ball*>& holes, BallFamily& out) {
  if (holes.empty()) {
    out.push_back(U);
    return;
  }
  for (const Ball* h : holes)
    if (ball_contains(field, *h, U)) return;
  for (auto& child : subdivide(field, U, U.lambda + 1)) {
    std::vector<const Ball*> inside;
    for (const Ball* h : holes)
      if (ball_contains(field, child, *h) || ball_contains(field, *h, child))
        inside.push_back(h);
    ball_difference(field, child, inside, out);
  }
}

std::string item_string(const QueueItem& it) {
  std::ostringstream os;
  os << "(l=" << it.ell << ",k=" << it.k << ",sigma=[";
  for (std::size_t i = 0; i < it.sigma.size(); ++i) os << (i ? "," : "") << it.sigma[i];
  os << "],j0=" << it.j0 << ")";
  return os.str();
}

long double entry_dimension(const FunctionEntry& f) {
  if (f.kind == FunctionEntry::Kind::polynomial) {
    const unsigned d = std::max(1u, f.poly->degree());
    return static_cast<long double>(f.n()) / d;
  }
  const auto& s = *f.smooth;
  return static_cast<long double>(s.m) / static_cast<long double>(s.n * (s.v - 1));
}

}  // namespace

std::size_t FunctionEntry::v() const {
  return kind == Kind::polynomial ? poly->v() : smooth->v;
}

std::size_t FunctionEntry::n() const {
  return kind == Kind::polynomial ? poly->n() : smooth->n;
}

std::size_t FunctionEntry::r() const {
  return kind == Kind::polynomial ? chain.size() : 1;
}

Polynomial FunctionEntry::derivative(std::size_t k) const {
  if (kind != Kind::polynomial)
    fail(ErrorKind::invalid_argument, "derivative of a smooth entry");
  if (k > chain.size()) fail(ErrorKind::invalid_argument, "derivative order out of range");
  Polynomial out = *poly;
  for (std::size_t i = 0; i < k; ++i) out = out.derivative(chain[i]);
  return out;
}

FunctionEntry polynomial_entry(const Polynomial& p) {
  if (p.is_zero()) fail(ErrorKind::invalid_argument, "zero polynomial in the registry");
  FunctionEntry f;
  f.kind = FunctionEntry::Kind::polynomial;
  f.poly = p;
  const unsigned d = p.degree();
  for (const auto& t : p.terms()) {
    if (std::accumulate(t.exps.begin(), t.exps.end(), 0u) != d) continue;
    for (std::size_t var = t.exps.size(); var-- > 0;)
      for (unsigned c = 0; c < t.exps[var]; ++c) f.chain.push_back(var);
    break;
  }
  Polynomial top = f.derivative(f.chain.size());
  if (top.is_zero() || !top.is_constant())
    fail(ErrorKind::invalid_argument,
         "top derivative of " + p.to_string() + " vanishes in this characteristic");
  return f;
}

FunctionEntry smooth_entry(const SmoothFunctionSpec& s) {
  if (s.v < 2) fail(ErrorKind::invalid_argument, "smooth entry needs v >= 2");
  FunctionEntry f;
  f.kind = FunctionEntry::Kind::smooth;
  f.smooth = s;
  return f;
}

BigInt injection_count(const BigInt& M, std::size_t v) {
  BigInt r = 1;
  for (std::size_t i = 0; i < v; ++i) {
    if (M <= i) return 0;
    r *= M - i;
  }
  return r;
}

std::vector<BigInt> unrank_injection(const BigInt& M, std::size_t v, BigInt rank) {
  if (rank >= injection_count(M, v)) fail(ErrorKind::invalid_argument, "injection rank out of range");
  std::vector<BigInt> out, used;
  for (std::size_t i = 0; i < v; ++i) {
    BigInt rest = injection_count(M - i - 1, v - i - 1);
    BigInt idx = rank / rest;
    rank %= rest;
    BigInt c = idx;
    for (const auto& u : used)  // used is sorted
      if (u <= c) ++c;
    out.push_back(c);
    used.insert(std::upper_bound(used.begin(), used.end(), c), c);
  }
  return out;
}

ConstructionTree::ConstructionTree(const Field& field,
                                   std::vector<FunctionEntry> registry,
                                   Ball root, Schedule schedule)
    : field_(field),
      registry_(std::move(registry)),
      root_(std::move(root)),
      schedule_(schedule),
      profile_(measure_height_profile(field)) {
  if (registry_.empty()) fail(ErrorKind::invalid_argument, "empty function registry");
  for (const auto& f : registry_)
    if (f.n() != root_.dim())
      fail(ErrorKind::invalid_argument, "function dimension differs from the root ball");
  if (schedule_.gap < 1) fail(ErrorKind::invalid_argument, "gap must be positive");
  if (schedule_.lambda0 < root_.lambda)
    fail(ErrorKind::invalid_argument, "lambda_0 below the root radius");
  nodes_.push_back(Node{root_, 0, std::nullopt});
  leaves_.push_back(0);
  lambdas_.push_back(schedule_.lambda0);
  snapshots_.push_back(snapshot());
  if (injection_count(ball_count(0), registry_.front().v()) == 0)
    fail(ErrorKind::infeasible,
         "E_0 has " + ball_count(0).str() + " balls at lambda_0 = " +
             std::to_string(schedule_.lambda0) + ", fewer than v = " +
             std::to_string(registry_.front().v()));
}

int ConstructionTree::round_up_e(int x) const {
  const int e = static_cast<int>(field_.e());
  return (x + e - 1) / e * e;
}

std::vector<Ball> ConstructionTree::leaf_balls() const {
  std::vector<Ball> out;
  out.reserve(leaves_.size());
  for (std::size_t id : leaves_) out.push_back(nodes_[id].ball);
  return out;
}

ConstructionTree::Snapshot ConstructionTree::snapshot() const {
  Snapshot s;
  s.lambda = lambdas_.back();
  s.leaves = leaf_balls();
  BigInt acc = 0;
  for (const auto& b : s.leaves) {
    acc += big_pow(field_.q(), static_cast<long long>(n()) * (s.lambda - b.lambda));
    s.prefix.push_back(acc);
  }
  return s;
}

BigInt ConstructionTree::ball_count(std::size_t j) const {
  const auto& s = snapshots_.at(j);
  return s.prefix.empty() ? BigInt(0) : s.prefix.back();
}

Ball ConstructionTree::ball_at(std::size_t j, const BigInt& index) const {
  const auto& s = snapshots_.at(j);
  if (s.prefix.empty() || index >= s.prefix.back())
    fail(ErrorKind::invalid_argument, "ball index out of range");
  auto it = std::upper_bound(s.prefix.begin(), s.prefix.end(), index);
  const std::size_t i = static_cast<std::size_t>(it - s.prefix.begin());
  BigInt offset = index - (i > 0 ? s.prefix[i - 1] : BigInt(0));
  if (offset > std::numeric_limits<std::uint64_t>::max())
    fail(ErrorKind::infeasible, "ball offset exceeds 64 bits");
  return child_at(field_, s.leaves[i], s.lambda, offset.convert_to<std::uint64_t>());
}

namespace {

BigInt block_size(const ConstructionTree& t, std::size_t b) {
  const BigInt M = t.ball_count(b);
  const std::size_t L = std::min(b + 1, t.registry().size());
  BigInt total = 0;
  for (std::size_t l = 0; l < L; ++l)
    total += injection_count(M, t.registry()[l].v()) * t.registry()[l].r();
  return total;
}

}  // namespace

BigInt ConstructionTree::queue_length(std::size_t j) const {
  BigInt total = 0;
  for (std::size_t b = 0; b <= j; ++b) total += block_size(*this, b);
  return total;
}

QueueItem ConstructionTree::queue_item(const BigInt& pos0) const {
  BigInt pos = pos0;
  for (std::size_t b = 0; b <= stage(); ++b) {
    BigInt size = block_size(*this, b);
    if (pos >= size) {
      pos -= size;
      continue;
    }
    const BigInt M = ball_count(b);
    for (std::size_t l = 0;; ++l) {
      const auto& f = registry_[l];
      BigInt cnt = injection_count(M, f.v()) * f.r();
      if (pos >= cnt) {
        pos -= cnt;
        continue;
      }
      QueueItem item;
      item.ell = l + 1;
      item.j0 = b;
      const std::size_t kidx = static_cast<std::size_t>(pos % f.r());
      item.k = f.r() - 1 - kidx;
      item.sigma = unrank_injection(M, f.v(), pos / f.r());
      return item;
    }
  }
  fail(ErrorKind::infeasible, "queue position beyond the appended blocks");
}

std::vector<std::size_t> ConstructionTree::intersect_ids(const Ball& B, bool& coarse) const {
  coarse = false;
  auto less = [&](std::size_t id, const Ball& b) { return tree_less(field_, nodes_[id].ball, b); };
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), B, less);
  if (it != leaves_.begin()) {
    std::size_t prev = *(it - 1);
    if (ball_contains(field_, nodes_[prev].ball, B)) {
      coarse = true;
      return {prev};
    }
  }
  std::vector<std::size_t> out;
  for (; it != leaves_.end() && ball_contains(field_, B, nodes_[*it].ball); ++it)
    out.push_back(*it);
  return out;
}

BallFamily ConstructionTree::intersect(const Ball& B) const {
  bool coarse = false;
  auto ids = intersect_ids(B, coarse);
  if (coarse) return {B};
  BallFamily out;
  for (std::size_t id : ids) out.push_back(nodes_[id].ball);
  return out;
}

void ConstructionTree::replace_leaves(const std::vector<std::size_t>& old_ids,
                                      const std::vector<std::pair<Ball, std::size_t>>& fresh) {
  std::set<std::size_t> gone(old_ids.begin(), old_ids.end());
  std::vector<std::size_t> next;
  for (std::size_t id : leaves_)
    if (!gone.count(id)) next.push_back(id);
  for (const auto& [ball, parent] : fresh) {
    nodes_.push_back(Node{ball, stage() + 1, parent});
    next.push_back(nodes_.size() - 1);
  }
  std::sort(next.begin(), next.end(), [&](std::size_t a, std::size_t b) {
    return tree_less(field_, nodes_[a].ball, nodes_[b].ball);
  });
  leaves_ = std::move(next);
}

const StageRecord& ConstructionTree::process_next() {
  const std::size_t j = stage() + 1;
  if (BigInt(j - 1) >= queue_length(stage()))
    fail(ErrorKind::infeasible, "queue exhausted at stage " + std::to_string(j));
  StageRecord rec;
  rec.j = j;
  rec.item = queue_item(BigInt(j - 1));
  const FunctionEntry& f = registry_[rec.item.ell - 1];
  const std::size_t v = f.v();
  rec.mu = lambdas_.back();
  rec.nu = round_up_e(rec.mu + schedule_.gap);
  rec.eps = 1.0 / static_cast<double>(j + 1);

  // T_i with the owning leaf of every constituent.
  std::vector<std::vector<std::pair<Ball, std::size_t>>> T(v);
  bool vacuous = false;
  for (std::size_t i = 0; i < v; ++i) {
    Ball B = ball_at(rec.item.j0, rec.item.sigma[i]);
    rec.parents.push_back(B);
    bool coarse = false;
    auto ids = intersect_ids(B, coarse);
    if (ids.empty()) vacuous = true;
    if (coarse)
      T[i].push_back({B, ids[0]});
    else
      for (std::size_t id : ids) T[i].push_back({nodes_[id].ball, id});
  }

  if (vacuous) {
    rec.cert.kind = "vacuous";
    rec.lambda = lambdas_.back();
    rec.target = f.kind == FunctionEntry::Kind::polynomial ? f.derivative(rec.item.k).to_string()
                                                           : f.smooth->name;
    lambdas_.push_back(rec.lambda);
    stages_.push_back(std::move(rec));
    snapshots_.push_back(snapshot());
    return stages_.back();
  }

  const int prec = field_.uniformizer_precision();
  std::vector<BallFamily> S;
  if (f.kind == FunctionEntry::Kind::polynomial) {
    Polynomial target = f.derivative(rec.item.k);
    rec.target = target.to_string();
    const std::size_t pivot = f.chain[rec.item.k];
    std::vector<BallFamily> plain(v);
    for (std::size_t i = 0; i < v; ++i)
      for (const auto& [b, owner] : T[i]) plain[i].push_back(b);
    int A = 0;
    if (rec.item.k + 1 == f.r()) {
      A = derivative_lower_bound(f.derivative(rec.item.k + 1), plain);
    } else {
      const StageRecord* prev = stages_.empty() ? nullptr : &stages_.back();
      if (prev == nullptr || prev->item.ell != rec.item.ell || prev->item.k != rec.item.k + 1 ||
          prev->item.sigma != rec.item.sigma || prev->item.j0 != rec.item.j0 ||
          prev->cert.kind != "poly")
        fail(ErrorKind::verification_failed,
             "derivative bound for " + item_string(rec.item) + " is not the previous certificate");
      A = prev->cert.lower_bound_exp;
    }
    std::vector<BallFamily> cells(v);
    for (std::size_t i = 0; i < v; ++i)
      for (const auto& b : plain[i]) {
        const int nu_b = round_up_e(b.lambda + schedule_.gap);
        if (nu_b > prec)
          fail(ErrorKind::precision_exhausted,
               "cell radius exponent " + std::to_string(nu_b) + " beyond precision");
        auto sub = subdivide(field_, b, nu_b);
        cells[i].insert(cells[i].end(), sub.begin(), sub.end());
      }
    AvoidResult res = avoid_cells(target, pivot, A, cells, profile_);
    res.cert.mu = rec.mu;
    S = std::move(res.S);
    rec.cert = res.cert;
  } else {
    const auto& spec = *f.smooth;
    rec.target = spec.name;
    int mu = 0;
    for (const auto& fam : T)
      for (const auto& [b, owner] : fam) mu = std::max(mu, b.lambda);
    const int nu = round_up_e(mu + schedule_.gap);
    if (nu > prec) fail(ErrorKind::precision_exhausted, "smooth cell radius beyond precision");
    std::vector<BallFamily> fams(v);
    for (std::size_t i = 0; i < v; ++i)
      for (const auto& [b, owner] : T[i]) {
        auto sub = subdivide(field_, b, mu);
        fams[i].insert(fams[i].end(), sub.begin(), sub.end());
      }
    auto res = avoid_single_scale_smooth(field_, fams, spec, mu, nu);
    S = std::move(res.S);
    rec.cert = res.cert;
    rec.checks = std::move(res.checks);
    rec.zero_boxes = res.zero_box_count;
  }

  // Owners: leaves to drop, and coarse leaves to split around their holes.
  std::vector<std::size_t> old_ids;
  std::map<std::size_t, std::vector<const Ball*>> holes;
  for (const auto& fam : T)
    for (const auto& [b, owner] : fam) {
      old_ids.push_back(owner);
      if (!(nodes_[owner].ball == b)) holes[owner].push_back(&b);
    }
  std::vector<std::pair<Ball, std::size_t>> fresh;
  for (const auto& [owner, hs] : holes) {
    BallFamily rest;
    ball_difference(field_, nodes_[owner].ball, hs, rest);
    for (auto& b : rest) fresh.push_back({std::move(b), owner});
  }
  for (std::size_t i = 0; i < v; ++i) {
    std::map<int, std::map<CoordKey, std::size_t>> by_radius;
    for (const auto& [b, owner] : T[i]) by_radius[b.lambda][key_of(b.center)] = owner;
    for (auto& s : S[i]) {
      std::optional<std::size_t> owner;
      for (const auto& [rho, table] : by_radius) {
        auto it = table.find(key_of(ball_of(field_, s.center, rho).center));
        if (it != table.end()) {
          owner = it->second;
          break;
        }
      }
      if (!owner) fail(ErrorKind::verification_failed, "selected ball lies outside T");
      fresh.push_back({std::move(s), *owner});
    }
  }
  replace_leaves(old_ids, fresh);

  rec.lambda = std::max(lambdas_.back(), rec.cert.lambda);
  const long double D = entry_dimension(f);
  const long double nn = static_cast<long double>(n());
  rec.growth_inequality =
      rec.lambda < rec.nu * (nn / D + rec.eps) - nn * rec.mu;
  lambdas_.push_back(rec.lambda);
  stages_.push_back(std::move(rec));
  snapshots_.push_back(snapshot());
  return stages_.back();
}

void ConstructionTree::run(std::size_t depth) {
  while (stage() < depth) process_next();
}

VerifyReport verify_tree(const ConstructionTree& tree) {
  VerifyReport rep;
  const Field& field = tree.field();
  for (const auto& rec : tree.stages()) {
    if (rec.cert.kind == "vacuous") continue;
    ++rep.certificates;
    const FunctionEntry& f = tree.registry()[rec.item.ell - 1];
    std::vector<BallFamily> F;
    bool empty = false;
    for (const auto& B : rec.parents) {
      F.push_back(tree.intersect(B));
      if (F.back().empty()) empty = true;
    }
    const int L = rec.cert.lower_bound_exp;
    std::ostringstream line;
    line << "stage " << rec.j << " " << item_string(rec.item) << " L=" << L;
    bool ok = true;
    if (empty) {
      line << " tuples=0";
    } else if (f.kind == FunctionEntry::Kind::polynomial) {
      for (const auto& fam : F)
        for (const auto& b : fam)
          if (b.lambda <= L) ok = false;
      auto sw = sweep_centers(f.derivative(rec.item.k), F);
      rep.tuples += sw.tuples;
      if (sw.vanished || sw.max_valuation > L) ok = false;
      line << " tuples=" << sw.tuples << " max_v=" << (sw.vanished ? std::string("inf")
                                                                     : std::to_string(sw.max_valuation));
    } else {
      auto sw = sweep_smooth(field, *f.smooth, F, L);
      rep.tuples += sw.boxes;
      ok = sw.ok;
      line << " boxes=" << sw.boxes << " max_v=" << sw.max_valuation;
    }
    line << (ok ? " ok" : " VIOLATED");
    if (!ok && rep.ok) rep.first_violation = line.str();
    rep.ok = rep.ok && ok;
    rep.lines.push_back(line.str());
  }
  return rep;
}

BigInt minkowski_count(const ConstructionTree& tree, int mu) {
  const Field& field = tree.field();
  BigInt total = 0;
  std::set<CoordKey> fine;
  for (const auto& b : tree.leaf_balls()) {
    if (b.lambda <= mu)
      total += big_pow(field.q(), static_cast<long long>(tree.n()) * (mu - b.lambda));
    else
      fine.insert(key_of(ball_of(field, b.center, mu).center));
  }
  return total + fine.size();
}

namespace {

BigInt descend(const ConstructionTree& tree, const Ball& X, int mu) {
  auto inside = tree.intersect(X);
  if (inside.empty()) return 0;
  if (X.lambda == mu) return 1;
  if (inside.size() == 1 && inside[0].lambda <= X.lambda)
    return big_pow(tree.field().q(), static_cast<long long>(tree.n()) * (mu - X.lambda));
  BigInt total = 0;
  for (const auto& child : subdivide(tree.field(), X, X.lambda + 1))
    total += descend(tree, child, mu);
  return total;
}

}  // namespace

BigInt minkowski_count_descent(const ConstructionTree& tree, int mu) {
  if (tree.leaves().empty()) return 0;
  if (mu <= tree.root().lambda) return 1;
  return descend(tree, tree.root(), mu);
}

long double Contribution::value(unsigned q, long double s) const {
  long double total = 0;
  for (const auto& [rho, count] : by_radius)
    total += count.convert_to<long double>() * std::pow(static_cast<long double>(q), -rho * s);
  return total;
}

bool Contribution::dominated_by(const Contribution& other) const {
  for (const auto& [rho, count] : by_radius) {
    auto it = other.by_radius.find(rho);
    if (count > (it == other.by_radius.end() ? BigInt(0) : it->second)) return false;
  }
  return true;
}

Contribution s_contribution(const Field& field, const BallFamily& covering, const Ball& V) {
  Contribution c;
  for (const auto& U : covering)
    if (ball_contains(field, V, U)) c.by_radius[U.lambda] += 1;
  return c;
}

long double target_dimension(const ConstructionTree& tree) {
  long double D = -1;
  for (const auto& f : tree.registry()) {
    long double d = entry_dimension(f);
    if (D < 0 || d < D) D = d;
  }
  return D;
}

AuditReport audit_s_contribution(const ConstructionTree& tree, std::size_t coverings,
                                 long double s, std::uint64_t seed) {
  AuditReport rep;
  rep.s = s;
  rep.D = target_dimension(tree);
  const Field& field = tree.field();
  const long double q = field.q();
  const std::size_t n = tree.n();
  std::vector<int> scales(tree.lambdas().begin(), tree.lambdas().end());
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  const auto leaves = tree.leaf_balls();
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
  };

  for (std::size_t c = 0; c < coverings; ++c) {
    const std::size_t k = pick(scales.size());
    const int lk = scales[k];
    std::vector<const Ball*> deep;
    for (const auto& b : leaves)
      if (b.lambda >= lk) deep.push_back(&b);
    if (deep.empty()) continue;
    const Ball V = ball_of(field, deep[pick(deep.size())]->center, lk);
    ++rep.coverings;

    // One ancestor per leaf inside V at a random tree scale finer than V
    // (the leaf itself when it is V).
    BallFamily cand;
    for (const auto& leaf : tree.intersect(V)) {
      std::vector<int> radii;
      for (int r : scales)
        if (r > lk && r <= leaf.lambda) radii.push_back(r);
      if (radii.empty() || radii.back() != leaf.lambda) radii.push_back(leaf.lambda);
      cand.push_back(ball_of(field, leaf.center, radii[pick(radii.size())]));
    }
    std::stable_sort(cand.begin(), cand.end(),
                     [](const Ball& a, const Ball& b) { return a.lambda < b.lambda; });
    BallFamily U;
    for (const auto& b : cand) {
      bool nested = false;
      for (const auto& u : U)
        if (ball_contains(field, u, b)) {
          nested = true;
          break;
        }
      if (!nested) U.push_back(b);
    }
    bool valid = true;
    for (std::size_t a = 0; a < U.size() && valid; ++a)
      for (std::size_t b = a + 1; b < U.size(); ++b)
        if (ball_contains(field, U[a], U[b]) || ball_contains(field, U[b], U[a])) {
          valid = false;
          break;
        }
    for (const auto& leaf : tree.intersect(V)) {
      bool covered = false;
      for (const auto& u : U)
        if (ball_contains(field, u, leaf)) covered = true;
      if (!covered) valid = false;
    }
    if (!valid) {
      ++rep.invalid_coverings;
      continue;
    }

    const Contribution cV = s_contribution(field, U, V);
    const long double sV = cV.value(field.q(), s);
    std::ostringstream line;
    line << "V radius=" << lk << " |U|=" << U.size() << " s(V)=" << static_cast<double>(sV);

    // Superadditivity over the next-scale sub-balls.
    if (k + 1 < scales.size()) {
      const int next = scales[k + 1];
      std::set<CoordKey> seen;
      Contribution sum;
      long double sum_value = 0;
      for (const auto& u : U) {
        if (u.lambda < next) continue;
        Ball Vi = ball_of(field, u.center, next);
        if (!seen.insert(key_of(Vi.center)).second) continue;
        auto ci = s_contribution(field, U, Vi);
        for (const auto& [rho, cnt] : ci.by_radius) sum.by_radius[rho] += cnt;
        sum_value += ci.value(field.q(), s);
      }
      if (!sum.dominated_by(cV)) {
        ++rep.superadditivity_failures;
        line << " superadditivity-FAILED";
      }
      (void)sum_value;
    }

    // Dichotomy: volume split between coarse and fine covering balls.
    const int next = k + 1 < scales.size() ? scales[k + 1] : INT_MAX;
    int deepest = lk;
    for (const auto& u : U) deepest = std::max(deepest, u.lambda);
    BigInt coarse = 0, fine = 0;
    std::size_t fine_balls = 0;
    std::set<CoordKey> fine_cells;
    for (const auto& u : U) {
      BigInt vol = big_pow(field.q(), static_cast<long long>(n) * (deepest - u.lambda));
      if (u.lambda < next) {
        coarse += vol;
      } else {
        fine += vol;
        ++fine_balls;
        fine_cells.insert(key_of(ball_of(field, u.center, next).center));
      }
    }
    const long double quarter = 0.25L * std::pow(q, -static_cast<long double>(lk) * s);
    if (sV >= quarter) ++rep.prop_bound_holds;
    if (coarse > fine) {
      ++rep.part1_cases;
      line << " part=1";
      if (!(sV >= quarter)) {
        ++rep.dichotomy_failures;
        line << " dichotomy-FAILED";
      }
    } else {
      ++rep.part2_cases;
      line << " part=2";
      const int prev = k > 0 ? scales[k - 1] : 0;
      const long double need = std::pow(q, static_cast<long double>(prev - lk) * s);
      if (!(static_cast<long double>(fine_cells.size()) >= need)) {
        ++rep.dichotomy_failures;
        line << " dichotomy-FAILED";
      }
    }
    (void)fine_balls;
    rep.lines.push_back(line.str());
  }
  return rep;
}

}  // namespace lfc
