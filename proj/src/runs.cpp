#include "lfc/runs.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "lfc/io.hpp"

namespace lfc {

namespace {

using CoordKey = std::vector<Element::Coords>;

CoordKey key_of(const std::vector<Element>& xs) {
  CoordKey k;
  for (const auto& x : xs) k.push_back(x.coords());
  return k;
}

void describe_registry(std::ostringstream& os, const std::vector<FunctionEntry>& reg) {
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const auto& f = reg[i];
    os << "function " << i + 1 << ": ";
    if (f.kind == FunctionEntry::Kind::polynomial)
      os << f.poly->to_string() << " (v=" << f.v() << ", r=" << f.r() << ")\n";
    else
      os << f.smooth->name << " (smooth, m=" << f.smooth->m << ", v=" << f.v() << ", c0=" << f.smooth->c0
         << ", c1=" << f.smooth->c1 << ")\n";
  }
}

}  // namespace

RunReport run_poly_avoid(const Field& field, const Polynomial& p, const PolyAvoidOptions& opt) {
  RunReport out;
  std::ostringstream os;
  const std::size_t n = p.n(), v = p.v();
  const Ball unit = unit_ball(field, n);
  const std::uint64_t available = child_count(field, n, 0, opt.mu);
  if (v * opt.balls_per_set > available)
    fail(ErrorKind::infeasible, "not enough q^-mu balls for disjoint T_1..T_v");
  std::vector<BallFamily> T(v);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t t = 0; t < opt.balls_per_set; ++t)
      T[i].push_back(child_at(field, unit, opt.mu, i * opt.balls_per_set + t));

  // Pivot: the variable whose partial derivative has the best certified bound.
  std::optional<std::size_t> pivot;
  int A = 0;
  for (std::size_t var = 0; var < p.nvars(); ++var) {
    Polynomial d = p.derivative(var);
    if (d.is_zero()) continue;
    try {
      int a = derivative_lower_bound(d, T);
      if (!pivot || a < A) {
        pivot = var;
        A = a;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::infeasible) throw;
    }
  }
  if (!pivot) fail(ErrorKind::infeasible, "no partial derivative is bounded away from 0 on T");
  const HeightProfile profile = measure_height_profile(field);
  AvoidResult res = avoid_single_scale(T, p, *pivot, A, opt.mu, opt.nu, profile);

  os << "mode poly-avoid\nfield " << field.describe() << "\n";
  os << "polynomial " << p.to_string() << "\n";
  os << "mu=" << opt.mu << " nu=" << opt.nu << " pivot=x" << *pivot / n + 1 << " A=" << A << "\n";
  os << "height profile C_add=" << profile.c_add << " C_mul="
     << (profile.c_mul ? std::to_string(*profile.c_mul) : std::string("inf")) << "\n";
  os << "certificate " << format_certificate(res.cert) << "\n";
  os << "nominal radius c*q^-(nu*d) with d=" << p.degree() << "; concrete radius q^-" << res.cert.lambda << "\n";

  std::ostringstream art;
  for (std::size_t i = 0; i < v; ++i) {
    art << "S_" << i + 1 << " " << res.S[i].size() << "\n";
    for (const auto& b : res.S[i]) art << "  " << format_ball(b) << "\n";
  }
  out.artifact = art.str();

  if (opt.verify) {
    // Exactly one selected ball in every q^-nu cell of every T_i.
    bool cells_ok = true;
    for (std::size_t i = 0; i < v; ++i) {
      std::map<CoordKey, int> hits;
      for (const auto& tb : T[i])
        for (const auto& cell : subdivide(field, tb, opt.nu)) hits[key_of(cell.center)] = 0;
      for (const auto& s : res.S[i]) {
        auto it = hits.find(key_of(ball_of(field, s.center, opt.nu).center));
        if (it == hits.end())
          cells_ok = false;
        else
          ++it->second;
      }
      for (const auto& [k, c] : hits)
        if (c != 1) cells_ok = false;
    }
    bool fine = true;
    for (const auto& fam : res.S)
      for (const auto& b : fam)
        if (b.lambda <= res.cert.lower_bound_exp) fine = false;
    auto sw = sweep_centers(p, res.S);
    const bool ok = cells_ok && fine && !sw.vanished && sw.max_valuation <= res.cert.lower_bound_exp;
    os << "verify cells-one-ball=" << (cells_ok ? "yes" : "NO") << " tuples=" << sw.tuples
       << " max_valuation=" << (sw.vanished ? std::string("inf") : std::to_string(sw.max_valuation))
       << " bound=" << res.cert.lower_bound_exp << " " << (ok ? "ok" : "VIOLATED") << "\n";
    if (!ok) {
      std::ostringstream w;
      w << "tuple (";
      for (std::size_t i = 0; i < sw.worst.size(); ++i) w << (i ? "," : "") << sw.worst[i];
      w << ")" << (cells_ok ? "" : " or a cell without exactly one ball");
      out.first_violation = w.str();
    }
    out.verified = ok;
  }
  out.report = os.str();
  return out;
}

RunReport run_cantor(const Field& field, std::vector<FunctionEntry> registry, const TreeOptions& opt) {
  RunReport out;
  const std::size_t n = registry.empty() ? 1 : registry.front().n();
  ConstructionTree tree(field, std::move(registry), unit_ball(field, n), opt.schedule);
  std::ostringstream os;
  bool smooth = false;
  for (const auto& f : tree.registry()) smooth = smooth || f.kind == FunctionEntry::Kind::smooth;
  os << "mode " << (smooth ? "smooth-avoid" : "cantor") << "\nfield " << tree.field().describe() << "\n";
  describe_registry(os, tree.registry());
  os << "schedule lambda0=" << opt.schedule.lambda0 << " gap=" << opt.schedule.gap << " depth=" << opt.depth
     << "\n";

  std::string halt;
  try {
    tree.run(opt.depth);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::precision_exhausted) throw;
    halt = e.what();
  }
  bool checks_ok = true;
  for (const auto& rec : tree.stages()) {
    os << "stage " << rec.j << " l=" << rec.item.ell << " k=" << rec.item.k << " j0=" << rec.item.j0
       << " sigma=";
    for (std::size_t i = 0; i < rec.item.sigma.size(); ++i) os << (i ? "," : "") << rec.item.sigma[i];
    os << " mu=" << rec.mu << " nu=" << rec.nu << " lambda=" << rec.lambda << " eps=" << std::setprecision(4)
       << rec.eps << " growth=" << (rec.growth_inequality ? "yes" : "no") << "\n";
    os << "  target " << rec.target << "\n  certificate " << format_certificate(rec.cert) << "\n";
    if (!rec.checks.empty()) {
      os << "  zero boxes " << rec.zero_boxes << "\n";
      for (std::size_t c = 0; c < rec.checks.size(); ++c) {
        const auto& ch = rec.checks[c];
        os << "  projection " << c + 1 << " (a)=" << (ch.a ? "ok" : "FAIL") << " (b)=" << (ch.b ? "ok" : "FAIL")
           << " (c)=" << (ch.c ? "ok" : "FAIL") << "\n";
        checks_ok = checks_ok && ch.a && ch.b && ch.c;
      }
    }
  }
  if (!halt.empty())
    os << "halted after stage " << tree.stage() << ": " << halt << "\n";
  os << "leaves " << tree.leaves().size() << "\n";
  out.verified = checks_ok;
  if (opt.verify) {
    auto rep = verify_tree(tree);
    for (const auto& l : rep.lines) os << "verify " << l << "\n";
    os << "verify certificates=" << rep.certificates << " tuples=" << rep.tuples << " "
       << (rep.ok ? "ok" : "VIOLATED") << "\n";
    if (!rep.ok) out.first_violation = rep.first_violation;
    out.verified = out.verified && rep.ok;
  }
  if (opt.minkowski) {
    const int deepest = *std::max_element(tree.lambdas().begin(), tree.lambdas().end());
    bool same = true;
    for (int mu = 0; mu <= deepest; ++mu) {
      BigInt a = minkowski_count(tree, mu), b = minkowski_count_descent(tree, mu);
      os << "minkowski mu=" << mu << " N=" << a << (a == b ? "" : " MISMATCH descent=" + b.str()) << "\n";
      same = same && a == b;
    }
    if (!same && out.first_violation.empty()) out.first_violation = "Minkowski counts disagree";
    out.verified = out.verified && same;
  }
  if (!halt.empty()) out.report = os.str() + "note: tree is a certified finite prefix\n";
  else out.report = os.str();
  out.artifact = serialize_tree(tree);
  out.halted = halt;
  return out;
}

RunReport run_audit(const Field& field, std::vector<FunctionEntry> registry, const TreeOptions& opt,
                    const AuditOptions& audit) {
  RunReport out;
  const std::size_t n = registry.empty() ? 1 : registry.front().n();
  ConstructionTree tree(field, std::move(registry), unit_ball(field, n), opt.schedule);
  tree.run(opt.depth);
  const long double D = target_dimension(tree);
  auto rep = audit_s_contribution(tree, audit.coverings, audit.s_factor * D, audit.seed);
  std::ostringstream os;
  os << "mode audit\nfield " << field.describe() << "\n";
  describe_registry(os, tree.registry());
  os << std::setprecision(6) << "D=" << static_cast<double>(D) << " s=" << static_cast<double>(rep.s)
     << " seed=" << audit.seed << "\n";
  for (const auto& l : rep.lines) os << "covering " << l << "\n";
  os << "coverings=" << rep.coverings << " invalid=" << rep.invalid_coverings
     << " superadditivity_failures=" << rep.superadditivity_failures
     << " dichotomy_failures=" << rep.dichotomy_failures << " part1=" << rep.part1_cases
     << " part2=" << rep.part2_cases << " prop_bound_holds=" << rep.prop_bound_holds << "\n";
  out.verified = rep.ok();
  if (!out.verified) out.first_violation = "s-contribution audit failed";
  out.report = os.str();
  out.artifact = serialize_tree(tree);
  return out;
}

RunReport run_linear_simul(const Field& field, const LinearOptions& opt) {
  RunReport out;
  std::vector<Element> alpha;
  for (long long a : opt.alpha) alpha.push_back(field.from_int(a));
  auto chk = check_alpha(alpha);
  if (!chk.ok) fail(ErrorKind::infeasible, chk.reason);
  LinearFormSpec spec = make_linear_spec(field, alpha, opt.C);
  const int lambda0 = opt.lambda0 < 0 ? simul_min_lambda0(field, spec) : opt.lambda0;
  SimulTree tree = build_simul_set(field, spec, lambda0, opt.depth);
  std::ostringstream os;
  os << "mode linear-simul\nfield " << field.describe() << "\nalpha";
  for (long long a : opt.alpha) os << " " << a;
  os << "\nC=" << spec.C << " c_star=" << spec.c_star << " (C* = q^-" << spec.c_star << ") lambda0=" << lambda0
     << "\n";
  out.verified = true;
  for (std::size_t j = 0; j <= opt.depth; ++j) {
    const bool dom = quadratic_dominance(field, spec, lambda0, j);
    os << "depth " << j << " balls=" << tree.levels[j].size() << " radius=q^-" << tree.levels[j].front().lambda
       << " dominance=" << (dom ? "ok" : "FAIL");
    out.verified = out.verified && dom;
    if (opt.verify && j > 0) {
      auto sep = verify_separation(field, spec, tree, j);
      auto per = verify_perturbed(field, spec, tree, j, square_gap_perturbation());
      os << " separation tuples=" << sep.tuples << " max_v=" << sep.max_valuation << " bound=" << sep.bound_exp
         << " " << (sep.ok ? "ok" : "VIOLATED") << " perturbed max_v=" << per.max_valuation << " "
         << (per.ok ? "ok" : "VIOLATED");
      if (!sep.ok && out.first_violation.empty()) out.first_violation = "depth " + std::to_string(j) + " " + sep.first_violation;
      if (!per.ok && out.first_violation.empty()) out.first_violation = "perturbed depth " + std::to_string(j) + " " + per.first_violation;
      out.verified = out.verified && sep.ok && per.ok;
    }
    os << "\n";
  }
  if (!out.verified && out.first_violation.empty()) out.first_violation = "quadratic dominance fails";
  out.report = os.str();
  out.artifact = serialize_simul(tree, spec);
  return out;
}

RunReport run_box_count(const Field& field, const SmoothFunctionSpec& f, const BoxCountOptions& opt) {
  RunReport out;
  const Ball T = ball_of(field, std::vector<Element>(f.n * f.v, field.zero()), opt.mu);
  const std::uint64_t count = count_zero_boxes(field, f, T, opt.lambda);
  const bool within = within_box_bound(field, f, count, opt.mu, opt.lambda);
  std::ostringstream os;
  os << "mode box-count\nfield " << field.describe() << "\nfunction " << f.name << " m=" << f.m << " n=" << f.n
     << " v=" << f.v << " c0=" << f.c0 << " c1=" << f.c1 << " c2="
     << (f.c2 ? std::to_string(*f.c2) : std::string("none")) << "\n";
  os << "mu=" << opt.mu << " lambda=" << opt.lambda << " count=" << count << "\n";
  os << "bound " << box_bound_string(field, f, opt.mu, opt.lambda) << " " << (within ? "ok" : "EXCEEDED") << "\n";
  out.verified = within;
  if (opt.slabs) {
    auto sl = slab_decomposition(field, f, T, opt.lambda);
    os << "slabs total=" << sl.slabs_total << " hit=" << sl.slabs_hit << " max_per_slab=" << sl.max_per_slab << " "
       << (sl.within_bound ? "ok" : "EXCEEDED") << "\n";
    out.verified = out.verified && sl.within_bound;
  }
  if (!out.verified) out.first_violation = "zero-box count exceeds its bound";
  out.report = os.str();
  return out;
}

}  // namespace lfc
