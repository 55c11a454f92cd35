// Command-line front end. Talks to the library only through lfc.h.
//
// Exit codes: 0 ok, 1 verification failure, 2 configuration or feasibility
// error, 3 precision exhausted.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lfc.h"

namespace {

struct Common {
  std::string field_path;
  std::string out_path;
  std::string report_path;
};

struct FieldDeleter {
  void operator()(lfc_field* f) const { lfc_field_free(f); }
};
struct RegistryDeleter {
  void operator()(lfc_registry* r) const { lfc_registry_free(r); }
};
struct ResultDeleter {
  void operator()(lfc_result* r) const { lfc_result_free(r); }
};
using FieldPtr = std::unique_ptr<lfc_field, FieldDeleter>;
using RegistryPtr = std::unique_ptr<lfc_registry, RegistryDeleter>;
using ResultPtr = std::unique_ptr<lfc_result, ResultDeleter>;

struct Failure {
  int code;
  std::string message;
};

int exit_code(lfc_status s) {
  switch (s) {
    case LFC_OK: return 0;
    case LFC_ERR_VERIFICATION: return 1;
    case LFC_ERR_INVALID_ARGUMENT:
    case LFC_ERR_INFEASIBLE: return 2;
    case LFC_ERR_PRECISION: return 3;
    default: return 2;
  }
}

void check(lfc_status s) {
  if (s != LFC_OK) throw Failure{exit_code(s), lfc_last_error()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{2, "cannot read '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{2, "cannot write '" + path + "'"};
  out << text;
}

FieldPtr open_field(const Common& c) {
  if (c.field_path.empty()) throw Failure{2, "--field is required"};
  lfc_field* f = nullptr;
  check(lfc_field_from_spec(slurp(c.field_path).c_str(), &f));
  return FieldPtr(f);
}

RegistryPtr open_registry(const lfc_field* field, const std::vector<std::string>& polys,
                          const std::vector<std::string>& fns) {
  lfc_registry* r = nullptr;
  check(lfc_registry_new(field, &r));
  RegistryPtr reg(r);
  for (const auto& p : polys) check(lfc_registry_add_polynomial(reg.get(), slurp(p).c_str()));
  for (const auto& name : fns) check(lfc_registry_add_smooth(reg.get(), name.c_str()));
  if (lfc_registry_size(reg.get()) == 0) throw Failure{2, "give at least one --poly or --fn"};
  return reg;
}

std::vector<long long> parse_alpha(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{2, "bad alpha component '" + item + "'"};
    }
  }
  return out;
}

int finish(const Common& c, lfc_result* res) {
  const std::string report = lfc_result_report(res);
  if (c.report_path.empty())
    std::cout << report;
  else
    spill(c.report_path, report);
  if (!c.out_path.empty()) spill(c.out_path, lfc_result_artifact(res));
  const std::string halted = lfc_result_halted(res);
  if (!lfc_result_verified(res)) {
    std::cerr << "verification failed: " << lfc_result_violation(res) << "\n";
    return 1;
  }
  if (!halted.empty()) {
    std::cerr << "precision exhausted: " << halted << "\n";
    return 3;
  }
  return 0;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--field", c.field_path, "field spec file")->required();
  sub->add_option("--out", c.out_path, "artifact output path");
  sub->add_option("--report", c.report_path, "report output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Configuration-avoiding sets in rings of integers of local fields"};
  app.require_subcommand(1);
  Common common;

  std::string poly_path;
  std::vector<std::string> polys, fns;
  std::string fn_name;
  int mu = 1, nu = 2, box_mu = 0, lambda = 1, lambda0 = 1, gap = 1;
  std::size_t balls = 1, depth = 3, linear_depth = 4, coverings = 100;
  double s_factor = 0.5;
  unsigned long long seed = 1;
  bool verify = false, no_minkowski = false, slabs = false;
  std::string alpha_text, tree_path;
  long long C = 1;
  int simul_lambda0 = -1;

  auto* poly = app.add_subcommand("poly-avoid", "single-scale avoidance for one polynomial");
  add_common(poly, common);
  poly->add_option("--poly", poly_path, "polynomial file")->required();
  poly->add_option("--mu", mu);
  poly->add_option("--nu", nu);
  poly->add_option("--balls", balls, "q^-mu balls per T_i");
  poly->add_flag("--verify", verify);

  auto add_tree = [&](CLI::App* sub) {
    add_common(sub, common);
    sub->add_option("--poly", polys, "polynomial files, queue order");
    sub->add_option("--fn", fns, "built-in smooth maps");
    sub->add_option("--lambda0", lambda0);
    sub->add_option("--gap", gap);
    sub->add_option("--depth", depth);
  };
  auto* smooth = app.add_subcommand("smooth-avoid", "construction driven by smooth maps");
  add_tree(smooth);
  smooth->add_flag("--verify", verify);
  smooth->add_flag("--no-minkowski", no_minkowski);
  auto* cantor = app.add_subcommand("cantor", "queue-driven nested construction");
  add_tree(cantor);
  cantor->add_flag("--verify", verify);
  cantor->add_flag("--no-minkowski", no_minkowski);
  auto* audit = app.add_subcommand("audit", "s-contribution audit on a construction tree");
  add_tree(audit);
  audit->add_option("--coverings", coverings);
  audit->add_option("--s-factor", s_factor, "s = factor * D");
  audit->add_option("--seed", seed);
  auto* verify_cmd = app.add_subcommand("verify", "rebuild a tree, compare it with a saved one, re-check certificates");
  add_tree(verify_cmd);
  verify_cmd->add_option("--tree", tree_path, "saved tree")->required();

  auto* linear = app.add_subcommand("linear-simul", "simultaneous avoidance for a fixed linearization");
  add_common(linear, common);
  linear->add_option("--alpha", alpha_text, "comma separated integers")->required();
  linear->add_option("--C", C);
  linear->add_option("--lambda0", simul_lambda0, "default: smallest feasible");
  linear->add_option("--depth", linear_depth);
  linear->add_flag("--verify", verify);

  auto* box = app.add_subcommand("box-count", "count q^-lambda boxes meeting a zero set");
  add_common(box, common);
  box->add_option("--fn", fn_name)->required();
  box->add_option("--mu", box_mu);
  box->add_option("--lambda", lambda)->required();
  box->add_flag("--slabs", slabs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    FieldPtr field = open_field(common);
    lfc_result* raw = nullptr;
    if (*poly) {
      check(lfc_poly_avoid(field.get(), slurp(poly_path).c_str(), mu, nu, balls, verify, &raw));
    } else if (*smooth || *cantor) {
      auto reg = open_registry(field.get(), polys, fns);
      check(lfc_cantor(field.get(), reg.get(), lambda0, gap, depth, verify, !no_minkowski, &raw));
    } else if (*audit) {
      auto reg = open_registry(field.get(), polys, fns);
      check(lfc_audit(field.get(), reg.get(), lambda0, gap, depth, coverings, s_factor, seed, &raw));
    } else if (*verify_cmd) {
      auto reg = open_registry(field.get(), polys, fns);
      check(lfc_cantor(field.get(), reg.get(), lambda0, gap, depth, 1, 1, &raw));
      ResultPtr res(raw);
      if (slurp(tree_path) != lfc_result_artifact(res.get())) {
        std::cerr << "verification failed: saved tree differs from the rebuilt tree\n";
        return 1;
      }
      return finish(common, res.get());
    } else if (*linear) {
      auto alpha = parse_alpha(alpha_text);
      check(lfc_linear_simul(field.get(), alpha.data(), alpha.size(), C, simul_lambda0, linear_depth, verify, &raw));
    } else if (*box) {
      check(lfc_box_count(field.get(), fn_name.c_str(), box_mu, lambda, slabs, &raw));
    }
    ResultPtr res(raw);
    return finish(common, res.get());
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
}
