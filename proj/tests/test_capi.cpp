// Exercises the shared library through lfc.h only.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "lfc.h"

namespace {

int failures = 0;

void expect(bool ok, const char* what) {
  if (!ok) {
    std::printf("FAILED: %s (%s)\n", what, lfc_last_error());
    ++failures;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  const std::string data = LFC_DATA;
  expect(std::strlen(lfc_version()) > 0, "version string");

  lfc_field* z5 = nullptr;
  expect(lfc_field_from_spec(slurp(data + "/z5.spec").c_str(), &z5) == LFC_OK, "z5 spec");
  expect(lfc_field_q(z5) == 5, "q = 5");
  expect(lfc_field_precision(z5) == 24, "N = 24");
  char buf[8];
  const size_t need = lfc_field_describe(z5, buf, sizeof buf);
  expect(need > 0 && std::strlen(buf) == std::min<size_t>(need, sizeof buf - 1), "describe truncates");

  lfc_field* bad = nullptr;
  expect(lfc_field_from_spec("p=4\n", &bad) == LFC_ERR_INVALID_ARGUMENT, "p=4 rejected");
  expect(bad == nullptr, "no handle on failure");
  expect(std::strlen(lfc_last_error()) > 0, "error message set");
  expect(lfc_field_padic(5, 8, nullptr) == LFC_ERR_INVALID_ARGUMENT, "null out");

  lfc_result* res = nullptr;
  const std::string ap3 = slurp(data + "/ap3.poly");
  expect(lfc_poly_avoid(z5, ap3.c_str(), 1, 2, 1, 1, &res) == LFC_OK, "poly avoid");
  expect(lfc_result_verified(res) == 1, "poly avoid verified");
  expect(std::strstr(lfc_result_report(res), "ok") != nullptr, "poly avoid report");
  lfc_result_free(res);

  lfc_registry* reg = nullptr;
  expect(lfc_registry_new(z5, &reg) == LFC_OK, "registry");
  expect(lfc_registry_add_polynomial(reg, ap3.c_str()) == LFC_OK, "add polynomial");
  expect(lfc_registry_add_smooth(reg, "no-such-map") == LFC_ERR_INVALID_ARGUMENT, "unknown smooth map");
  expect(lfc_registry_size(reg) == 1, "registry size");
  res = nullptr;
  expect(lfc_cantor(z5, reg, 1, 1, 2, 1, 1, &res) == LFC_OK, "cantor");
  expect(lfc_result_verified(res) == 1, "cantor verified");
  expect(std::strncmp(lfc_result_artifact(res), "lfc-tree 1", 10) == 0, "tree artifact");
  expect(std::strlen(lfc_result_halted(res)) == 0, "not halted");
  lfc_result_free(res);

  res = nullptr;
  expect(lfc_cantor(z5, reg, 1, 1, 6, 1, 0, &res) == LFC_OK, "deep cantor");
  expect(std::strlen(lfc_result_halted(res)) > 0, "deep run halts on precision");
  lfc_result_free(res);

  res = nullptr;
  expect(lfc_audit(z5, reg, 1, 1, 3, 20, 0.5, 4, &res) == LFC_OK, "audit");
  expect(lfc_result_verified(res) == 1, "audit clean");
  lfc_result_free(res);
  lfc_registry_free(reg);

  lfc_field* z5_54 = nullptr;
  expect(lfc_field_padic(5, 54, &z5_54) == LFC_OK, "padic 54");
  const long long alpha[] = {1, -2, 1};
  res = nullptr;
  expect(lfc_linear_simul(z5_54, alpha, 3, 1, -1, 2, 1, &res) == LFC_OK, "linear simul");
  expect(lfc_result_verified(res) == 1, "linear verified");
  lfc_result_free(res);
  const long long bad_alpha[] = {1, -1, 1, -1};
  res = nullptr;
  expect(lfc_linear_simul(z5_54, bad_alpha, 4, 1, -1, 2, 1, &res) == LFC_ERR_INFEASIBLE, "bad alpha");
  expect(res == nullptr, "no result for bad alpha");

  res = nullptr;
  expect(lfc_box_count(z5, "x-minus-y", 0, 2, 0, &res) == LFC_OK, "box count");
  expect(std::strstr(lfc_result_report(res), "count=25") != nullptr, "x - y count");
  lfc_result_free(res);

  lfc_field_free(z5_54);
  lfc_field_free(z5);
  lfc_field_free(nullptr);
  lfc_result_free(nullptr);

  std::printf("%s: %d failure(s)\n", failures ? "FAIL" : "ok", failures);
  return failures ? 1 : 0;
}
