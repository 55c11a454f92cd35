#include "lfc.h"

#include <cstring>
#include <new>
#include <string>

#include "lfc/io.hpp"
#include "lfc/runs.hpp"

struct lfc_field {
  lfc::Field field;
};

struct lfc_registry {
  lfc::Field field;
  std::vector<lfc::FunctionEntry> entries;
};

struct lfc_result {
  lfc::RunReport run;
};

namespace {

thread_local std::string last_error;

lfc_status status_of(lfc::ErrorKind kind) {
  switch (kind) {
    case lfc::ErrorKind::invalid_argument: return LFC_ERR_INVALID_ARGUMENT;
    case lfc::ErrorKind::infeasible: return LFC_ERR_INFEASIBLE;
    case lfc::ErrorKind::precision_exhausted: return LFC_ERR_PRECISION;
    case lfc::ErrorKind::verification_failed: return LFC_ERR_VERIFICATION;
  }
  return LFC_ERR_INTERNAL;
}

template <typename Fn>
lfc_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return LFC_OK;
  } catch (const lfc::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LFC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LFC_ERR_INTERNAL;
  }
}

lfc_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return LFC_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* lfc_version(void) { return "0.1.0"; }

const char* lfc_last_error(void) { return last_error.c_str(); }

lfc_status lfc_field_from_spec(const char* spec_text, lfc_field** out) {
  if (!spec_text || !out) return null_arg("spec_text/out");
  return guarded([&] { *out = new lfc_field{lfc::Field::make(lfc::parse_field_spec(spec_text))}; });
}

lfc_status lfc_field_padic(unsigned p, int precision, lfc_field** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new lfc_field{lfc::Field::padic(p, precision)}; });
}

lfc_status lfc_field_power_series(unsigned p, int precision, lfc_field** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new lfc_field{lfc::Field::power_series(p, precision)}; });
}

void lfc_field_free(lfc_field* field) { delete field; }

unsigned lfc_field_q(const lfc_field* field) { return field ? field->field.q() : 0; }

int lfc_field_precision(const lfc_field* field) { return field ? field->field.precision() : 0; }

size_t lfc_field_describe(const lfc_field* field, char* buf, size_t len) {
  if (!field) return 0;
  const std::string s = field->field.describe();
  if (buf && len > 0) {
    const size_t k = std::min(len - 1, s.size());
    std::memcpy(buf, s.data(), k);
    buf[k] = '\0';
  }
  return s.size();
}

lfc_status lfc_registry_new(const lfc_field* field, lfc_registry** out) {
  if (!field || !out) return null_arg("field/out");
  return guarded([&] { *out = new lfc_registry{field->field, {}}; });
}

void lfc_registry_free(lfc_registry* reg) { delete reg; }

lfc_status lfc_registry_add_polynomial(lfc_registry* reg, const char* poly_text) {
  if (!reg || !poly_text) return null_arg("reg/poly_text");
  return guarded([&] {
    reg->entries.push_back(lfc::polynomial_entry(lfc::parse_polynomial(reg->field, poly_text)));
  });
}

lfc_status lfc_registry_add_smooth(lfc_registry* reg, const char* name) {
  if (!reg || !name) return null_arg("reg/name");
  return guarded([&] { reg->entries.push_back(lfc::smooth_entry(lfc::builtin_smooth(reg->field, name))); });
}

size_t lfc_registry_size(const lfc_registry* reg) { return reg ? reg->entries.size() : 0; }

lfc_status lfc_poly_avoid(const lfc_field* field, const char* poly_text, int mu, int nu, size_t balls_per_set,
                          int verify, lfc_result** out) {
  if (!field || !poly_text || !out) return null_arg("field/poly_text/out");
  return guarded([&] {
    lfc::PolyAvoidOptions opt;
    opt.mu = mu;
    opt.nu = nu;
    opt.balls_per_set = balls_per_set;
    opt.verify = verify != 0;
    auto p = lfc::parse_polynomial(field->field, poly_text);
    *out = new lfc_result{lfc::run_poly_avoid(field->field, p, opt)};
  });
}

namespace {

lfc::TreeOptions tree_options(int lambda0, int gap, size_t depth) {
  lfc::TreeOptions opt;
  opt.schedule.lambda0 = lambda0;
  opt.schedule.gap = gap;
  opt.depth = depth;
  return opt;
}

}  // namespace

lfc_status lfc_cantor(const lfc_field* field, const lfc_registry* reg, int lambda0, int gap, size_t depth,
                      int verify, int minkowski, lfc_result** out) {
  if (!field || !reg || !out) return null_arg("field/reg/out");
  return guarded([&] {
    if (!(reg->field == field->field)) lfc::fail(lfc::ErrorKind::invalid_argument, "registry built over another field");
    auto opt = tree_options(lambda0, gap, depth);
    opt.verify = verify != 0;
    opt.minkowski = minkowski != 0;
    *out = new lfc_result{lfc::run_cantor(field->field, reg->entries, opt)};
  });
}

lfc_status lfc_audit(const lfc_field* field, const lfc_registry* reg, int lambda0, int gap, size_t depth,
                     size_t coverings, double s_factor, unsigned long long seed, lfc_result** out) {
  if (!field || !reg || !out) return null_arg("field/reg/out");
  return guarded([&] {
    if (!(reg->field == field->field)) lfc::fail(lfc::ErrorKind::invalid_argument, "registry built over another field");
    lfc::AuditOptions a;
    a.coverings = coverings;
    a.s_factor = s_factor;
    a.seed = seed;
    *out = new lfc_result{lfc::run_audit(field->field, reg->entries, tree_options(lambda0, gap, depth), a)};
  });
}

lfc_status lfc_linear_simul(const lfc_field* field, const long long* alpha, size_t v, long long C, int lambda0,
                            size_t depth, int verify, lfc_result** out) {
  if (!field || !alpha || !out) return null_arg("field/alpha/out");
  return guarded([&] {
    lfc::LinearOptions opt;
    opt.alpha.assign(alpha, alpha + v);
    opt.C = C;
    opt.lambda0 = lambda0;
    opt.depth = depth;
    opt.verify = verify != 0;
    *out = new lfc_result{lfc::run_linear_simul(field->field, opt)};
  });
}

lfc_status lfc_box_count(const lfc_field* field, const char* fn_name, int mu, int lambda, int slabs,
                         lfc_result** out) {
  if (!field || !fn_name || !out) return null_arg("field/fn_name/out");
  return guarded([&] {
    lfc::BoxCountOptions opt;
    opt.mu = mu;
    opt.lambda = lambda;
    opt.slabs = slabs != 0;
    *out = new lfc_result{lfc::run_box_count(field->field, lfc::builtin_smooth(field->field, fn_name), opt)};
  });
}

const char* lfc_result_report(const lfc_result* res) { return res ? res->run.report.c_str() : ""; }

const char* lfc_result_artifact(const lfc_result* res) { return res ? res->run.artifact.c_str() : ""; }

int lfc_result_verified(const lfc_result* res) { return res && res->run.verified ? 1 : 0; }

const char* lfc_result_violation(const lfc_result* res) { return res ? res->run.first_violation.c_str() : ""; }

const char* lfc_result_halted(const lfc_result* res) { return res ? res->run.halted.c_str() : ""; }

void lfc_result_free(lfc_result* res) { delete res; }

}  // extern "C"
