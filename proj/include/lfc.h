#ifndef LFC_H
#define LFC_H

/* C interface to the local-field configuration toolkit. All objects are
 * opaque handles; every call returns an lfc_status and the message of the
 * last failure on this thread is available from lfc_last_error(). */

#include <stddef.h>

#if defined(LFC_BUILDING_LIBRARY)
#define LFC_API __attribute__((visibility("default")))
#else
#define LFC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lfc_status {
  LFC_OK = 0,
  LFC_ERR_INVALID_ARGUMENT = 1,
  LFC_ERR_INFEASIBLE = 2,
  LFC_ERR_PRECISION = 3,
  LFC_ERR_VERIFICATION = 4,
  LFC_ERR_INTERNAL = 5
} lfc_status;

typedef struct lfc_field lfc_field;
typedef struct lfc_registry lfc_registry;
typedef struct lfc_result lfc_result;

LFC_API const char* lfc_version(void);
LFC_API const char* lfc_last_error(void);

/* Fields */
LFC_API lfc_status lfc_field_from_spec(const char* spec_text, lfc_field** out);
LFC_API lfc_status lfc_field_padic(unsigned p, int precision, lfc_field** out);
LFC_API lfc_status lfc_field_power_series(unsigned p, int precision, lfc_field** out);
LFC_API void lfc_field_free(lfc_field* field);
LFC_API unsigned lfc_field_q(const lfc_field* field);
LFC_API int lfc_field_precision(const lfc_field* field);
/* Writes the description into buf (always NUL-terminated when len > 0);
 * returns the length needed without the terminator. */
LFC_API size_t lfc_field_describe(const lfc_field* field, char* buf, size_t len);

/* Function registries (queue order is insertion order) */
LFC_API lfc_status lfc_registry_new(const lfc_field* field, lfc_registry** out);
LFC_API void lfc_registry_free(lfc_registry* reg);
LFC_API lfc_status lfc_registry_add_polynomial(lfc_registry* reg, const char* poly_text);
/* Built-in smooth maps: x-minus-y, x2-minus-y, ap3, ap3-quad, linear:a,b,... */
LFC_API lfc_status lfc_registry_add_smooth(lfc_registry* reg, const char* name);
LFC_API size_t lfc_registry_size(const lfc_registry* reg);

/* Runs. On LFC_OK *out holds a result; a failed verification still returns
 * LFC_OK with lfc_result_verified() == 0. */
LFC_API lfc_status lfc_poly_avoid(const lfc_field* field, const char* poly_text, int mu, int nu,
                                  size_t balls_per_set, int verify, lfc_result** out);
LFC_API lfc_status lfc_cantor(const lfc_field* field, const lfc_registry* reg, int lambda0, int gap,
                              size_t depth, int verify, int minkowski, lfc_result** out);
LFC_API lfc_status lfc_audit(const lfc_field* field, const lfc_registry* reg, int lambda0, int gap,
                             size_t depth, size_t coverings, double s_factor, unsigned long long seed,
                             lfc_result** out);
/* lambda0 < 0 picks the smallest feasible value. */
LFC_API lfc_status lfc_linear_simul(const lfc_field* field, const long long* alpha, size_t v, long long C,
                                    int lambda0, size_t depth, int verify, lfc_result** out);
LFC_API lfc_status lfc_box_count(const lfc_field* field, const char* fn_name, int mu, int lambda, int slabs,
                                 lfc_result** out);

LFC_API const char* lfc_result_report(const lfc_result* res);
LFC_API const char* lfc_result_artifact(const lfc_result* res);
LFC_API int lfc_result_verified(const lfc_result* res);
LFC_API const char* lfc_result_violation(const lfc_result* res);
/* Nonempty when precision ran out before the requested depth. */
LFC_API const char* lfc_result_halted(const lfc_result* res);
LFC_API void lfc_result_free(lfc_result* res);

#ifdef __cplusplus
}
#endif

#endif
