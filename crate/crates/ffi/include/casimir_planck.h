#ifndef CASIMIR_PLANCK_H
#define CASIMIR_PLANCK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CpMethod {
  CP_METHOD_CLOSED_FORM = 0,
  CP_METHOD_QUADRATURE = 1,
  CP_METHOD_DERIVATIVE = 2,
  CP_METHOD_REGULATED_SUM = 3,
  CP_METHOD_ABEL_PLANA = 4,
} CpMethod;

typedef enum CpStatus {
  CP_STATUS_OK = 0,
  CP_STATUS_NULL_POINTER = 1,
  CP_STATUS_INVALID_ARGUMENT = 2,
  CP_STATUS_CONVERGENCE = 3,
  CP_STATUS_NON_FINITE = 4,
  CP_STATUS_PANIC = 5,
} CpStatus;

/**
 * Opaque evaluation context: tolerances and the last error message.
 */
typedef struct CpContext CpContext;

typedef struct CpDualityReport {
  double l;
  double beta_dual;
  double residual_p_swap;
  double residual_u_swap;
  double ds_du_dual;
  double inconsistency_ratio;
} CpDualityReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a context with default tolerances. Free with `cp_context_free`.
 */
struct CpContext *cp_context_new(void);

/**
 * # Safety
 * `ctx` must be null or a pointer from `cp_context_new` not yet freed.
 */
void cp_context_free(struct CpContext *ctx);

/**
 * Quadrature relative and absolute tolerances.
 *
 * # Safety
 * `ctx` must be null or a live context.
 */
enum CpStatus cp_context_set_tolerances(struct CpContext *ctx, double rel_tol, double abs_tol);

/**
 * Message for the last failed call on `ctx`, empty after a success.
 * The pointer stays valid until the next call on the same context.
 *
 * # Safety
 * `ctx` must be null or a live context.
 */
const char *cp_last_error_message(const struct CpContext *ctx);

/**
 * Casimir pressure at gap `gap`: closed form, quadrature or derivative.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum CpStatus cp_casimir_pressure(struct CpContext *ctx,
                                  double gap,
                                  enum CpMethod method,
                                  double *out);

/**
 * Casimir energy density: closed form, quadrature, Abel-Plana or regulated sum.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum CpStatus cp_casimir_energy_density(struct CpContext *ctx,
                                        double gap,
                                        enum CpMethod method,
                                        double *out);

/**
 * Blackbody pressure at inverse temperature `beta`.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum CpStatus cp_blackbody_pressure(struct CpContext *ctx,
                                    double beta,
                                    enum CpMethod method,
                                    double *out);

/**
 * Planck internal energy density: closed form, quadrature or derivative.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum CpStatus cp_blackbody_energy_density(struct CpContext *ctx,
                                          double beta,
                                          enum CpMethod method,
                                          double *out);

/**
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum CpStatus cp_blackbody_entropy_density(struct CpContext *ctx,
                                           double beta,
                                           enum CpMethod method,
                                           double *out);

/**
 * β = ħc/(k_B T) in metres for a temperature in kelvin.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum CpStatus cp_beta_from_kelvin(struct CpContext *ctx, double kelvin, double *out);

/**
 * Swap residuals and inconsistency ratio at gap `gap`. `method` selects the
 * swap route and must be closed form or quadrature.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum CpStatus cp_duality_report(struct CpContext *ctx,
                                double gap,
                                enum CpMethod method,
                                struct CpDualityReport *out);

/**
 * Library version, a static NUL-terminated string.
 */
const char *cp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CASIMIR_PLANCK_H */
