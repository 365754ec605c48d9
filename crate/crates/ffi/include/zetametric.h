#ifndef ZETAMETRIC_H
#define ZETAMETRIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZmStatus {
  ZM_STATUS_OK = 0,
  ZM_STATUS_NULL_ARGUMENT = 1,
  ZM_STATUS_INVALID_INPUT = 2,
  ZM_STATUS_DOMAIN = 3,
  ZM_STATUS_POLE_OR_ZERO = 4,
  ZM_STATUS_RESOURCE = 5,
  ZM_STATUS_PANIC = 6,
} ZmStatus;

/**
 * Opaque series handle.
 */
typedef struct ZmSeries ZmSeries;

/**
 * Opaque spectrum handle.
 */
typedef struct ZmSpectrum ZmSpectrum;

typedef struct ZmEvalResult {
  double re;
  double im;
  double truncation_bound;
  size_t terms_used;
  /**
   * 1 when the truncation bound is rigorous, 0 when heuristic.
   */
  uint8_t rigorous;
  uint8_t tolerance_met;
} ZmEvalResult;

typedef struct ZmDistance {
  double value;
  double argmax_s;
  double error_estimate;
} ZmDistance;

typedef struct ZmLValue {
  double value;
  double error_bound;
} ZmLValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *zm_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *zm_version(void);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out_series` a valid pointer.
 */
enum ZmStatus zm_series_from_json(const char *json, struct ZmSeries **out_series);

/**
 * # Safety
 * `series` must come from `zm_series_from_json` and not be freed twice.
 */
void zm_series_free(struct ZmSeries *series);

/**
 * # Safety
 * `series` must be a live handle and `len` a valid pointer.
 */
enum ZmStatus zm_series_len(const struct ZmSeries *series, size_t *len);

/**
 * Evaluates at `s = re + i·im` to absolute tolerance `tol`.
 *
 * # Safety
 * `series` must be a live handle and `result` a valid pointer.
 */
enum ZmStatus zm_series_eval(const struct ZmSeries *series,
                             double re,
                             double im,
                             double tol,
                             struct ZmEvalResult *result);

/**
 * Builds a catalog spectrum from a reference such as `catalog:circle:r=0.5`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out_spectrum` a valid pointer.
 */
enum ZmStatus zm_spectrum_catalog(const char *spec, struct ZmSpectrum **out_spectrum);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out_spectrum` a valid pointer.
 */
enum ZmStatus zm_spectrum_from_json(const char *json, struct ZmSpectrum **out_spectrum);

/**
 * # Safety
 * `spectrum` must come from this library and not be freed twice.
 */
void zm_spectrum_free(struct ZmSpectrum *spectrum);

/**
 * Zeta-ratio distance over `[gamma, gamma + 1]` with `grid_points` samples.
 * A NaN `gamma` selects the default `max(1, dim/2)`.
 *
 * # Safety
 * Both spectra must be live handles and `result` a valid pointer.
 */
enum ZmStatus zm_manifold_distance(const struct ZmSpectrum *left,
                                   const struct ZmSpectrum *right,
                                   double gamma,
                                   size_t grid_points,
                                   struct ZmDistance *result);

/**
 * Distance between fields written as `Q` or `Q(sqrt:D)` over `[1, 1 + a]`.
 *
 * # Safety
 * Both names must be NUL-terminated strings and `result` a valid pointer.
 */
enum ZmStatus zm_field_distance(const char *left,
                                const char *right,
                                double a,
                                struct ZmDistance *result);

/**
 * `L(χ_Δ, s)` for the field `Q(√d)`, `d > 1` squarefree.
 *
 * # Safety
 * `result` must be a valid pointer.
 */
enum ZmStatus zm_l_value(uint64_t d, double s, double tol, struct ZmLValue *result);

/**
 * Kronecker symbol `(delta/n)`.
 *
 * # Safety
 * `result` must be a valid pointer.
 */
enum ZmStatus zm_kronecker(int64_t delta, uint64_t n, int8_t *result);

/**
 * Perron integral on `Re s = c` truncated at height `t_max`.
 *
 * # Safety
 * `series` must be a live handle; `re` and `im` valid pointers.
 */
enum ZmStatus zm_perron_sum(const struct ZmSeries *series,
                            double x,
                            double c,
                            double t_max,
                            double *re,
                            double *im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETAMETRIC_H */
