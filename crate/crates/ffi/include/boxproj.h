#ifndef BOXPROJ_H
#define BOXPROJ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum BoxprojStatus {
  BOXPROJ_STATUS_OK = 0,
  BOXPROJ_STATUS_NULL_POINTER = 1,
  BOXPROJ_STATUS_INVALID_ARGUMENT = 2,
  BOXPROJ_STATUS_NOT_SPANNING = 3,
  BOXPROJ_STATUS_NOT_UNIMODULAR = 4,
  BOXPROJ_STATUS_TOO_LARGE = 5,
  BOXPROJ_STATUS_UNSUPPORTED = 6,
  BOXPROJ_STATUS_NUMERICAL = 7,
  BOXPROJ_STATUS_PANIC = 8,
} BoxprojStatus;

/**
 * Opaque box-spline evaluator.
 */
typedef struct BoxprojBoxSpline BoxprojBoxSpline;

/**
 * Opaque direction set.
 */
typedef struct BoxprojDirectionSet BoxprojDirectionSet;

/**
 * Summary of a convergence sweep.
 */
typedef struct BoxprojConvergence {
  double fitted_rate;
  double extrapolated;
  double rhs;
  double relative_error;
} BoxprojConvergence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message into `buf` (NUL-terminated, truncated to
 * `len`) and returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
uintptr_t boxproj_last_error_message(char *buf, uintptr_t len);

/**
 * Builds a direction set from `n` row vectors of dimension `d`, stored row-major.
 *
 * # Safety
 * `coords` must hold `n * d` values; `out` must be a valid pointer.
 */
enum BoxprojStatus boxproj_direction_set_new(const int64_t *coords,
                                             uintptr_t n,
                                             uintptr_t d,
                                             struct BoxprojDirectionSet **out);

/**
 * Builds a preset direction set by name (e.g. `"courant"`, `"bspline(3)"`).
 *
 * # Safety
 * `name` must point to `name_len` bytes of UTF-8; `out` must be valid.
 */
enum BoxprojStatus boxproj_direction_set_preset(const char *name,
                                                uintptr_t name_len,
                                                struct BoxprojDirectionSet **out);

/**
 * Releases a direction set. Null is ignored.
 *
 * # Safety
 * `set` must come from a `boxproj_direction_set_*` constructor and not be used afterwards.
 */
void boxproj_direction_set_free(struct BoxprojDirectionSet *set);

/**
 * Writes `d`, `n` and `ϱ_V`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum BoxprojStatus boxproj_direction_set_shape(const struct BoxprojDirectionSet *set,
                                               uintptr_t *dim,
                                               uintptr_t *len,
                                               uintptr_t *rho);

/**
 * Writes whether every `d`-subset has determinant `0` or `±1`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum BoxprojStatus boxproj_direction_set_is_unimodular(const struct BoxprojDirectionSet *set,
                                                       bool *out);

/**
 * Writes `#Λ`. Fails with `NotUnimodular` for non-unimodular sets.
 *
 * # Safety
 * All pointers must be valid.
 */
enum BoxprojStatus boxproj_lambda_count(const struct BoxprojDirectionSet *set, uintptr_t *out);

/**
 * Writes class `index` of `Λ`: its normal `α_U` (`d` entries), its member
 * indices (up to `n` entries) and the member count.
 *
 * # Safety
 * `alpha` must hold `d` values and `members` `n` values.
 */
enum BoxprojStatus boxproj_lambda_class(const struct BoxprojDirectionSet *set,
                                        uintptr_t index,
                                        int64_t *alpha,
                                        uintptr_t *members,
                                        uintptr_t *member_count);

/**
 * `B̂_V(ξ)` with the convention `∫ B_V(x) e^{−2πi x·ξ} dx`.
 *
 * # Safety
 * `xi` must hold `d` values; `re` and `im` must be valid.
 */
enum BoxprojStatus boxproj_fourier_transform(const struct BoxprojDirectionSet *set,
                                             const double *xi,
                                             double *re,
                                             double *im);

/**
 * Builds a box-spline evaluator for `set`.
 *
 * # Safety
 * `set` and `out` must be valid.
 */
enum BoxprojStatus boxproj_box_spline_new(const struct BoxprojDirectionSet *set,
                                          struct BoxprojBoxSpline **out);

/**
 * Releases a box-spline evaluator. Null is ignored.
 *
 * # Safety
 * `spline` must come from [`boxproj_box_spline_new`] and not be used afterwards.
 */
void boxproj_box_spline_free(struct BoxprojBoxSpline *spline);

/**
 * `B_V(x)`.
 *
 * # Safety
 * `x` must hold `d` values; `out` must be valid.
 */
enum BoxprojStatus boxproj_box_spline_evaluate(const struct BoxprojBoxSpline *spline,
                                               const double *x,
                                               double *out);

/**
 * The periodic Bernoulli function `B^k(t)`, `k ≥ 1`; NaN for `k = 0`.
 */
double boxproj_bernoulli_periodic(uint32_t k, double t);

/**
 * `L_β(x)` from its Bernoulli-spline expansion.
 *
 * # Safety
 * `beta` and `x` must hold `d` values; `out` must be valid.
 */
enum BoxprojStatus boxproj_l_beta(const struct BoxprojDirectionSet *set,
                                  const uint32_t *beta,
                                  const double *x,
                                  double *out);

/**
 * `L_β(x)` from the lattice Fourier series truncated at `|α|_∞ ≤ radius` (real part).
 *
 * # Safety
 * `beta` and `x` must hold `d` values; `out` must be valid.
 */
enum BoxprojStatus boxproj_l_beta_series(const struct BoxprojDirectionSet *set,
                                         const uint32_t *beta,
                                         const double *x,
                                         uintptr_t radius,
                                         double *out);

/**
 * Right-side constant for `exp(−π|x|²/scale²)`; the closed form when `p = 2`.
 *
 * # Safety
 * `set` and `out` must be valid.
 */
enum BoxprojStatus boxproj_rhs_constant_gaussian(const struct BoxprojDirectionSet *set,
                                                 double scale,
                                                 double p,
                                                 double *out);

/**
 * Convergence sweep for `exp(−π|x|²/scale²)` over `h = 2^{−first}, …, 2^{−last}`.
 *
 * # Safety
 * `set` and `out` must be valid.
 */
enum BoxprojStatus boxproj_converge_gaussian(const struct BoxprojDirectionSet *set,
                                             double scale,
                                             double p,
                                             uint32_t first,
                                             uint32_t last,
                                             struct BoxprojConvergence *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOXPROJ_H */
