#ifndef KAHLER_LAB_H
#define KAHLER_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum KlStatus {
  KL_STATUS_OK = 0,
  KL_STATUS_NULL_POINTER = 1,
  KL_STATUS_INVALID_ARGUMENT = 2,
  KL_STATUS_OUT_OF_RANGE = 3,
  KL_STATUS_SYMMETRY_VIOLATION = 4,
  KL_STATUS_NUMERICAL = 5,
  KL_STATUS_UNKNOWN_NAME = 6,
  KL_STATUS_PARSE = 7,
  KL_STATUS_PANIC = 8,
} KlStatus;

typedef enum KlFunctional {
  KL_FUNCTIONAL_HOLOMORPHIC_SECTIONAL = 0,
  KL_FUNCTIONAL_RICCI = 1,
  KL_FUNCTIONAL_ORTHOGONAL_RICCI = 2,
} KlFunctional;

typedef enum KlMode {
  KL_MODE_MIN = 0,
  KL_MODE_MAX = 1,
} KlMode;

/**
 * Opaque U(m)-invariant metric.
 */
typedef struct KlProfile KlProfile;

/**
 * Opaque algebraic curvature tensor.
 */
typedef struct KlTensor KlTensor;

/**
 * Curvature components of a profile at one parameter.
 */
typedef struct KlAbc {
  double param;
  double a;
  double b;
  double c;
} KlAbc;

/**
 * Outcome of one comparison check.
 */
typedef struct KlComparison {
  double lambda;
  double max_violation;
  double max_abs_difference;
  /**
   * 1 when the check passes.
   */
  int32_t passed;
} KlComparison;

/**
 * Blow-up surface curvature at one chart point.
 */
typedef struct KlSurfacePoint {
  /**
   * Unitary components `R₁₁₁₁, R₁₁₂₂, R₂₂₂₂` from the closed form.
   */
  double r1111;
  double r1122;
  double r2222;
  double ricci_min;
  double h_min;
  /**
   * Largest difference between the closed-form and finite-difference tensors.
   */
  double engine_difference;
} KlSurfacePoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *kl_version(void);

/**
 * Copy the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length without the NUL, or
 * 0 when there is no error.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t kl_last_error(char *buf, size_t len);

/**
 * Space-form tensor with constant holomorphic sectional curvature `2λ`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KlStatus kl_tensor_space_form(size_t m, double lambda, struct KlTensor **out);

/**
 * Tensor from its JSON exchange form `{"m": …, "coeffs": [...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` valid for writes.
 */
enum KlStatus kl_tensor_from_json(const char *json, struct KlTensor **out);

/**
 * # Safety
 * `t` must be null or a handle from this library not freed before.
 */
void kl_tensor_free(struct KlTensor *t);

/**
 * # Safety
 * `t` must be a live handle and `out` valid for writes.
 */
enum KlStatus kl_tensor_dim(const struct KlTensor *t, size_t *out);

/**
 * `H(Z)` for the direction with components `re[i] + i·im[i]`, normalised first.
 *
 * # Safety
 * `re` and `im` must be valid for `m` reads, `out` for one write.
 */
enum KlStatus kl_tensor_holomorphic_sectional(const struct KlTensor *t,
                                              const double *re,
                                              const double *im,
                                              size_t m,
                                              double *out);

/**
 * Residual of the sphere-average identity for `Ric⊥`.
 *
 * # Safety
 * `t` must be a live handle and `out` valid for writes.
 */
enum KlStatus kl_tensor_berger_residual(const struct KlTensor *t, double *out);

/**
 * Extremum of `H`, `Ric` or `Ric⊥` over the unit sphere.
 *
 * # Safety
 * `t` must be a live handle and `out` valid for writes.
 */
enum KlStatus kl_tensor_extremize(const struct KlTensor *t,
                                  enum KlFunctional functional,
                                  enum KlMode mode,
                                  uint64_t seed,
                                  double *out);

/**
 * Builtin profile on the default grid. `a`, `lambda` and `scale` are
 * optional: pass NaN to use the profile's default.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` valid for writes.
 */
enum KlStatus kl_profile_builtin(const char *name,
                                 size_t m,
                                 double a,
                                 double lambda,
                                 double scale,
                                 struct KlProfile **out);

/**
 * # Safety
 * `p` must be null or a handle from this library not freed before.
 */
void kl_profile_free(struct KlProfile *p);

/**
 * `A, B, C` at parameter `param`.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for writes.
 */
enum KlStatus kl_profile_abc(const struct KlProfile *p, double param, struct KlAbc *out);

/**
 * Comparison check `theorem` (`"1.2i"`, `"1.2ii"`, `"1.3"`, `"1.5"`,
 * `"index"`, `"volume"`, `"diameter"`); `lambda` NaN certifies it from the profile.
 *
 * # Safety
 * `p` must be a live handle, `theorem` NUL-terminated and `out` valid for writes.
 */
enum KlStatus kl_compare(const struct KlProfile *p,
                         const char *theorem,
                         double lambda,
                         struct KlComparison *out);

/**
 * λ-thresholds of positive Ricci and holomorphic sectional curvature of the
 * blow-up surface with default sweep options.
 *
 * # Safety
 * `ricci` and `hsc` must be valid for writes.
 */
enum KlStatus kl_surface_thresholds(double *ricci, double *hsc);

/**
 * Curvature of the blow-up surface at the affine point `(a, 0)`; a negative
 * `a` selects the chart at infinity.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum KlStatus kl_surface_probe(double lambda, double a, struct KlSurfacePoint *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KAHLER_LAB_H */
