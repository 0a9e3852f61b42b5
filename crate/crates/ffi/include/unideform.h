#ifndef UNIDEFORM_H
#define UNIDEFORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum UdContainment {
  UD_CONTAINMENT_INSIDE = 0,
  UD_CONTAINMENT_BOUNDARY = 1,
  UD_CONTAINMENT_OUTSIDE = 2,
} UdContainment;

/**
 * Status codes. Zero is success.
 */
typedef enum UdStatus {
  UD_STATUS_OK = 0,
  UD_STATUS_NULL_POINTER = 1,
  UD_STATUS_INVALID_UTF8 = 2,
  UD_STATUS_PARSE = 3,
  UD_STATUS_INVALID_PARAMETER = 4,
  UD_STATUS_NOT_NORMALIZED = 5,
  UD_STATUS_OUTSIDE_RADIUS = 6,
  UD_STATUS_NUMERICAL = 7,
  UD_STATUS_UNREPRESENTABLE = 8,
  UD_STATUS_MALFORMED_SERIES = 9,
  UD_STATUS_IO = 10,
  UD_STATUS_BUFFER_TOO_SMALL = 11,
  UD_STATUS_PANIC = 12,
} UdStatus;

/**
 * A normalized analytic function `f(z) = z + a_2 z^2 + ...`.
 */
typedef struct UdFunction UdFunction;

/**
 * Exponent region: a union of closed disks, segments and points.
 */
typedef struct UdRegion UdRegion;

typedef struct UdComplex {
  double re;
  double im;
} UdComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ud_version(void);

/**
 * Message for the last failed call on this thread, or NULL after a
 * successful one. Valid until the next `ud_*` call on the same thread.
 */
const char *ud_last_error_message(void);

/**
 * Builds a named function such as `"koebe"` or `"strongly-spirallike:0.3,0.6"`
 * with its series truncated at `order`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a writable pointer.
 */
enum UdStatus ud_function_from_zoo(const char *spec, size_t order, struct UdFunction **out);

/**
 * Builds a function from its Taylor coefficients `a_1, ..., a_len` where
 * `a_1` must be 1.
 *
 * # Safety
 * `coeffs` must point to `len` values and `out` must be writable.
 */
enum UdStatus ud_function_from_coefficients(const struct UdComplex *coeffs,
                                            size_t len,
                                            struct UdFunction **out);

/**
 * Builds a function from the JSON document `{"order": N, "coeffs": [[re, im], ...]}`
 * holding the series of `f(z)/z`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum UdStatus ud_function_from_json(const char *json, struct UdFunction **out);

/**
 * # Safety
 * `f` must be NULL or a handle from this library that is not used again.
 */
void ud_function_free(struct UdFunction *f);

/**
 * Power deformation `z (f(z)/z)^c`.
 *
 * # Safety
 * `f` must be a live handle and `out` a writable pointer.
 */
enum UdStatus ud_power_deform(const struct UdFunction *f,
                              struct UdComplex c,
                              struct UdFunction **out);

/**
 * Alexander transform: the integral of `f(t)/t` from 0 to `z`.
 *
 * # Safety
 * `f` must be a live handle and `out` a writable pointer.
 */
enum UdStatus ud_alexander(const struct UdFunction *f, struct UdFunction **out);

/**
 * Integral deformation: the integral of `f'(t)^c` from 0 to `z`.
 *
 * # Safety
 * `f` must be a live handle and `out` a writable pointer.
 */
enum UdStatus ud_integral_i(const struct UdFunction *f,
                            struct UdComplex c,
                            struct UdFunction **out);

/**
 * Integral deformation: the integral of `(f(t)/t)^c` from 0 to `z`.
 *
 * # Safety
 * `f` must be a live handle and `out` a writable pointer.
 */
enum UdStatus ud_integral_j(const struct UdFunction *f,
                            struct UdComplex c,
                            struct UdFunction **out);

/**
 * Truncation order of the stored series, or 0 for NULL.
 *
 * # Safety
 * `f` must be NULL or a live handle.
 */
size_t ud_function_order(const struct UdFunction *f);

/**
 * Copies `a_1, ..., a_{order+1}` into `buf`. `*len` always receives the
 * count; `UD_STATUS_BUFFER_TOO_SMALL` is returned when `cap` is short, so a
 * first call with `cap = 0` sizes the buffer.
 *
 * # Safety
 * `f` must be a live handle, `buf` must hold `cap` values (or be NULL when
 * `cap` is 0) and `len` must be writable.
 */
enum UdStatus ud_function_coefficients(const struct UdFunction *f,
                                       struct UdComplex *buf,
                                       size_t cap,
                                       size_t *len);

/**
 * `f(z)` for `|z| < 1` (series-only functions stop at the evaluation radius).
 *
 * # Safety
 * `f` must be a live handle and `out` a writable pointer.
 */
enum UdStatus ud_function_eval(const struct UdFunction *f,
                               struct UdComplex z,
                               struct UdComplex *out);

/**
 * `z f'(z) / f(z)`.
 *
 * # Safety
 * `f` must be a live handle and `out` a writable pointer.
 */
enum UdStatus ud_function_ratio(const struct UdFunction *f,
                                struct UdComplex z,
                                struct UdComplex *out);

/**
 * Serializes the series of `f(z)/z`. Release the string with
 * [`ud_string_free`].
 *
 * # Safety
 * `f` must be a live handle and `out` a writable pointer.
 */
enum UdStatus ud_function_to_json(const struct UdFunction *f, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not used again.
 */
void ud_string_free(char *s);

/**
 * Exponent region of a class: `name` is one of `S`, `C`, `K`, `S*`, `SS`,
 * `Sp`; pass NaN for an absent `lambda` or `alpha`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum UdStatus ud_region_for_class(const char *name,
                                  double lambda,
                                  double alpha,
                                  struct UdRegion **out);

/**
 * Classifies `c` with a boundary band of width `tol`.
 *
 * # Safety
 * `region` must be a live handle and `out` a writable pointer.
 */
enum UdStatus ud_region_contains(const struct UdRegion *region,
                                 struct UdComplex c,
                                 double tol,
                                 enum UdContainment *out);

/**
 * # Safety
 * `region` must be NULL or a handle from this library that is not used again.
 */
void ud_region_free(struct UdRegion *region);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNIDEFORM_H */
