#ifndef ALMOST_CIRCLES_H
#define ALMOST_CIRCLES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AcStatus {
  AC_STATUS_OK = 0,
  AC_STATUS_NULL_POINTER = 1,
  AC_STATUS_INVALID_UTF8 = 2,
  AC_STATUS_INVALID_INPUT = 3,
  AC_STATUS_NOT_CONVEX_GEOMETRY = 4,
  AC_STATUS_VERIFICATION_FAILED = 5,
  AC_STATUS_INTERNAL = 6,
} AcStatus;

/**
 * A labelled family of almost-circles read from a certificate.
 */
typedef struct AcFamily AcFamily;

/**
 * A closure system on `{1, …, n}`.
 */
typedef struct AcGeometry AcGeometry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *ac_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ac_string_free(char *s);

/**
 * Parses `{"n", "closed_sets"}` or `{"n", "orders"}` JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AcStatus ac_geometry_from_json(const char *json, struct AcGeometry **out);

/**
 * # Safety
 * `geometry` must be null or a handle from [`ac_geometry_from_json`], not yet freed.
 */
void ac_geometry_free(struct AcGeometry *geometry);

/**
 * # Safety
 * `geometry` must be a live handle and `n` a valid pointer.
 */
enum AcStatus ac_geometry_size(const struct AcGeometry *geometry, size_t *n);

/**
 * Writes whether the geometry satisfies anti-exchange. When it does not and
 * the witness pointers are non-null, they receive the first `(A, x, y)`, with
 * `A` as a bit mask (bit `e − 1` for element `e`).
 *
 * # Safety
 * `geometry` must be a live handle, `is_convex` valid, the witness pointers
 * valid or null.
 */
enum AcStatus ac_geometry_is_convex(const struct AcGeometry *geometry,
                                    bool *is_convex,
                                    uint32_t *witness_set,
                                    size_t *witness_x,
                                    size_t *witness_y);

/**
 * # Safety
 * `geometry` must be a live handle and `closure` a valid pointer.
 */
enum AcStatus ac_geometry_closure(const struct AcGeometry *geometry,
                                  uint32_t mask,
                                  uint32_t *closure);

/**
 * # Safety
 * `geometry` must be a live handle and `dimension` a valid pointer.
 */
enum AcStatus ac_geometry_convex_dimension(const struct AcGeometry *geometry, size_t *dimension);

/**
 * Builds and verifies a representation and writes its certificate JSON.
 * `multiplicity == 0` derives `m` from `epsilon`; `family_id` may be null.
 * A certificate whose verdict fails is still written, with status
 * `VerificationFailed`.
 *
 * # Safety
 * `geometry` must be a live handle, `family_id` null or NUL-terminated,
 * `certificate_json` a valid pointer.
 */
enum AcStatus ac_represent(const struct AcGeometry *geometry,
                           double epsilon,
                           size_t multiplicity,
                           const char *family_id,
                           char **certificate_json);

/**
 * Re-checks a certificate. `report_json`, if non-null, receives the full
 * report. Returns `VerificationFailed` when any check fails.
 *
 * # Safety
 * `certificate_json` must be NUL-terminated, `pass` valid, `report_json`
 * valid or null.
 */
enum AcStatus ac_verify_certificate(const char *certificate_json, bool *pass, char **report_json);

/**
 * `f_α(x) = x(1 − x) − α·x⁵(1 − x)²` for `α ∈ (0, 1)`, `x ∈ [0, 1]`.
 *
 * # Safety
 * `value` must be a valid pointer.
 */
enum AcStatus ac_good_function_eval(double alpha, double x, double *value);

/**
 * # Safety
 * `m` must be a valid pointer.
 */
enum AcStatus ac_multiplicity_for_accuracy(size_t t, double epsilon, size_t *m);

/**
 * Loads the member curves of a certificate, labelled by their elements.
 *
 * # Safety
 * `certificate_json` must be NUL-terminated and `out` a valid pointer.
 */
enum AcStatus ac_family_from_certificate(const char *certificate_json, struct AcFamily **out);

/**
 * # Safety
 * `family` must be null or a handle from [`ac_family_from_certificate`], not yet freed.
 */
void ac_family_free(struct AcFamily *family);

/**
 * # Safety
 * `family` must be a live handle and `n` a valid pointer.
 */
enum AcStatus ac_family_size(const struct AcFamily *family, size_t *n);

/**
 * Labels of the members inside the convex hull of the members in `mask`.
 *
 * # Safety
 * `family` must be a live handle and `hull` a valid pointer.
 */
enum AcStatus ac_family_hull(const struct AcFamily *family, uint32_t mask, uint32_t *hull);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALMOST_CIRCLES_H */
