/* Generated by cbindgen. Do not edit. */

#ifndef ZONOEHR_H
#define ZONOEHR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZonoDegree2Class {
  ZONO_DEGREE2_CLASS_WIDTH1_PRODUCT = 0,
  ZONO_DEGREE2_CLASS_EXCEPTIONAL = 1,
  ZONO_DEGREE2_CLASS_NOT_DEGREE2 = 2,
} ZonoDegree2Class;

typedef enum ZonoStatus {
  ZONO_STATUS_OK = 0,
  ZONO_STATUS_NULL_POINTER = 1,
  ZONO_STATUS_INVALID_ARGUMENT = 2,
  ZONO_STATUS_BUFFER_TOO_SMALL = 3,
  ZONO_STATUS_OVERFLOW = 4,
  ZONO_STATUS_DEGENERATE = 5,
  ZONO_STATUS_NON_LATTICE_TRANSLATE = 6,
  ZONO_STATUS_BUDGET_EXCEEDED = 7,
  ZONO_STATUS_CONTRADICTION = 8,
  ZONO_STATUS_MISMATCH = 9,
  ZONO_STATUS_PANIC = 10,
} ZonoStatus;

/**
 * Opaque zonotope handle.
 */
typedef struct ZonoZonotope ZonoZonotope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *zonoehr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *zonoehr_version(void);

/**
 * Creates a zonotope from `num_generators` generators of length `dim`, stored
 * row after row in `generators`. `translate_num`/`translate_den` may both be
 * null for the origin.
 *
 * # Safety
 * Pointers must be valid for the stated lengths; `out` must be writable.
 */
enum ZonoStatus zonoehr_zonotope_new(size_t dim,
                                     const int64_t *generators,
                                     size_t num_generators,
                                     const int64_t *translate_num,
                                     const int64_t *translate_den,
                                     struct ZonoZonotope **out);

/**
 * Creates a zonotope from a JSON document
 * `{"dim": d, "generators": [[...], ...], "translate": ["p/q", ...], "merge_parallel": bool}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum ZonoStatus zonoehr_zonotope_from_json(const char *json, struct ZonoZonotope **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `z` must come from this library and not be used afterwards.
 */
void zonoehr_zonotope_free(struct ZonoZonotope *z);

/**
 * Ambient dimension, or 0 for a null handle.
 *
 * # Safety
 * `z` must be null or a live handle.
 */
size_t zonoehr_zonotope_dim(const struct ZonoZonotope *z);

/**
 * Number of (nonzero) generators, or 0 for a null handle.
 *
 * # Safety
 * `z` must be null or a live handle.
 */
size_t zonoehr_zonotope_num_generators(const struct ZonoZonotope *z);

/**
 * Ehrhart polynomial from the gcd-of-minors formula: `dim + 1` ascending
 * integer coefficients. Requires an integer translate.
 *
 * # Safety
 * `coeffs` must hold `len` entries.
 */
enum ZonoStatus zonoehr_ehrhart(const struct ZonoZonotope *z, int64_t *coeffs, size_t len);

/**
 * Interpolant through brute-force lattice-point counts of the dilates
 * `0..=dim`: `dim + 1` ascending rational coefficients. `budget` 0 means the
 * default cell budget.
 *
 * # Safety
 * `num` and `den` must hold `len` entries.
 */
enum ZonoStatus zonoehr_ehrhart_oracle(const struct ZonoZonotope *z,
                                       uint64_t budget,
                                       int64_t *num,
                                       int64_t *den,
                                       size_t len);

/**
 * `c`-vector `(c_1, ..., c_dim)`; `valid` receives whether all entries are
 * nonnegative integers.
 *
 * # Safety
 * `num` and `den` must hold `len` entries; `valid` may be null.
 */
enum ZonoStatus zonoehr_cvector(const struct ZonoZonotope *z,
                                int64_t *num,
                                int64_t *den,
                                size_t len,
                                bool *valid);

/**
 * `h*`-vector `(h*_0, ..., h*_dim)`.
 *
 * # Safety
 * `num` and `den` must hold `len` entries; `valid` may be null.
 */
enum ZonoStatus zonoehr_hstar(const struct ZonoZonotope *z,
                              int64_t *num,
                              int64_t *den,
                              size_t len,
                              bool *valid);

/**
 * Degree of the `h*`-polynomial.
 *
 * # Safety
 * `degree` must be writable.
 */
enum ZonoStatus zonoehr_degree(const struct ZonoZonotope *z, size_t *degree);

/**
 * Interior lattice points: `|ehr(-1)|` when `count` is false, brute-force
 * enumeration within `budget` (0 for the default) when true.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZonoStatus zonoehr_interior_count(const struct ZonoZonotope *z,
                                       bool count,
                                       uint64_t budget,
                                       uint64_t *out);

/**
 * Lattice width and the lexicographically smallest primitive direction
 * attaining it (`len >= dim`).
 *
 * # Safety
 * `width` must be writable; `witness` must hold `len` entries.
 */
enum ZonoStatus zonoehr_lattice_width(const struct ZonoZonotope *z,
                                      uint64_t budget,
                                      int64_t *width,
                                      int64_t *witness,
                                      size_t len);

/**
 * Degree-2 classification of a full-dimensional 3D lattice zonotope (after
 * merging parallel generators). When non-null, `transform` (9 entries, row
 * major) and `shift` (3 entries) receive the unimodular map `x -> Ux + s`
 * onto `Q x [0,1]` or onto the exceptional parallelepiped.
 *
 * # Safety
 * `class_out` must be writable; `transform` and `shift` must be null or hold
 * 9 and 3 entries.
 */
enum ZonoStatus zonoehr_classify_3d_deg2(const struct ZonoZonotope *z,
                                         uint64_t budget,
                                         enum ZonoDegree2Class *class_out,
                                         int64_t *transform,
                                         int64_t *shift);

/**
 * Runs the checker named `scheme` (`scott`, `treutlein`, `zono2d`,
 * `zono3d-deg2`, `hstar2d`, `hstar3d-deg2`) on `n` rational coefficients.
 *
 * # Safety
 * `scheme` must be NUL-terminated; `num`/`den` must hold `n` entries;
 * `accepted` must be writable.
 */
enum ZonoStatus zonoehr_check(const char *scheme,
                              const int64_t *num,
                              const int64_t *den,
                              size_t n,
                              bool strict_treutlein,
                              bool *accepted);

/**
 * Like [`zonoehr_check`], returning the verdict as a JSON object with
 * `accepted`, `case_label`, `reason` and `witness`. Free the string with
 * `zonoehr_string_free`.
 *
 * # Safety
 * As for [`zonoehr_check`]; `out` must be writable.
 */
enum ZonoStatus zonoehr_check_json(const char *scheme,
                                   const int64_t *num,
                                   const int64_t *den,
                                   size_t n,
                                   bool strict_treutlein,
                                   char **out);

/**
 * `A^d_j(t)`: `d` ascending integer coefficients (degree below `d`).
 *
 * # Safety
 * `coeffs` must hold `len` entries.
 */
enum ZonoStatus zonoehr_eulerian(size_t d, size_t j, int64_t *coeffs, size_t len);

/**
 * The full Ehrhart report (the CLI's `ehrhart --json` output without
 * timings). Free the string with `zonoehr_string_free`.
 *
 * # Safety
 * `out` must be writable.
 */
enum ZonoStatus zonoehr_ehrhart_report_json(const struct ZonoZonotope *z,
                                            bool verify,
                                            uint64_t budget,
                                            char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void zonoehr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZONOEHR_H */
