#ifndef FQGALOIS_H
#define FQGALOIS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call.
 */
typedef enum FqgStatus {
  FQG_OK = 0,
  /**
   * A required pointer argument was null.
   */
  FQG_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  FQG_INVALID_UTF8 = 2,
  /**
   * Field, polynomial or permutation text did not parse.
   */
  FQG_PARSE_ERROR = 3,
  /**
   * An argument was outside the supported domain.
   */
  FQG_INVALID_ARGUMENT = 4,
  /**
   * The computation could not be completed (budget, precision, catalog).
   */
  FQG_COMPUTATION_ERROR = 5,
  /**
   * A verification ran and at least one check failed.
   */
  FQG_VERIFICATION_FAILED = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  FQG_PANIC = 7,
} FqgStatus;

/**
 * A catalog of transitive permutation groups.
 */
typedef struct FqgCatalog FqgCatalog;

/**
 * A finite field F_q.
 */
typedef struct FqgField FqgField;

/**
 * A polynomial in F_q[t][x].
 */
typedef struct FqgPoly FqgPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *fqg_version(void);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *fqg_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from an `fqg_*` out-parameter and not be freed twice.
 */
void fqg_string_free(char *s);

/**
 * Creates a field from `spec`: a prime `p`, `p^k`, or a tag such as
 * `GF(2^3;z^3+z+1)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum FqgStatus fqg_field_new(const char *spec, struct FqgField **out);

/**
 * # Safety
 * `field` must come from [`fqg_field_new`] and not be freed twice.
 */
void fqg_field_free(struct FqgField *field);

/**
 * The field's canonical tag, e.g. `GF(2^3;z^3+z+1)`.
 *
 * # Safety
 * Pointers must be valid; free the result with [`fqg_string_free`].
 */
enum FqgStatus fqg_field_tag(const struct FqgField *field, char **out);

/**
 * Parses a polynomial in x and t over `field`.
 *
 * # Safety
 * Pointers must be valid; `text` NUL-terminated.
 */
enum FqgStatus fqg_poly_parse(const struct FqgField *field, const char *text, struct FqgPoly **out);

/**
 * # Safety
 * `poly` must come from [`fqg_poly_parse`] and not be freed twice.
 */
void fqg_poly_free(struct FqgPoly *poly);

/**
 * Canonical text of the polynomial.
 *
 * # Safety
 * Pointers must be valid; free the result with [`fqg_string_free`].
 */
enum FqgStatus fqg_poly_to_string(const struct FqgPoly *poly, char **out);

/**
 * Degree in x; the zero polynomial is an invalid argument.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FqgStatus fqg_poly_degree_x(const struct FqgPoly *poly, size_t *out);

/**
 * The catalog shipped with the library.
 *
 * # Safety
 * `out` must be writable.
 */
enum FqgStatus fqg_catalog_shipped(struct FqgCatalog **out);

/**
 * Loads a catalog from a JSON file.
 *
 * # Safety
 * `path` must be NUL-terminated; `out` must be writable.
 */
enum FqgStatus fqg_catalog_load(const char *path, struct FqgCatalog **out);

/**
 * # Safety
 * `catalog` must come from this library and not be freed twice.
 */
void fqg_catalog_free(struct FqgCatalog *catalog);

/**
 * Identifies the Galois group of the monic `poly`. `catalog` may be null
 * for the shipped catalog. Writes the evidence report as JSON.
 *
 * # Safety
 * Pointers must be valid; free the result with [`fqg_string_free`].
 */
enum FqgStatus fqg_identify(const struct FqgPoly *poly,
                            const struct FqgCatalog *catalog,
                            uint32_t sweep_degree,
                            char **json_out);

/**
 * Least additive multiple of `poly`, or the least affine relation when
 * `affine` is true, as JSON.
 *
 * # Safety
 * Pointers must be valid; free the result with [`fqg_string_free`].
 */
enum FqgStatus fqg_additive(const struct FqgPoly *poly, bool affine, char **json_out);

/**
 * Cycle shape of `poly` specialized at `point`: a field element such as
 * `1`, or a monic irreducible polynomial in t such as `t^3+t^2+1`.
 * Writes e.g. `[21,3]`, or an empty string when the specialization drops
 * degree or is not squarefree.
 *
 * # Safety
 * Pointers must be valid; free the result with [`fqg_string_free`].
 */
enum FqgStatus fqg_specialize_shape(const struct FqgPoly *poly, const char *point, char **out);

/**
 * Runs the Fano/Serre checks modulo t^precision and writes the report.
 * The report is written even when the status is FQG_VERIFICATION_FAILED.
 *
 * # Safety
 * `json_out` must be writable; free the result with [`fqg_string_free`].
 */
enum FqgStatus fqg_fano_verify(uint32_t precision, char **json_out);

/**
 * Runs the M11 checks modulo t^precision and writes the report.
 *
 * # Safety
 * `json_out` must be writable; free the result with [`fqg_string_free`].
 */
enum FqgStatus fqg_m11_verify(uint32_t precision, char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FQGALOIS_H */
