#ifndef SEMIGROUP_HARMONIC_H
#define SEMIGROUP_HARMONIC_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum SghStatus {
  SGH_STATUS_OK = 0,
  SGH_STATUS_INTERNAL = 1,
  SGH_STATUS_PARSE = 2,
  SGH_STATUS_STRUCTURE = 3,
  SGH_STATUS_PRECONDITION = 4,
  SGH_STATUS_NULL_POINTER = 5,
  SGH_STATUS_INVALID_UTF8 = 6,
  SGH_STATUS_BUFFER_TOO_SMALL = 7,
  SGH_STATUS_PANIC = 8,
} SghStatus;

/**
 * A matrix-valued function on a semigroup.
 */
typedef struct SghMap SghMap;

/**
 * A validated finite inverse semigroup with zero.
 */
typedef struct SghSemigroup SghSemigroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *sgh_version(void);

/**
 * Message of the most recent failure on this thread, or null. Valid until
 * the next library call on the same thread.
 */
const char *sgh_last_error_message(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sgh_string_free(char *s);

/**
 * Load a semigroup from a builtin reference (`builtin:kind:n`) or a JSON file path.
 *
 * # Safety
 * `reference` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SghStatus sgh_semigroup_load(const char *reference, struct SghSemigroup **out);

/**
 * Build a semigroup from an inline JSON table.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SghStatus sgh_semigroup_from_json(const char *json, struct SghSemigroup **out);

/**
 * # Safety
 * `sg` must be null or a handle from this library that has not been freed.
 */
void sgh_semigroup_free(struct SghSemigroup *sg);

/**
 * Number of elements, zero included.
 *
 * # Safety
 * `sg` must be a live handle and `out` a valid pointer.
 */
enum SghStatus sgh_semigroup_order(const struct SghSemigroup *sg, uintptr_t *out);

/**
 * Dimensions of the induced irreducible representations.
 *
 * Writes the count to `count` and, when `capacity` suffices, the dimensions
 * to `dims`. Pass `dims = NULL, capacity = 0` to query the count.
 *
 * # Safety
 * `sg` must be a live handle, `count` valid, and `dims` valid for `capacity` entries.
 */
enum SghStatus sgh_semigroup_irrep_dims(const struct SghSemigroup *sg,
                                        uint64_t seed,
                                        uintptr_t *dims,
                                        uintptr_t capacity,
                                        uintptr_t *count);

/**
 * JSON structure report, the same document `sgharm analyze` puts under `result`.
 *
 * # Safety
 * `reference` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SghStatus sgh_analyze_json(const char *reference, uint64_t seed, char **out);

/**
 * Parse a map document. Relative semigroup paths resolve against the working directory.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SghStatus sgh_map_from_json(const char *json, struct SghMap **out);

/**
 * Load a map document from a file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SghStatus sgh_map_load(const char *path, struct SghMap **out);

/**
 * # Safety
 * `map` must be null or a handle from this library that has not been freed.
 */
void sgh_map_free(struct SghMap *map);

/**
 * Fourier data of a map over all induced irreps, as JSON.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum SghStatus sgh_map_fourier_json(const struct SghMap *map, uint64_t seed, char **out);

/**
 * Largest entrywise error of transforming and inverting a map.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum SghStatus sgh_map_roundtrip_error(const struct SghMap *map, uint64_t seed, double *out);

/**
 * Positive-definiteness verdicts under every characterization, with the
 * per-irrep transform checks, as JSON.
 *
 * # Safety
 * `map` must be a live handle and `out` a valid pointer.
 */
enum SghStatus sgh_map_bochner_json(const struct SghMap *map,
                                    uint64_t seed,
                                    double tol,
                                    char **out);

/**
 * Complete positivity of a map on a matrix-units semigroup via its Choi matrix.
 *
 * # Safety
 * `map` must be a live handle; `is_cp` and `min_eigenvalue` valid pointers.
 */
enum SghStatus sgh_map_cp_check(const struct SghMap *map,
                                double tol,
                                bool *is_cp,
                                double *min_eigenvalue);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEMIGROUP_HARMONIC_H */
