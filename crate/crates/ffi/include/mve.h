#ifndef MVE_H
#define MVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MveStatus {
  MVE_STATUS_OK = 0,
  MVE_STATUS_NULL_POINTER = 1,
  MVE_STATUS_INVALID_UTF8 = 2,
  MVE_STATUS_PARSE_ERROR = 3,
  MVE_STATUS_INVALID_ARGUMENT = 4,
  MVE_STATUS_SOLVER_ERROR = 5,
  MVE_STATUS_PANIC = 6,
} MveStatus;

typedef enum MveViolation {
  MVE_VIOLATION_NONE = 0,
  MVE_VIOLATION_EDGE_NOT_IN_GRAPH = 1,
  MVE_VIOLATION_OVER_BUDGET = 2,
  MVE_VIOLATION_DISTANCE_MISMATCH = 3,
  MVE_VIOLATION_DISTANCE_TOO_SMALL = 4,
} MveViolation;

/**
 * Opaque instance handle.
 */
typedef struct MveInstance MveInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *mve_last_error(void);

/**
 * Library version as a static string.
 */
const char *mve_version(void);

/**
 * Parses the text instance format (1-indexed ids, `# k` / `# ell` hints).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum MveStatus mve_instance_parse(const char *text, struct MveInstance **out);

/**
 * Builds an instance from `m` edges given as parallel arrays.
 *
 * # Safety
 * `us`, `vs` and `lengths` must each point to `m` readable elements (or be
 * null when `m == 0`); `out` must be a valid pointer.
 */
enum MveStatus mve_instance_new(size_t n,
                                const size_t *us,
                                const size_t *vs,
                                const uint64_t *lengths,
                                size_t m,
                                size_t s,
                                size_t t,
                                size_t k,
                                uint64_t ell,
                                struct MveInstance **out);

/**
 * Releases an instance. Null is ignored.
 *
 * # Safety
 * `instance` must come from this library and not be used afterwards.
 */
void mve_instance_free(struct MveInstance *instance);

/**
 * # Safety
 * `instance` must be a live handle or null (which yields 0).
 */
size_t mve_instance_vertex_count(const struct MveInstance *instance);

/**
 * # Safety
 * `instance` must be a live handle or null (which yields 0).
 */
size_t mve_instance_edge_count(const struct MveInstance *instance);

/**
 * Replaces the budget and target.
 *
 * # Safety
 * `instance` must be a live handle.
 */
enum MveStatus mve_instance_set_query(struct MveInstance *instance, size_t k, uint64_t ell);

/**
 * Writes the instance in the text format.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum MveStatus mve_instance_emit(const struct MveInstance *instance, char **out);

/**
 * Solves and stores the JSON result (same schema as `mve solve`, with
 * 1-indexed edge ids) in `*json_out`. `algorithm` and `variant` take the
 * command-line names; `timeout_ms == 0` means no limit.
 *
 * # Safety
 * `instance` must be a live handle, the strings nul-terminated, `json_out`
 * a valid pointer.
 */
enum MveStatus mve_solve(const struct MveInstance *instance,
                         const char *algorithm,
                         const char *variant,
                         bool kernelize,
                         uint64_t timeout_ms,
                         char **json_out);

/**
 * Checks a deletion set (0-indexed edge ids) against the instance's budget
 * and target; the outcome goes to `*violation`.
 *
 * # Safety
 * `edges` must point to `len` readable ids (or be null when `len == 0`);
 * `instance` must be a live handle and `violation` a valid pointer.
 */
enum MveStatus mve_verify(const struct MveInstance *instance,
                          const size_t *edges,
                          size_t len,
                          enum MveViolation *violation);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mve_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MVE_H */
