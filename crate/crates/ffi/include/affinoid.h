#ifndef AFFINOID_H
#define AFFINOID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call. Values match the CLI exit codes where they
 * overlap.
 */
typedef enum AffinoidStatus {
  AFFINOID_STATUS_OK = 0,
  /**
   * The call succeeded and produced a report with a failing check.
   */
  AFFINOID_STATUS_CHECK_FAILED = 1,
  /**
   * Malformed JSON, unknown names, or shapes that do not fit.
   */
  AFFINOID_STATUS_INVALID_INPUT = 2,
  AFFINOID_STATUS_NULL_POINTER = 3,
  AFFINOID_STATUS_INVALID_UTF8 = 4,
  /**
   * A panic was caught at the boundary.
   */
  AFFINOID_STATUS_INTERNAL = 5,
} AffinoidStatus;

/**
 * Opaque handle to a multivector field, form, tensor or algebroid section.
 */
typedef struct AffinoidField AffinoidField;

/**
 * Opaque handle to a validated groupoid.
 */
typedef struct AffinoidGroupoid AffinoidGroupoid;

/**
 * Opaque handle to a check report.
 */
typedef struct AffinoidReport AffinoidReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *affinoid_last_error(void);

/**
 * Library version as a static string.
 */
const char *affinoid_version(void);

/**
 * Loads a groupoid from `catalog:<id>` or a JSON file path.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum AffinoidStatus affinoid_groupoid_load(const char *spec, struct AffinoidGroupoid **out);

/**
 * Parses a groupoid from its JSON text.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum AffinoidStatus affinoid_groupoid_from_json(const char *json, struct AffinoidGroupoid **out);

/**
 * Dimension of the arrows, or 0 for a null handle.
 *
 * # Safety
 * `gp` must be null or a handle from this library.
 */
size_t affinoid_groupoid_dim(const struct AffinoidGroupoid *gp);

/**
 * # Safety
 * `gp` must be null or a handle from this library, freed at most once.
 */
void affinoid_groupoid_free(struct AffinoidGroupoid *gp);

/**
 * Parses a field document. The groupoid named in the document, if any, is
 * ignored; pass the groupoid to the check functions instead.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum AffinoidStatus affinoid_field_from_json(const char *json, struct AffinoidField **out);

/**
 * # Safety
 * `field` must be null or a handle from this library, freed at most once.
 */
void affinoid_field_free(struct AffinoidField *field);

/**
 * Runs a named predicate (`affine-mv`, `isotropy`, ...) on a field.
 * Returns `Ok` or `CheckFailed` with the report stored in `out`; `samples`
 * of 0 selects the default.
 *
 * # Safety
 * Handles must come from this library, `predicate` must be a
 * nul-terminated string and `out` a valid pointer.
 */
enum AffinoidStatus affinoid_check_predicate(const struct AffinoidGroupoid *gp,
                                             const struct AffinoidField *field,
                                             const char *predicate,
                                             uint64_t seed,
                                             bool sampled,
                                             size_t samples,
                                             struct AffinoidReport **out);

/**
 * Runs a named suite (`full`, `groupoid`, `mv`, `forms`, `tensors`) on one
 * groupoid, or on the whole catalog when `gp` is null.
 *
 * # Safety
 * `gp` must be null or a handle from this library, `suite` a
 * nul-terminated string and `out` a valid pointer.
 */
enum AffinoidStatus affinoid_run_suite(const char *suite,
                                       const struct AffinoidGroupoid *gp,
                                       uint64_t seed,
                                       bool sampled,
                                       size_t samples,
                                       struct AffinoidReport **out);

/**
 * Whether every check in the report passed; false for a null handle.
 *
 * # Safety
 * `report` must be null or a handle from this library.
 */
bool affinoid_report_passed(const struct AffinoidReport *report);

/**
 * Number of failing checks; 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a handle from this library.
 */
size_t affinoid_report_failed(const struct AffinoidReport *report);

/**
 * The report as JSON. Free the string with [`affinoid_string_free`];
 * null for a null handle.
 *
 * # Safety
 * `report` must be null or a handle from this library.
 */
char *affinoid_report_json(const struct AffinoidReport *report);

/**
 * # Safety
 * `report` must be null or a handle from this library, freed at most once.
 */
void affinoid_report_free(struct AffinoidReport *report);

/**
 * Exports a catalog groupoid (by id) or fixture (by name) as JSON into
 * `out`; free it with [`affinoid_string_free`].
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum AffinoidStatus affinoid_catalog_export(const char *name, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most
 * once.
 */
void affinoid_string_free(char *s);

/**
 * Loads a field document from a JSON file.
 *
 * # Safety
 * `path` must be a nul-terminated string and `out` a valid pointer.
 */
enum AffinoidStatus affinoid_field_load(const char *path, struct AffinoidField **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFFINOID_H */
