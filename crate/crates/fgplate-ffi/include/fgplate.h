#ifndef FGPLATE_H
#define FGPLATE_H

/* Generated by cbindgen from the fgplate-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every FFI call.
 */
typedef enum FgplateStatus {
  /**
   * Success.
   */
  FGPLATE_STATUS_OK = 0,
  /**
   * A pointer argument was null or otherwise unusable.
   */
  FGPLATE_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The configuration failed to parse or validate.
   */
  FGPLATE_STATUS_CONFIG_ERROR = 2,
  /**
   * Assembly or solution failed.
   */
  FGPLATE_STATUS_SOLVER_ERROR = 3,
  /**
   * An index was out of range for the queried result.
   */
  FGPLATE_STATUS_OUT_OF_RANGE = 4,
} FgplateStatus;

/**
 * Opaque parsed configuration.
 */
typedef struct FgplateConfig FgplateConfig;

/**
 * Opaque analysis result.
 */
typedef struct FgplateResult FgplateResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or null.
 * The pointer stays valid until the next failing call on the thread.
 */
const char *fgplate_last_error(void);

/**
 * Library version as a static string.
 */
const char *fgplate_version(void);

/**
 * Parse and validate a JSON configuration.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On success `*out` owns a config that must be released with
 * [`fgplate_config_free`].
 */
enum FgplateStatus fgplate_config_parse(const char *json, struct FgplateConfig **out);

/**
 * Release a config handle. Null is ignored.
 *
 * # Safety
 * `config` must come from [`fgplate_config_parse`] and not be freed twice.
 */
void fgplate_config_free(struct FgplateConfig *config);

/**
 * Run the analysis described by the config.
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid. On success `*out`
 * owns a result that must be released with [`fgplate_result_free`].
 */
enum FgplateStatus fgplate_run(const struct FgplateConfig *config, struct FgplateResult **out);

/**
 * Release a result handle. Null is ignored.
 *
 * # Safety
 * `result` must come from [`fgplate_run`] and not be freed twice.
 */
void fgplate_result_free(struct FgplateResult *result);

/**
 * Number of rows of the given kind in the result: 0 = static, 1 = modal,
 * 2 = convergence, 3 = profiles.
 *
 * # Safety
 * `result` must be a live handle.
 */
uintptr_t fgplate_result_row_count(const struct FgplateResult *result, uint32_t kind);

/**
 * Frequency parameter Ω of one mode of one modal (or convergence) row.
 *
 * # Safety
 * `result` and `out` must be valid pointers.
 */
enum FgplateStatus fgplate_result_omega(const struct FgplateResult *result,
                                        uintptr_t row,
                                        uintptr_t mode,
                                        double *out);

/**
 * Nondimensional value of one static-row field. Field names: "u", "v",
 * "w", "sxx", "syy", "sxy", "sxz", "syz".
 *
 * # Safety
 * All pointers must be valid; `field` must be NUL-terminated.
 */
enum FgplateStatus fgplate_result_static_value(const struct FgplateResult *result,
                                               uintptr_t row,
                                               const char *field,
                                               double *out);

/**
 * Serialize the full result (rows + provenance) to a JSON string owned
 * by the library; free it with [`fgplate_string_free`].
 *
 * # Safety
 * `result` and `out` must be valid pointers.
 */
enum FgplateStatus fgplate_result_to_json(const struct FgplateResult *result, char **out);

/**
 * Free a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from a fgplate function that documents this contract.
 */
void fgplate_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FGPLATE_H */
