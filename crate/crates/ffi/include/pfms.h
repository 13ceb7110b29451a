#ifndef PFMS_H
#define PFMS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PFMS_STATUS_OK = 0,
  PFMS_STATUS_NULL_ARGUMENT = 1,
  PFMS_STATUS_INVALID_UTF8 = 2,
  PFMS_STATUS_PARSE_ERROR = 3,
  PFMS_STATUS_ENGINE_ERROR = 4,
  // Output text contained a NUL byte and cannot be returned as a C string.
  PFMS_STATUS_INTERIOR_NUL = 5,
  PFMS_STATUS_PANIC = 6,
} PfmsStatus;

// Parsed, validated model.
typedef struct PfmsModel PfmsModel;

// Decomposition of a model into microservices.
typedef struct PfmsResult PfmsResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses `.pfm` source text.
//
// On success `*out` receives a new model; on failure it is set to NULL and
// the last error message lists every diagnostic, one per line.
//
// # Safety
// `source` must be a valid NUL-terminated string and `out` a valid pointer.
PfmsStatus pfms_model_parse(const char *source, PfmsModel **out);

// Releases a model. NULL is ignored.
//
// # Safety
// `model` must come from [`pfms_model_parse`] and not be freed twice.
void pfms_model_free(PfmsModel *model);

// Number of problem diagrams, or 0 for NULL.
//
// # Safety
// `model` must be NULL or a live model handle.
size_t pfms_model_diagram_count(const PfmsModel *model);

// Canonical `.pfm` text for the model.
//
// # Safety
// `model` must be a live model handle and `out` a valid pointer.
PfmsStatus pfms_model_serialize(const PfmsModel *model, char **out);

// Decomposes a model into microservices.
//
// # Safety
// `model` must be a live model handle and `out` a valid pointer.
PfmsStatus pfms_decompose(const PfmsModel *model, PfmsResult **out);

// Releases a result. NULL is ignored.
//
// # Safety
// `result` must come from [`pfms_decompose`] and not be freed twice.
void pfms_result_free(PfmsResult *result);

// Number of microservices, or 0 for NULL.
//
// # Safety
// `result` must be NULL or a live result handle.
size_t pfms_result_microservice_count(const PfmsResult *result);

// Number of warnings in the decision trace, or 0 for NULL.
//
// # Safety
// `result` must be NULL or a live result handle.
size_t pfms_result_warning_count(const PfmsResult *result);

// The JSON report.
//
// # Safety
// `result` must be a live result handle and `out` a valid pointer.
PfmsStatus pfms_result_to_json(const PfmsResult *result, char **out);

// DOT graph of the whole architecture.
//
// # Safety
// `result` must be a live result handle and `out` a valid pointer.
PfmsStatus pfms_result_architecture_dot(const PfmsResult *result, char **out);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void pfms_string_free(char *s);

// Message for the last failed call on this thread, or NULL if the last call
// succeeded. Valid until the next call into the library on the same thread.
const char *pfms_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PFMS_H */
