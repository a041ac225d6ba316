#ifndef FPSD_H
#define FPSD_H

#if defined(FPSD_BUILDING)
#define FPSD_API __attribute__((visibility("default")))
#else
#define FPSD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values match the library's error codes. */
enum {
  FPSD_OK = 0,
  FPSD_E_VARIABLE_MISMATCH = 1,
  FPSD_E_NOT_A_UNIT,
  FPSD_E_UNSUPPORTED_EXPONENT,
  FPSD_E_AXIS_OUT_OF_RANGE,
  FPSD_E_NOT_REGULAR,
  FPSD_E_INSUFFICIENT_PRECISION,
  FPSD_E_SINGULAR_MATRIX,
  FPSD_E_NOT_FOUND_WITHIN_BUDGET,
  FPSD_E_ZERO_OPERATOR,
  FPSD_E_POLE_BUDGET_EXCEEDED,
  FPSD_E_NON_INTEGRABLE,
  FPSD_E_WRONG_VARIANT,
  FPSD_E_PRECONDITION_VIOLATED,
  FPSD_E_NOT_REGULAR_LEADING_COEFFICIENT,
  FPSD_E_BOUND_OVERFLOW,
  FPSD_E_SYNTAX,
  FPSD_E_INVALID_ARGUMENT,
  FPSD_E_INTERNAL = 100
};

typedef struct fpsd_request fpsd_request;
typedef struct fpsd_result fpsd_result;
typedef struct fpsd_series fpsd_series;

FPSD_API const char* fpsd_version(void);
FPSD_API const char* fpsd_status_name(int status);

/* Commands. Keys for fpsd_request_set: subcommand, vars, trunc, pole-bound,
   zeta-bound, pmax, smax, steps, schedule, module, element, f, oracle, machine.
   Keys for fpsd_request_add: arg, element, coeff. */
FPSD_API fpsd_request* fpsd_request_new(const char* verb);
FPSD_API int fpsd_request_set(fpsd_request* req, const char* key, const char* value);
FPSD_API int fpsd_request_add(fpsd_request* req, const char* key, const char* value);
FPSD_API void fpsd_request_free(fpsd_request* req);

/* Always produces a result (also for failed commands); returns FPSD_OK or
   FPSD_E_INTERNAL when no result could be built. */
FPSD_API int fpsd_run(const fpsd_request* req, fpsd_result** out);
FPSD_API int fpsd_result_exit_code(const fpsd_result* res);
FPSD_API const char* fpsd_result_output(const fpsd_result* res);
FPSD_API const char* fpsd_result_error(const fpsd_result* res);
FPSD_API void fpsd_result_free(fpsd_result* res);

/* Series. trunc < 0 means no truncation. */
FPSD_API int fpsd_series_parse(const char* text, int num_vars, int trunc, fpsd_series** out);
FPSD_API int fpsd_series_multiply(const fpsd_series* a, const fpsd_series* b, fpsd_series** out);
FPSD_API int fpsd_series_precision(const fpsd_series* s);
/* Caller frees with fpsd_string_free. */
FPSD_API char* fpsd_series_to_string(const fpsd_series* s);
FPSD_API void fpsd_series_free(fpsd_series* s);
FPSD_API void fpsd_string_free(char* s);

/* Message of the last failed call on this thread. */
FPSD_API const char* fpsd_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
