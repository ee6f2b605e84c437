#ifndef FNLAB_FNLAB_H
#define FNLAB_FNLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(FNLAB_BUILDING)
#define FNLAB_API __attribute__((visibility("default")))
#else
#define FNLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum fnlab_status {
  FNLAB_OK = 0,
  FNLAB_PROPERTY_FAILED = 1,
  FNLAB_INPUT_ERROR = 2,
  FNLAB_PRECONDITION_FAILED = 3,
  FNLAB_INTERNAL_ERROR = 4
} fnlab_status;

typedef enum fnlab_level {
  FNLAB_LEVEL_L1 = 0,
  FNLAB_LEVEL_L12 = 1,
  FNLAB_LEVEL_FN13 = 2,
  FNLAB_LEVEL_FN123 = 3
} fnlab_level;

typedef struct fnlab_algebra fnlab_algebra;
typedef struct fnlab_form fnlab_form;
typedef struct fnlab_report fnlab_report;

/* Message describing the most recent failure on the calling thread. */
FNLAB_API const char* fnlab_last_error(void);

/* Strings returned through char** out-parameters are released with this. */
FNLAB_API void fnlab_string_free(char* s);

/* Weil algebra of an infinitesimal object given as JSON {"n":..,"p":[[..]],"bounds":[..]}. */
FNLAB_API fnlab_status fnlab_algebra_new(const char* object_json, fnlab_algebra** out);
FNLAB_API void fnlab_algebra_free(fnlab_algebra* a);
FNLAB_API size_t fnlab_algebra_dim(const fnlab_algebra* a);
/* {"object":..,"dim":..,"basis":[[exponents]..],"names":[..]} */
FNLAB_API fnlab_status fnlab_algebra_describe(const fnlab_algebra* a, char** out_json);

FNLAB_API fnlab_status fnlab_form_parse(const char* form_json, fnlab_form** out);
FNLAB_API void fnlab_form_free(fnlab_form* f);
FNLAB_API int fnlab_form_arity(const fnlab_form* f);
FNLAB_API int fnlab_form_dim(const fnlab_form* f);
FNLAB_API fnlab_status fnlab_form_to_json(const fnlab_form* f, char** out_json);
/* FNLAB_OK when the form is tagged with a class at least as strong as the one
   `level` needs and meets its predicates, else
   FNLAB_PRECONDITION_FAILED with the failed predicate in fnlab_last_error(). */
FNLAB_API fnlab_status fnlab_form_check(const fnlab_form* f, fnlab_level level);

FNLAB_API fnlab_status fnlab_bracket(const fnlab_form* x, const fnlab_form* y, fnlab_level level, fnlab_form** out);

/* Runs the verification suites. config_json may be NULL for the defaults.
   Returns FNLAB_OK or FNLAB_PROPERTY_FAILED; the report is available in both cases. */
FNLAB_API fnlab_status fnlab_verify(const char* config_json, fnlab_report** out);
FNLAB_API void fnlab_report_free(fnlab_report* r);
FNLAB_API int fnlab_report_passed(const fnlab_report* r);
FNLAB_API fnlab_status fnlab_report_to_json(const fnlab_report* r, int include_timing, char** out_json);

/* Three-term defect for flows of three vector fields (polynomial-map JSON) at
   `points` random points, or at the points of points_json when non-NULL. */
FNLAB_API fnlab_status fnlab_jacobi3_fields(const char* x_json, const char* y_json, const char* z_json, const char* points_json,
                                  uint64_t seed, int points, char** out_json);
/* Three-term defect for `count` random compatible configurations. */
FNLAB_API fnlab_status fnlab_jacobi3_random(uint64_t seed, int count, int m, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
