#ifndef GCYC_GCYC_H
#define GCYC_GCYC_H

/* C interface to the gcyc library. Every handle is opaque and owned by the
 * caller; every fallible call returns a gcyc_status and records the error on
 * the context. Strings returned by the library stay valid until the owning
 * handle is freed or the next call on the same context. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GCYC_API __declspec(dllexport)
#elif defined(__GNUC__)
#define GCYC_API __attribute__((visibility("default")))
#else
#define GCYC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gcyc_status {
  GCYC_OK = 0,
  GCYC_VIOLATION = 1,           /* a check ran and found a violation; the report holds the witness */
  GCYC_INPUT_ERROR = 2,
  GCYC_NO_CONVERGENCE = 3,
  GCYC_HYPOTHESIS_VIOLATED = 4, /* a precondition of the requested operation fails */
  GCYC_INTERNAL_ERROR = 5
} gcyc_status;

typedef enum gcyc_map_kind {
  GCYC_MAP_CYCLIC = 0, /* A -> B and B -> A */
  GCYC_MAP_A_TO_B = 1,
  GCYC_MAP_B_TO_A = 2
} gcyc_map_kind;

typedef struct gcyc_context gcyc_context;
typedef struct gcyc_space gcyc_space;
typedef struct gcyc_map gcyc_map;
typedef struct gcyc_gauge gcyc_gauge;
typedef struct gcyc_report gcyc_report;

GCYC_API const char* gcyc_version(void);
GCYC_API const char* gcyc_status_name(gcyc_status status);

GCYC_API gcyc_context* gcyc_context_new(void);
GCYC_API void gcyc_context_free(gcyc_context* ctx);
/* Strict mode turns unknown fields and a missing schema into input errors. */
GCYC_API void gcyc_context_set_strict(gcyc_context* ctx, int strict);
GCYC_API const char* gcyc_last_error(const gcyc_context* ctx);
/* {"code": ..., "message": ..., "detail": ...} or "null". */
GCYC_API const char* gcyc_last_error_json(const gcyc_context* ctx);
GCYC_API size_t gcyc_warning_count(const gcyc_context* ctx);
GCYC_API const char* gcyc_warning(const gcyc_context* ctx, size_t index);
GCYC_API void gcyc_clear_warnings(gcyc_context* ctx);

GCYC_API gcyc_status gcyc_space_load(gcyc_context* ctx, const char* json_text, gcyc_space** out);
GCYC_API void gcyc_space_free(gcyc_space* space);
GCYC_API size_t gcyc_space_size(const gcyc_space* space);
/* Pair geometry and the structural predicates of the instance. */
GCYC_API gcyc_status gcyc_space_predicates(gcyc_context* ctx, const gcyc_space* space, gcyc_report** out);

GCYC_API gcyc_status gcyc_map_load(gcyc_context* ctx, const gcyc_space* space, const char* json_text,
                                   gcyc_map_kind kind, gcyc_map** out);
GCYC_API void gcyc_map_free(gcyc_map* map);

/* A single gauge document {"kind": ..., "params": {...}}. */
GCYC_API gcyc_status gcyc_gauge_load(gcyc_context* ctx, const char* json_text, gcyc_gauge** out);
/* {"schema": "1", "phi1": {...}, "phi2": {...}} */
GCYC_API gcyc_status gcyc_gauge_pair_load(gcyc_context* ctx, const char* json_text, gcyc_gauge** phi1,
                                          gcyc_gauge** phi2);
GCYC_API void gcyc_gauge_free(gcyc_gauge* gauge);
GCYC_API gcyc_status gcyc_gauge_eval(gcyc_context* ctx, const gcyc_gauge* gauge, double s, double* out);
GCYC_API gcyc_status gcyc_kappa(gcyc_context* ctx, double z, int64_t* out);

typedef struct gcyc_verify_options {
  double tol_ineq;
  int all_pairs;   /* check every (x, y) in A x B, ignoring edges */
  int strict_ineq; /* violations within tol_ineq count */
  int check_gauges;
} gcyc_verify_options;
GCYC_API void gcyc_verify_options_default(gcyc_verify_options* options);

/* With a null map only the instance predicates are reported. Returns
 * GCYC_VIOLATION when the contraction inequality or T^2 edge preservation
 * fails; the report carries the violating pairs. */
GCYC_API gcyc_status gcyc_verify(gcyc_context* ctx, const gcyc_space* space, const gcyc_map* map,
                                 const gcyc_gauge* phi1, const gcyc_gauge* phi2, const gcyc_verify_options* options,
                                 gcyc_report** out);
GCYC_API gcyc_status gcyc_verify_psi(gcyc_context* ctx, const gcyc_space* space, const gcyc_map* t1,
                                     const gcyc_map* t2, const gcyc_gauge* psi, const gcyc_verify_options* options,
                                     int strengthened, gcyc_report** out);

typedef struct gcyc_solve_options {
  double tol;
  size_t max_iter;
  int check_hypotheses;
} gcyc_solve_options;
GCYC_API void gcyc_solve_options_default(gcyc_solve_options* options);

GCYC_API gcyc_status gcyc_solve_bpp(gcyc_context* ctx, const gcyc_space* space, const gcyc_map* map,
                                    const char* x0_id, const gcyc_solve_options* options, gcyc_report** out);
GCYC_API gcyc_status gcyc_solve_fixed_point(gcyc_context* ctx, const gcyc_space* space, const gcyc_map* t1,
                                            const gcyc_map* t2, const gcyc_gauge* psi, const char* x0_id,
                                            const gcyc_solve_options* options, gcyc_report** out);

typedef struct gcyc_pbvp_options {
  double tol;
  size_t max_iter;
  int check_lower_solution;
  int check_condition_iv; /* only used when the problem has a second right-hand side */
} gcyc_pbvp_options;
GCYC_API void gcyc_pbvp_options_default(gcyc_pbvp_options* options);

/* Problem document {"schema","rhs","rhs2"?,"alpha","h","T","N","w0"}. The
 * report JSON holds the diagnostics, the report CSV the solution. */
GCYC_API gcyc_status gcyc_solve_pbvp(gcyc_context* ctx, const char* problem_json, const gcyc_pbvp_options* options,
                                     gcyc_report** out);

/* Returns GCYC_VIOLATION when any expected value is not reproduced. */
GCYC_API gcyc_status gcyc_reproduce(gcyc_context* ctx, const char* example_id, const char* params_json,
                                    gcyc_report** out);
/* Report JSON maps file names to input documents. */
GCYC_API gcyc_status gcyc_emit_example(gcyc_context* ctx, const char* example_id, const char* params_json,
                                       gcyc_report** out);
/* JSON array of example ids. */
GCYC_API const char* gcyc_example_ids(void);

GCYC_API const char* gcyc_report_json(const gcyc_report* report);
/* Empty string when the report has no tabular part. */
GCYC_API const char* gcyc_report_csv(const gcyc_report* report);
GCYC_API void gcyc_report_free(gcyc_report* report);

#ifdef __cplusplus
}
#endif

#endif
