/* C interface to the sweeping-process library.
 *
 * All objects are opaque and owned by the caller once returned; release them
 * with the matching *_free function. Functions return an sw_status; on any
 * status other than SW_OK (and SW_CHECK_FAILED) a description is available
 * from sw_last_error() on the same thread until the next call.
 */
#ifndef SWEEP_SWEEP_H
#define SWEEP_SWEEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SW_API __declspec(dllexport)
#else
#define SW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sw_status {
  SW_OK = 0,
  SW_CHECK_FAILED = 1,
  SW_INVALID_INPUT = 2,
  SW_SOLVER_ERROR = 3,
  SW_IO_ERROR = 4,
  SW_NULL_ARGUMENT = 5
} sw_status;

typedef struct sw_set sw_set;
typedef struct sw_scenario sw_scenario;
typedef struct sw_result sw_result;

typedef struct sw_run_options {
  int corrupt;   /* nonzero: feed each checker its corrupted fixture */
  int has_seed;  /* nonzero: override the scenario's sampling seed */
  uint64_t seed;
  int timing;    /* nonzero: record wall time in the summary */
} sw_run_options;

SW_API const char* sw_version(void);
SW_API const char* sw_last_error(void);

/* Convex sets, from their JSON encoding. */
SW_API sw_status sw_set_from_json(const char* json, sw_set** out);
SW_API void sw_set_free(sw_set* set);
SW_API size_t sw_set_dim(const sw_set* set);
SW_API sw_status sw_set_project(const sw_set* set, const double* x, size_t dim, double* out);
SW_API sw_status sw_set_support(const sw_set* set, const double* dir, size_t dim, double* out);
SW_API sw_status sw_set_contains(const sw_set* set, const double* x, size_t dim, double tol,
                                 int* out);
SW_API sw_status sw_set_hausdorff(const sw_set* a, const sw_set* b, uint64_t seed, double* value,
                                  int* approximate);

/* Scenarios. `name` labels the summary; it may be NULL. */
SW_API sw_status sw_scenario_from_json(const char* json, const char* name, sw_scenario** out);
SW_API sw_status sw_scenario_from_file(const char* path, sw_scenario** out);
SW_API void sw_scenario_free(sw_scenario* scenario);

/* Solves and runs the requested checks. Returns SW_OK or SW_CHECK_FAILED
 * with a result, or an error status without one. */
SW_API sw_status sw_scenario_run(const sw_scenario* scenario, const sw_run_options* options,
                                 sw_result** out);

SW_API const char* sw_result_trajectory_csv(const sw_result* result);
SW_API const char* sw_result_reports_jsonl(const sw_result* result);
SW_API const char* sw_result_summary_json(const sw_result* result);
SW_API int sw_result_all_passed(const sw_result* result);
SW_API void sw_result_free(sw_result* result);

/* Maps a status to the command-line exit code convention (0..3). */
SW_API int sw_status_exit_code(sw_status status);

#ifdef __cplusplus
}
#endif

#endif /* SWEEP_SWEEP_H */
