/* Copyright 2026 The crroots Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libcrroots: roots of an analytic function in a square of
 * the complex plane.
 *
 * Every fallible call returns a crr_status (0 on success). On failure the
 * message is available from crr_last_error() on the same thread until the
 * next failing call. Handles are opaque; each *_free accepts NULL. Strings
 * returned through char** belong to the caller and go back through
 * crr_string_free.
 */

#ifndef CRROOTS_CRROOTS_H_
#define CRROOTS_CRROOTS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CRR_API __declspec(dllexport)
#else
#define CRR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Numerically equal to the process exit codes of the CLI. */
typedef enum crr_status {
  CRR_OK = 0,
  CRR_E_INVALID_ARGUMENT = 2,
  CRR_E_PARSE = 3,
  CRR_E_EVALUATION = 4,
  CRR_E_EXPANSION_NOT_CONVERGED = 5,
  CRR_E_MAX_DEPTH_EXCEEDED = 6,
  CRR_E_QR_BREAKDOWN = 7,
  CRR_E_NON_CONVERGENCE = 8,
  CRR_E_BASIS_BREAKDOWN = 9,
  CRR_E_IO = 10,
  CRR_E_DIMENSION = 11,
  CRR_E_GEOMETRY = 12,
  CRR_E_CONDITIONING = 13,
  CRR_E_DEGENERATE_LEADING_COEFFICIENT = 14,
  CRR_E_ISOTROPIC_VECTOR = 15,
  CRR_E_ORACLE = 16,
  CRR_E_CONTOUR = 17,
  CRR_E_INTERNAL = 99
} crr_status;

typedef struct crr_complex {
  double re;
  double im;
} crr_complex;

typedef struct crr_basis crr_basis;
typedef struct crr_function crr_function;
typedef struct crr_result crr_result;

typedef struct crr_options {
  double eps_exp;
  double eps_eig;
  double delta;
  int adaptive;        /* 0: one expansion on the whole square */
  int order;           /* non-adaptive starting order */
  int fixed_order;     /* non-adaptive: never raise the order */
  int n_max;
  int n_exp;           /* adaptive expansion order */
  int newton_iters;    /* 0..3 */
  int max_depth;
  uint64_t seed;
  int threads;         /* 0: all hardware threads */
  int correction;
  int max_qr_iterations;
} crr_options;

typedef struct crr_diagnostics {
  long n_eigs;
  int n_levels;
  long squares;
  int order;
  double expansion_error;
  double q_norm_max;
  double max_rotation;
  long corrections;
  long rotations;
  long qr_iterations;
  long duplicates_removed;
  int basis_retries;
  double wall_time_seconds;
} crr_diagnostics;

typedef struct crr_root {
  crr_complex value;
  double eta;
  size_t square_id;
  int depth;
  int refined;
} crr_root;

/* Returns 0 with value and deriv set, nonzero if f is undefined at z. */
typedef int (*crr_eval_callback)(void* user, crr_complex z, crr_complex* value,
                                 crr_complex* deriv);

CRR_API const char* crr_version(void);
CRR_API const char* crr_last_error(void);
CRR_API const char* crr_status_name(crr_status status);
CRR_API void crr_string_free(char* s);

/* Basis on the canonical square [-1,1]^2 with Gauss nodes per edge. */
CRR_API crr_status crr_basis_build(int order, int nodes_per_edge, uint64_t seed,
                                   crr_basis** out);
CRR_API crr_status crr_basis_load(const char* path, crr_basis** out);
CRR_API crr_status crr_basis_save(const crr_basis* basis, const char* path);
CRR_API int crr_basis_order(const crr_basis* basis);
CRR_API int crr_basis_nodes(const crr_basis* basis);
CRR_API crr_status crr_basis_condition(const crr_basis* basis, double* out);
CRR_API void crr_basis_free(crr_basis* basis);

CRR_API crr_status crr_function_from_catalog(const char* name,
                                             crr_function** out);
CRR_API crr_status crr_function_parse(const char* expression,
                                      crr_function** out);
CRR_API crr_status crr_function_from_callback(const char* name,
                                              crr_eval_callback eval,
                                              void* user, crr_function** out);
/* Canonical text of a parsed or catalog function; NULL for callbacks. */
CRR_API const char* crr_function_expression(const crr_function* f);
CRR_API crr_status crr_function_eval(const crr_function* f, crr_complex z,
                                     crr_complex* value, crr_complex* deriv);
CRR_API void crr_function_free(crr_function* f);

CRR_API void crr_options_default(crr_options* options);

/* basis may be NULL; one is then built from options->seed. */
CRR_API crr_status crr_find_roots(const crr_function* f, crr_complex center,
                                  double half_side, const crr_options* options,
                                  const crr_basis* basis, crr_result** out);
CRR_API size_t crr_result_root_count(const crr_result* result);
CRR_API crr_status crr_result_root(const crr_result* result, size_t index,
                                   crr_root* out);
CRR_API crr_status crr_result_diagnostics(const crr_result* result,
                                          crr_diagnostics* out);
/* Report document; wall-clock fields are omitted when include_timing is 0. */
CRR_API crr_status crr_result_to_json(const crr_result* result,
                                      int include_timing, char** out);
CRR_API crr_status crr_result_to_csv(const crr_result* result, char** out);
CRR_API void crr_result_free(crr_result* result);

/* CSV rows: order,nodes_per_edge,trials,breakdowns,mean,min,max.
 * nodes_per_edge 0 selects n/2 + 10. */
CRR_API crr_status crr_condition_experiment(const char* shape,
                                            const int* orders, size_t n_orders,
                                            int trials, const char* spacing,
                                            int nodes_per_edge, uint64_t seed,
                                            char** csv_out);

/* only may be NULL or "" for every function; *all_passed receives 0 or 1. */
CRR_API crr_status crr_bench_run(const char* suite, const char* only,
                                 int threads, uint64_t seed, int json,
                                 char** out, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* CRROOTS_CRROOTS_H_ */
