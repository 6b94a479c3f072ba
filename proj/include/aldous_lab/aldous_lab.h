#ifndef ALDOUS_LAB_H
#define ALDOUS_LAB_H

/*
 * C interface to the aldous_lab library: spectral gaps of the random walk and
 * interchange process on weighted graphs, trace inequalities on lattice sets,
 * and the gap-sequence campaigns built on them.
 *
 * Conventions:
 *  - every function returns an alab_status; ALAB_OK is 0 and the nonzero
 *    values mirror the library's error categories;
 *  - after a failure, alab_last_error() describes it (per thread);
 *  - strings returned through char** are owned by the caller and released
 *    with alab_free_string;
 *  - vertex indices are 0-based here and 1-based in the JSON formats.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ALAB_API __declspec(dllexport)
#else
#define ALAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum alab_status {
  ALAB_OK = 0,
  ALAB_ERR_INVALID_ARGUMENT = 1,
  ALAB_ERR_PRECONDITION = 2,
  ALAB_ERR_RESOURCE_LIMIT = 3,
  ALAB_ERR_NOT_CONVERGED = 4,
  ALAB_ERR_HYPOTHESIS = 5,
  ALAB_ERR_IO = 6,
  ALAB_ERR_INTERNAL = 99
} alab_status;

typedef enum alab_process { ALAB_PROCESS_RW = 0, ALAB_PROCESS_IP = 1 } alab_process;

typedef enum alab_method {
  ALAB_METHOD_AUTO = 0,
  ALAB_METHOD_DENSE = 1,
  ALAB_METHOD_LANCZOS = 2
} alab_method;

typedef enum alab_export_format {
  ALAB_EXPORT_DENSE_CSV = 0,
  ALAB_EXPORT_ACTIONS_JSON = 1
} alab_export_format;

typedef struct alab_options {
  double solver_tol; /* Lanczos residual target */
  double check_tol;  /* tolerance of the asserted equalities; 0 picks the default */
  int max_iter;      /* Lanczos operator applications */
  int method;        /* alab_method */
  int jobs;          /* worker threads for independent rows */
  uint64_t seed;     /* campaign seed */
} alab_options;

typedef struct alab_rates alab_rates;
typedef struct alab_report alab_report;

ALAB_API const char* alab_version(void);
ALAB_API const char* alab_last_error(void);
ALAB_API void alab_free_string(char* s);
ALAB_API void alab_options_init(alab_options* options);

/* Rate functions. */
ALAB_API alab_status alab_rates_create(size_t size, alab_rates** out);
ALAB_API alab_status alab_rates_set(alab_rates* rates, size_t i, size_t j, double rate);
ALAB_API alab_status alab_rates_get(const alab_rates* rates, size_t i, size_t j, double* out);
ALAB_API size_t alab_rates_size(const alab_rates* rates);
/* Accepts a rate function {"size","pairs"} or a vertex set {"dim","points"};
 * a vertex set yields its nearest-neighbour unit rates. */
ALAB_API alab_status alab_rates_from_json(const char* json, alab_rates** out);
ALAB_API alab_status alab_rates_to_json(const alab_rates* rates, char** out);
ALAB_API alab_status alab_rates_hypercube(int d, int n, alab_rates** out);
/* Unit rates on V_N, the N-th set of the traceable sequence in Z^d. */
ALAB_API alab_status alab_rates_traceable(int d, size_t size, alab_rates** out);
ALAB_API void alab_rates_destroy(alab_rates* rates);

/* Spectral quantities. */
/* Gap of the chosen process. json_out and eigenvector_path may be NULL; the
 * eigenvector file is an 8-byte little-endian length followed by doubles. */
ALAB_API alab_status alab_gap(const alab_rates* rates, int process, const alab_options* options,
                              double* gap_out, char** json_out, const char* eigenvector_path);
ALAB_API alab_status alab_closed_form_gap(int d, int n, double* out);
/* {"process","N","dimension","eigenvalues"} with eigenvalues of -Omega ascending. */
ALAB_API alab_status alab_spectrum(const alab_rates* rates, int process, char** json_out);
ALAB_API alab_status alab_generator_export(const alab_rates* rates, int process, int format,
                                           char** out);

/* Campaigns. Each produces a report with JSON and CSV renderings and a count
 * of violated assertions; every violation is listed in the JSON with the
 * module, operation, inputs and residual. */
ALAB_API alab_status alab_aldous_check(const alab_rates* rates, const alab_options* options,
                                       alab_report** out);
ALAB_API alab_status alab_aldous_exhaustive_z2(int max_vertices, const alab_options* options,
                                               alab_report** out);
/* d = 1: the path inequality with n drawn from 1..n. d >= 2: random
 * traceable sets between R^d_n and R^d_{n+1}. */
ALAB_API alab_status alab_trace_fuzz(int d, int n, size_t trials, const alab_options* options,
                                     alab_report** out);
/* The non-traceable control R^2_5 plus (6,6); reports one violation. */
ALAB_API alab_status alab_trace_negative_control(alab_report** out);
/* Equalized sequence and three-way gap check on V_2 .. V_N in Z^d. */
ALAB_API alab_status alab_sequence(int d, size_t size, const alab_options* options,
                                   alab_report** out);
ALAB_API alab_status alab_ratio_table(int d, int n_max, int ip_cap, const alab_options* options,
                                      alab_report** out);
ALAB_API alab_status alab_containment(size_t size, size_t trials, const alab_options* options,
                                      alab_report** out);

ALAB_API size_t alab_report_violations(const alab_report* report);
ALAB_API alab_status alab_report_json(const alab_report* report, char** out);
ALAB_API alab_status alab_report_csv(const alab_report* report, char** out);
ALAB_API void alab_report_destroy(alab_report* report);

#ifdef __cplusplus
}
#endif

#endif /* ALDOUS_LAB_H */
