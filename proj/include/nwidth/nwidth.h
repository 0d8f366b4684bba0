/* C interface to the n-width library. Every function returns an
 * nwidth_status; on failure nwidth_last_error() describes the problem for the
 * calling thread. Handles are opaque and released with the matching
 * *_destroy function. */
#ifndef NWIDTH_NWIDTH_H
#define NWIDTH_NWIDTH_H

#include <stddef.h>

#if defined(NWIDTH_BUILDING_LIBRARY)
#define NWIDTH_API __attribute__((visibility("default")))
#else
#define NWIDTH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nwidth_status {
  NWIDTH_OK = 0,
  NWIDTH_INVALID_ARGUMENT = 1,
  NWIDTH_NUMERICAL = 2,
  NWIDTH_IO = 3,
  NWIDTH_INTERNAL = 4
} nwidth_status;

typedef enum nwidth_precision {
  NWIDTH_PRECISION_DOUBLE = 0,
  NWIDTH_PRECISION_EXTENDED = 1,
  NWIDTH_PRECISION_AUTO = 2,
  NWIDTH_PRECISION_QUAD = 3
} nwidth_precision;

typedef enum nwidth_flag {
  NWIDTH_FLAG_OK = 0,
  NWIDTH_FLAG_PRECISION_LIMITED = 1,
  NWIDTH_FLAG_NONPOSITIVE = 2,
  NWIDTH_FLAG_NON_MONOTONE = 3
} nwidth_flag;

typedef struct nwidth_result {
  int r;
  int n;
  size_t m;
  double d_n;
  double dn_inv_r;
  double lower;
  double upper;
  double conjecture;
  double rel_err;
  nwidth_flag flag;
} nwidth_result;

typedef struct nwidth_order_fit {
  double order;
  size_t points_used;
  size_t plateau_points;
  int dropped_coarsest;
  int few_points;
} nwidth_order_fit;

typedef struct nwidth_system nwidth_system;
typedef struct nwidth_spectrum nwidth_spectrum;
typedef struct nwidth_study nwidth_study;

/* Message of the last failed call on this thread; "" if none. */
NWIDTH_API const char* nwidth_last_error(void);
NWIDTH_API const char* nwidth_version(void);
NWIDTH_API const char* nwidth_flag_name(nwidth_flag flag);
/* 0 selects the hardware concurrency. */
NWIDTH_API nwidth_status nwidth_set_threads(int threads);

NWIDTH_API nwidth_status nwidth_bspline_eval(const double* knots,
                                             size_t count, double x,
                                             double* out);
NWIDTH_API nwidth_status nwidth_kernel_eval(int r, double a, double b,
                                            double x, double y, double* out);
NWIDTH_API nwidth_status nwidth_theorem1_bounds(int r, int n, double a,
                                                double b, double* lower,
                                                double* upper);
NWIDTH_API nwidth_status nwidth_conjecture_value(int r, int n, double a,
                                                 double b, double* out);
NWIDTH_API nwidth_status nwidth_dn_from_eigenvalue(double lambda, int n,
                                                   int r, double* out);

/* Nystrom matrix h * g(xi_k, xi_l) on m interior nodes of [a, b]. */
NWIDTH_API nwidth_status nwidth_system_create(int r, double a, double b,
                                              size_t m, nwidth_system** out);
NWIDTH_API void nwidth_system_destroy(nwidth_system* sys);
NWIDTH_API size_t nwidth_system_size(const nwidth_system* sys);
NWIDTH_API double nwidth_system_spacing(const nwidth_system* sys);
/* Copies the m + 2 nodes a = xi_0, ..., xi_{m+1} = b. */
NWIDTH_API nwidth_status nwidth_system_nodes(const nwidth_system* sys,
                                             double* out, size_t capacity);
NWIDTH_API nwidth_status nwidth_system_write_matrix(const nwidth_system* sys,
                                                    const char* path);

/* Top `count` eigenpairs of the system matrix. */
NWIDTH_API nwidth_status nwidth_spectrum_compute(const nwidth_system* sys,
                                                 size_t count, double tol_res,
                                                 nwidth_precision precision,
                                                 nwidth_spectrum** out);
NWIDTH_API void nwidth_spectrum_destroy(nwidth_spectrum* spec);
NWIDTH_API size_t nwidth_spectrum_count(const nwidth_spectrum* spec);
/* rank is 1-based. */
NWIDTH_API nwidth_status nwidth_spectrum_value(const nwidth_spectrum* spec,
                                               int rank, double* out);
NWIDTH_API nwidth_status nwidth_spectrum_noise_floor(
    const nwidth_spectrum* spec, int rank, double* out);
/* m interior values, max |entry| == 1. */
NWIDTH_API nwidth_status nwidth_spectrum_vector(const nwidth_spectrum* spec,
                                                int rank, double* out,
                                                size_t capacity);
/* m + 2 samples including the zero boundary values. */
NWIDTH_API nwidth_status nwidth_spectrum_eigenfunction(
    const nwidth_spectrum* spec, int rank, double* out, size_t capacity);
/* Writes "x,phi" CSV rows for one eigenfunction. */
NWIDTH_API nwidth_status nwidth_spectrum_write_eigenfunction(
    const nwidth_spectrum* spec, int rank, const char* path);
/* rank - 1 interior zeros; *written receives the count. */
NWIDTH_API nwidth_status nwidth_spectrum_knots(const nwidth_spectrum* spec,
                                               int rank, double tol,
                                               double* out, size_t capacity,
                                               size_t* written);

/* Rows for n = n_first..n_last; `out` needs n_last - n_first + 1 slots. */
NWIDTH_API nwidth_status nwidth_compute(int r, int n_first, int n_last,
                                        size_t m, double a, double b,
                                        double tol_res, nwidth_result* out,
                                        size_t capacity);
/* Rows for r = 1..r_max, n = r + offset_first..r + offset_last. */
NWIDTH_API nwidth_status nwidth_conjecture_table(int r_max, int offset_first,
                                                 int offset_last, size_t m,
                                                 double a, double b,
                                                 double tol_res,
                                                 nwidth_result* out,
                                                 size_t capacity);

/* Convergence of d_n against a reference. h_ref <= 0 selects the analytic
 * reference (r = 1 only). */
NWIDTH_API nwidth_status nwidth_study_run(int r, const int* n_list,
                                          size_t n_count, const double* h_list,
                                          size_t h_count, double h_ref,
                                          double a, double b, double tol_res,
                                          nwidth_precision precision,
                                          nwidth_study** out);
NWIDTH_API void nwidth_study_destroy(nwidth_study* study);
/* errors[i * h_count + j] for n_list[i], h_list[j]. */
NWIDTH_API nwidth_status nwidth_study_errors(const nwidth_study* study,
                                             double* out, size_t capacity);
NWIDTH_API nwidth_status nwidth_study_fit(const nwidth_study* study,
                                          size_t n_index,
                                          nwidth_order_fit* out);
NWIDTH_API nwidth_status nwidth_study_reference(const nwidth_study* study,
                                                size_t n_index, double* out);

#ifdef __cplusplus
}
#endif

#endif
