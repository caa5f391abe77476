/* C interface to the complex-shifted Laplacian solver library.
 *
 * All objects are opaque handles created and destroyed through this API; every fallible
 * call returns a cslap_status and leaves a message retrievable with cslap_last_error()
 * (per thread). Vectors are caller-owned double arrays; lengths are passed explicitly and
 * checked. Strings returned through char** must be released with cslap_string_free().
 */
#ifndef CSLAP_CSLAP_H
#define CSLAP_CSLAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CSLAP_BUILDING)
#    define CSLAP_API __declspec(dllexport)
#  else
#    define CSLAP_API __declspec(dllimport)
#  endif
#else
#  define CSLAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cslap_status
{
  CSLAP_OK = 0,
  CSLAP_ERR_INVALID_ARGUMENT = 1,
  CSLAP_ERR_SIZE_MISMATCH = 2,
  CSLAP_ERR_SINGULAR = 3,
  CSLAP_ERR_BREAKDOWN = 4,
  CSLAP_ERR_TOO_LARGE = 5,
  CSLAP_ERR_NULL_POINTER = 6,
  CSLAP_ERR_INTERNAL = 7
} cslap_status;

typedef enum cslap_coefficient
{
  CSLAP_COEF_CONSTANT_ONE = 0,
  CSLAP_COEF_EXAMPLE2 = 1 /* (20 + x1^2)(20 + x2^2) */
} cslap_coefficient;

typedef enum cslap_precond_kind
{
  CSLAP_PRECOND_NONE = 0,
  CSLAP_PRECOND_IDEAL = 1,
  CSLAP_PRECOND_AVERAGED = 2
} cslap_precond_kind;

typedef enum cslap_branch
{
  CSLAP_BRANCH_ALPHA_NONNEG = 0,
  CSLAP_BRANCH_ALPHA_NEG_VALID = 1,
  CSLAP_BRANCH_ASSUMPTIONS_VIOLATED = 2
} cslap_branch;

typedef struct cslap_problem cslap_problem;
typedef struct cslap_precond cslap_precond;
typedef struct cslap_report cslap_report;

typedef double (*cslap_coefficient_fn)(double x1, double x2, void *user_data);

typedef struct cslap_solver_config
{
  double tol;
  int max_iter;
  int record_history;
} cslap_solver_config;

typedef struct cslap_bounds
{
  double mu0;
  double mu0_tilde;
  double mu1_tilde;
  double theta1;
  double theta2;
  double c0;
  double a_min;
  double a_max;
  double gamma;
  cslap_branch branch;
} cslap_bounds;

CSLAP_API const char *cslap_version(void);
CSLAP_API const char *cslap_last_error(void);
CSLAP_API const char *cslap_status_string(cslap_status status);
CSLAP_API void cslap_string_free(char *s);

/* Problem: grid (n interior points per axis, dim 1 or 2), operator K, shift alpha + beta i. */
CSLAP_API cslap_status cslap_problem_create(int n, int dim, cslap_coefficient coef,
                                            double alpha, double beta, cslap_problem **out);
/* 2D problem with a user coefficient; fn must stay valid for the lifetime of the handle. */
CSLAP_API cslap_status cslap_problem_create_custom(int n, cslap_coefficient_fn fn,
                                                   void *user_data, double a_min,
                                                   double a_max, double alpha, double beta,
                                                   cslap_problem **out);
CSLAP_API void cslap_problem_destroy(cslap_problem *p);
/* Scalar unknown count m = n^dim; the block system has 2m unknowns. */
CSLAP_API size_t cslap_problem_unknowns(const cslap_problem *p);

/* y = A x for the block real system; len = 2m. */
CSLAP_API cslap_status cslap_problem_apply_saddle(const cslap_problem *p, const double *x,
                                                  double *y, size_t len);
/* (out_re + i out_im) = (K + lambda I)(re + i im); m entries each. */
CSLAP_API cslap_status cslap_problem_apply_shifted(const cslap_problem *p, const double *re,
                                                   const double *im, double *out_re,
                                                   double *out_im, size_t m);
/* Dense K (column-major, m*m entries) and its JSON header {n, dim, kind}. */
CSLAP_API cslap_status cslap_problem_export_dense(const cslap_problem *p, double *out,
                                                  size_t len, char **header_json);
/* Gaussian exact solution from seed and the matching right-hand side. */
CSLAP_API cslap_status cslap_generate_rhs(const cslap_problem *p, uint64_t seed,
                                          double *exact_re, double *exact_im, double *f_re,
                                          double *f_im, size_t m);

CSLAP_API cslap_status cslap_precond_create(const cslap_problem *p, cslap_precond_kind kind,
                                            cslap_precond **out);
CSLAP_API void cslap_precond_destroy(cslap_precond *pc);
/* exponent in {-1, -0.5, 0.5, 1}; len = 2m. */
CSLAP_API cslap_status cslap_precond_apply_power(const cslap_precond *pc, double exponent,
                                                 const double *in, double *out, size_t len);

CSLAP_API cslap_solver_config cslap_solver_config_default(void);
/* Solves (K + lambda I) z = f with MINRES on the block system. pc may be NULL. */
CSLAP_API cslap_status cslap_solve(const cslap_problem *p, const cslap_precond *pc,
                                   const double *f_re, const double *f_im, size_t m,
                                   const cslap_solver_config *config, double *z_re,
                                   double *z_im, cslap_report **report);
CSLAP_API int cslap_report_iterations(const cslap_report *r);
CSLAP_API int cslap_report_converged(const cslap_report *r);
CSLAP_API double cslap_report_true_residual(const cslap_report *r);
CSLAP_API double cslap_report_wall_time(const cslap_report *r);
CSLAP_API size_t cslap_report_history(const cslap_report *r, const double **data);
CSLAP_API void cslap_report_destroy(cslap_report *r);

CSLAP_API cslap_status cslap_problem_bounds(const cslap_problem *p, cslap_bounds *out);
CSLAP_API cslap_status cslap_bound_iterations(double a1, double a2, double a3, double a4,
                                              double tol, int *k);
/* Dense spectrum certificate as JSON; *all_inside set to 0 or 1. */
CSLAP_API cslap_status cslap_verify_spectrum(const cslap_problem *p, char **certificate_json,
                                             int *all_inside);

/* Runs an experiment described by JSON and renders it as "json", "csv" or "text".
 * *all_ok is 1 iff every row converged and every requested spectrum check passed. */
CSLAP_API cslap_status cslap_run_experiment(const char *spec_json, const char *format,
                                            char **output, int *all_ok);

#ifdef __cplusplus
}
#endif

#endif /* CSLAP_CSLAP_H */
