/* accompany — compound-Poisson accompanying laws for mixture convolutions.
 *
 * C interface to the core library. All functions return acc_status; every
 * out-parameter is written only on ACC_OK. Strings returned through char**
 * are heap-allocated and must be released with acc_string_free. Handles are
 * opaque and freed with their matching *_free function. The API is thread
 * compatible: distinct handles may be used from distinct threads, a single
 * handle must not be shared without external locking. acc_last_error returns
 * a thread-local message for the most recent failure on the calling thread.
 */
#ifndef ACCOMPANY_H
#define ACCOMPANY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acc_status {
  ACC_OK = 0,
  ACC_EINVAL = 1,           /* malformed argument or JSON */
  ACC_EVALIDATION = 2,      /* model constraint violated (support, mean, ...) */
  ACC_EINFEASIBLE = 3,      /* empty polyhedron / infeasible projection */
  ACC_ENOCONVERGE = 4,      /* iteration limit hit */
  ACC_EUNSUPPORTED = 5,     /* dimension / configuration not supported */
  ACC_EOVERFLOW = 6,        /* support explosion past the atom cap */
  ACC_EINTERNAL = 7
} acc_status;

typedef struct acc_scheme acc_scheme;
typedef struct acc_law acc_law;
typedef struct acc_polyhedron acc_polyhedron;

const char* acc_version(void);
const char* acc_last_error(void); /* thread-local, valid until next API call */
void acc_string_free(char* s);

/* ---- schemes ---- */

/* parse + validate a mixture scheme from its JSON description */
acc_status acc_scheme_parse(const char* json_text, acc_scheme** out);
void acc_scheme_free(acc_scheme* s);
acc_status acc_scheme_dimension(const acc_scheme* s, size_t* out);
acc_status acc_scheme_p_max(const acc_scheme* s, double* out);
/* n iid draws from F = prod F_i, row-major n x dim, caller frees with
 * acc_string_free-style contract via acc_buffer_free */
acc_status acc_scheme_sample(const acc_scheme* s, uint64_t seed, size_t count,
                             double** out, size_t* out_rows);
void acc_buffer_free(double* buf);

/* ---- laws ---- */

/* approximant: "D", "Dstar", "Dstarstar", or "Dbar" */
acc_status acc_law_build(const acc_scheme* s, const char* approximant, acc_law** out);
acc_status acc_law_parse(const char* json_text, acc_law** out);
void acc_law_free(acc_law* l);
acc_status acc_law_to_json(const acc_law* l, char** out);
/* first two moments: mean (dim) and covariance (dim x dim, row-major) */
acc_status acc_law_moments(const acc_law* l, double* mean, double* cov);
acc_status acc_law_sample(const acc_law* l, uint64_t seed, size_t count,
                          double** out, size_t* out_rows);
/* exact pmf when the law has no Gaussian part; JSON finite-law output */
acc_status acc_law_exact_pmf(const acc_law* l, double tail_eps, char** out);

/* exact metrics between two purely atomic laws */
acc_status acc_tv_exact(const acc_law* a, const acc_law* b, double tail_eps, double* out);
acc_status acc_levy_exact(const acc_law* a, const acc_law* b, double tail_eps, double* out);

/* ---- polyhedra ---- */

acc_status acc_polyhedron_parse(const char* json_text, acc_polyhedron** out);
void acc_polyhedron_free(acc_polyhedron* p);
acc_status acc_polyhedron_contains(const acc_polyhedron* p, const double* x, size_t dim,
                                   int* out);
acc_status acc_polyhedron_distance(const acc_polyhedron* p, const double* x, size_t dim,
                                   double* out);

/* ---- experiment runner ----
 *
 * command: "sweep" | "lecam" | "poissonize" | "distance" | "cuts"
 * config_json: command-specific configuration object
 * Outputs a CSV table and a JSON manifest; both end with a newline and are
 * byte-identical across reruns with identical command, config and seed.
 */
acc_status acc_run_json(const char* command, const char* config_json,
                        char** csv_out, char** manifest_out);

#ifdef __cplusplus
}
#endif

#endif /* ACCOMPANY_H */
