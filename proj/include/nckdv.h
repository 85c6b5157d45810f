/* C interface of the nckdv verification engine.
 *
 * All functions return an nckdv_status; on any status other than NCKDV_OK or
 * NCKDV_FAIL the thread-local message from nckdv_last_error() describes the
 * problem. Strings returned through char** are heap-allocated and must be
 * released with nckdv_string_free; polynomials with nckdv_poly_free.
 */
#ifndef NCKDV_H
#define NCKDV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nckdv_status {
  NCKDV_OK = 0,       /* success; for verify runs: every claim passed */
  NCKDV_FAIL = 1,     /* run completed but at least one claim failed */
  NCKDV_EINVAL = 2,   /* bad argument / unknown claim or equation id */
  NCKDV_EPARSE = 3,   /* expression text does not match the grammar */
  NCKDV_EDOMAIN = 4,  /* domain error (not an exact derivative, outside Omega, ...) */
  NCKDV_ERROR = 5     /* other internal error */
} nckdv_status;

typedef struct nckdv_poly nckdv_poly;

typedef struct nckdv_numeric_opts {
  int dim;           /* matrix dimension d */
  uint64_t seed;     /* RNG seed for parameters and sample points */
  int num_times;     /* hierarchy depth N */
  int points;        /* sample points per numeric claim */
  double tol;        /* relative residual tolerance */
} nckdv_numeric_opts;

/* d = 2, seed = 1, N = 2, points = 10, tol = 1e-8 */
nckdv_numeric_opts nckdv_numeric_opts_default(void);

/* Message of the last failing call on this thread ("" if none). The pointer
 * stays valid until the next failing call on the same thread. */
const char* nckdv_last_error(void);

void nckdv_string_free(char* s);
void nckdv_poly_free(nckdv_poly* p);

nckdv_status nckdv_poly_parse(const char* text, nckdv_poly** out);
nckdv_status nckdv_poly_print(const nckdv_poly* p, char** out);

/* n-th hierarchy member right-hand side; eq is "meta" or "mkdv", n >= 1. */
nckdv_status nckdv_hierarchy(const char* eq, int n, nckdv_poly** out);

/* Comma-separated list of all claim ids ("all" expands to every id except the
 * deliberate-failure diagnostic). */
nckdv_status nckdv_claim_ids(char** out);

/* Runs the claims in the comma-separated list (or "all"); writes the JSON
 * report array. opts may be NULL for the defaults. */
nckdv_status nckdv_verify(const char* claims, const nckdv_numeric_opts* opts,
                          char** json_out);

/* Runs the soliton residual claims and samples the field table. csv_out and
 * json_out may each be NULL when not wanted. */
nckdv_status nckdv_soliton(const nckdv_numeric_opts* opts, char** csv_out,
                           char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* NCKDV_H */
