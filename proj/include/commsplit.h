/* Public C interface for the commutator-splitting library.
 *
 * All functions return a cs_status; results come back through out
 * parameters.  Strings returned through char** are heap-allocated and must
 * be released with cs_string_free.  Formula handles are opaque and must be
 * released with cs_formula_free.  cs_last_error() describes the most recent
 * failure on the calling thread.
 */
#ifndef COMMSPLIT_H
#define COMMSPLIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERR_INVALID_ARGUMENT = 1,
  CS_ERR_PARSE = 2,
  CS_ERR_INSUFFICIENT_DATA = 3,
  CS_ERR_INFEASIBLE = 4,
  CS_ERR_CAPACITY = 5,
  CS_ERR_UNVERIFIED = 6,
  CS_ERR_INTERNAL = 7
} cs_status;

typedef struct cs_formula cs_formula;

typedef struct cs_formula_stats {
  long long n_terms;
  long long raw_term_count;
  double q_mean;
  double q_max;
  int k;
  int p2;
  int nu;
} cs_formula_stats;

/* families: "odd", "odd-sym", "even", "nestf", "gc", "nestgc", "bgc", "jk".
 * p2 encodes 2p; integer-level families require even p2. */
cs_status cs_formula_build(const char* family, int p2, int k, cs_formula** out);

cs_status cs_formula_from_json(const char* json_text, cs_formula** out);
cs_status cs_formula_to_json(const cs_formula* f, char** out_json);
cs_status cs_formula_stats_get(const cs_formula* f, cs_formula_stats* out);
cs_status cs_formula_invert(const cs_formula* f, cs_formula** out);
cs_status cs_formula_simplify(const cs_formula* f, double tol, cs_formula** out);
void cs_formula_free(cs_formula* f);

/* Error scan on a named operator binding: "pauli" (two-slot Pauli pair,
 * with the slot layout the formula expects) or "random:<dim>" seeded by
 * `seed`.  Returns the CSV document and the fitted slope. */
cs_status cs_scan(const cs_formula* f, const char* ops_spec, uint64_t seed, double tmin,
                  double tmax, int points, char** out_csv, double* out_slope);

/* Segmentation plan for approximating the nested-commutator exponential to
 * accuracy eps.  p2 <= 0 optimizes over levels up to p_max.  Returns the
 * plan JSON. */
cs_status cs_plan(const char* family, int p2, int k, double lambda, double t, double eps,
                  int p_max, char** out_json);

/* Application demos; each returns a JSON report. */
cs_status cs_demo_grover(int n, long long r_override, uint64_t seed, char** out_json);
cs_status cs_demo_control(double b0, double omega0, double t, int p2, char** out_json);
cs_status cs_demo_anticomm(int dim, double t, int p2, uint64_t seed, char** out_json);
cs_status cs_demo_toric(double j, double t, double eps, char** out_json);

/* Error-versus-cost comparison curves; returns CSV. */
cs_status cs_compare(const char* families_csv, int k, char** out_csv);

/* Message from the last failing call on this thread; never NULL. */
const char* cs_last_error(void);

void cs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* COMMSPLIT_H */
