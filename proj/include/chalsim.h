/* C interface to the challenge-game simulator and calibration toolkit.
 *
 * Usage pattern: build or parse a scenario, run an operation that yields an
 * opaque report, render the report as JSON/CSV/text, free everything.
 * All functions return CHALSIM_OK (0) on success or a nonzero status; on
 * failure, chalsim_last_error() describes the problem for the calling thread,
 * and output parameters are left untouched.
 *
 * Strings returned through char** out parameters are heap-allocated and must
 * be released with chalsim_string_free().
 */
#ifndef CHALSIM_H
#define CHALSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum chalsim_status {
    CHALSIM_OK = 0,
    CHALSIM_ERROR_INVALID_ARGUMENT = 1, /* domain precondition violated */
    CHALSIM_ERROR_PARSE = 2,            /* malformed document or value */
    CHALSIM_ERROR_RANGE = 3,            /* arithmetic out of representable range */
    CHALSIM_ERROR_INTERNAL = 4          /* unexpected failure */
};

typedef struct chalsim_scenario chalsim_scenario;
typedef struct chalsim_report chalsim_report;

/* Library version, static storage. */
const char* chalsim_version(void);

/* Explanation of the most recent failure on this thread; static storage,
 * overwritten by the next failing call. */
const char* chalsim_last_error(void);

void chalsim_string_free(char* text);

/* --- Scenarios ----------------------------------------------------------- */

/* Parses and validates a scenario document (strict schema, decimal-string
 * amounts). On success *out owns the scenario; free with
 * chalsim_scenario_free. */
int chalsim_scenario_parse(const char* json_text, chalsim_scenario** out);

/* Canonical serialization: sorted keys, exact decimal strings. */
int chalsim_scenario_serialize(const chalsim_scenario* scenario, char** out_text);

void chalsim_scenario_free(chalsim_scenario* scenario);

/* --- Operations ------------------------------------------------------------
 * Each produces an opaque report; free with chalsim_report_free.
 * trials = 0 selects the default: a deterministic-scenario probe chooses one
 * trial, anything stochastic gets 10^4 (simulate/sweep) or the per-theorem
 * default (verify). workers = 0 selects an automatic thread count; results
 * are identical for every worker count.
 */

int chalsim_simulate(const chalsim_scenario* scenario, uint64_t trials, unsigned workers,
                     chalsim_report** out);

/* Closed-form calibration for a population of n challengers with a coalition
 * of a, worst-case per-challenger costs (initial-stage and processing-stage
 * bounds, summed internally), proposer deposit, and deterrence target eta
 * (amounts and fractions as decimal strings). phi_override may be NULL to use
 * the default recapture fraction a/n. */
int chalsim_calibrate(int64_t n, int64_t a, const char* c_init_bound, const char* c_proc_bound,
                      const char* deposit, const char* eta, const char* phi_override,
                      chalsim_report** out);

/* Cross-checks one named result ("UP_single", "UB_single", "F_single_bound",
 * "NonExclusion_interval", "ScaleFree", "EtaCorollary") or "all". */
int chalsim_verify(const char* theorem_id, uint64_t trials, unsigned workers,
                   chalsim_report** out);

/* Varies one parameter (axis: N, A, alpha, D_p, eta, c_tilde) over a
 * comma-separated value list, holding the base scenario fixed otherwise. */
int chalsim_sweep(const chalsim_scenario* base, const char* axis, const char* values_csv,
                  uint64_t trials, unsigned workers, chalsim_report** out);

/* --- Reports --------------------------------------------------------------- */

int chalsim_report_json(const chalsim_report* report, char** out_text);

/* CSV rendering; available for simulation and sweep reports. */
int chalsim_report_csv(const chalsim_report* report, char** out_text);

/* Short human-readable summary (one line per fact). */
int chalsim_report_summary(const chalsim_report* report, char** out_text);

/* Overall verdict: verification reports pass/fail, calibration reports
 * nonempty/empty, simulation and sweep reports always 1. */
int chalsim_report_all_pass(const chalsim_report* report, int* out_flag);

void chalsim_report_free(chalsim_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CHALSIM_H */
