/* C interface to the distortion library. All functions return a dl_status;
 * outputs are heap strings released with dl_string_free. Handles are opaque
 * and released with dl_instance_free. Error details for the calling thread
 * are available via dl_last_error. */
#ifndef DISTORTION_LAB_H
#define DISTORTION_LAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dl_status {
    DL_OK = 0,
    DL_ERR_PARSE = 1,     /* malformed JSON or wrong schema */
    DL_ERR_INVALID = 2,   /* parsed but failed validation */
    DL_ERR_DOMAIN = 3,    /* argument outside a documented domain */
    DL_ERR_VIOLATION = 4, /* a proven inequality failed to hold */
    DL_ERR_INTERNAL = 5
} dl_status;

typedef struct dl_instance dl_instance;

const char* dl_strerror(dl_status status);
/* Message for the most recent failure on this thread; owned by the library. */
const char* dl_last_error(void);
void dl_string_free(char* s);
void dl_instance_free(dl_instance* inst);

/* Parse either instance schema ({"distances",...} or {"positions",...}).
 * The instance is validated; DL_ERR_INVALID carries the report in
 * dl_last_error. */
dl_status dl_instance_from_json(const char* text, dl_instance** out);

/* family: example1 | example2 | simplex | diff_dist | random_line |
 * random_metric. eps applies to the first four, n to simplex and the random
 * families, seed to the random families. */
dl_status dl_instance_gen(const char* family, double eps, int n, uint64_t seed,
                          dl_instance** out);

dl_status dl_instance_to_json(const dl_instance* inst, char** out_json);

/* {"costs": [...], "expected": x, "max_pairwise": x, "infinite": b,
 *  "monte_carlo": {...}? when samples > 0} */
dl_status dl_eval(const dl_instance* inst, uint64_t mc_samples, uint64_t mc_seed,
                  char** report_json);

/* Line instances only. perturb != 0 retries a degenerate median (cumulative
 * mass exactly 1/2) after an infinitesimal mass shift.
 * {"instance": {...}, "trace": [{"lemma", "support", "distortion"}, ...]} */
dl_status dl_reduce(const dl_instance* inst, int perturb, char** out_json);

/* Runs every applicable proven inequality. DL_OK when all hold,
 * DL_ERR_VIOLATION otherwise; either way *report_json lists the checks. */
dl_status dl_verify(const dl_instance* inst, char** report_json);

/* config: {"space": "line_pq_equal"|"metric_pq_equal"|"metric_pq_free",
 *          "n", "restarts", "steps", "seed", "init_temp"?, "cooling"?,
 *          "trace"?}
 * result: {"best_instance": {...}, "best_value", "per_restart_bests",
 *          "evaluations", "trace": [...], "upper_bound", "conjectured"?} */
dl_status dl_search(const char* config_json, char** result_json);

/* Evaluates a family at each eps; CSV "param,expected,max_pairwise". */
dl_status dl_sweep(const char* family, int n, const double* eps_values, int count,
                   char** csv_out);

#ifdef __cplusplus
}
#endif

#endif
