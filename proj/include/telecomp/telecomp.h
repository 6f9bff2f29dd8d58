/* Copyright 2026 The Telecomp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libtelecomp. Handles are opaque; every fallible call
 * returns a tc_status and leaves a message in tc_last_error() (per thread).
 * Strings returned by tc_result_* are owned by the result handle. */

#ifndef TELECOMP_TELECOMP_H_
#define TELECOMP_TELECOMP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TC_API __declspec(dllexport)
#else
#define TC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tc_status {
    TC_OK = 0,
    TC_INVALID_ARGUMENT = 1,
    TC_OUT_OF_RANGE = 2,
    TC_CAP_EXCEEDED = 3,
    TC_UNWRAP_WINDOW = 4,
    TC_IO = 5,
    TC_BOUND_VIOLATION = 6,
    TC_CONTRACT = 7,
    TC_INTERNAL = 99
} tc_status;

typedef struct tc_dataset tc_dataset;
typedef struct tc_result tc_result;
typedef struct tc_state tc_state;

TC_API const char *tc_version(void);
TC_API const char *tc_status_name(tc_status status);
/* Message of the last failed call on this thread; "" after a success. */
TC_API const char *tc_last_error(void);

/* ---------------------------------------------------------------- datasets */

TC_API tc_status tc_dataset_from_values(const double *values, size_t n, tc_dataset **out);
/* JSON array or CSV (one value per line, '#' comments). */
TC_API tc_status tc_dataset_load(const char *path, tc_dataset **out);
/* uniform:mu=<m>,n=<N>[,seed=<s>] | constant:c=<c>,n=<N> | skewed:n=<N>[,seed=<s>]
 * | list:<v1>,<v2>,... */
TC_API tc_status tc_dataset_generate(const char *spec, uint64_t default_seed, tc_dataset **out);
/* Keeps the leading power-of-two prefix; *dropped gets the removed count. */
TC_API tc_status tc_dataset_truncate_pow2(tc_dataset *ds, size_t *dropped);
TC_API size_t tc_dataset_size(const tc_dataset *ds);
TC_API double tc_dataset_mean(const tc_dataset *ds);
TC_API tc_status tc_dataset_values(const tc_dataset *ds, double *out, size_t capacity);
TC_API void tc_dataset_free(tc_dataset *ds);

/* ------------------------------------------------------------ estimators */

typedef struct tc_kick_options {
    uint64_t r;            /* 0: floor(kappa / theta^3) */
    uint64_t r_cap;        /* 0: no cap */
    uint64_t alpha;        /* readout trials */
    double kappa;
    uint64_t max_restarts;
    int gamma_linear;      /* 0: gamma = arcsin(x), 1: gamma = x */
    int ideal;             /* exact phase instead of sampled readout */
    int corrupt_gamma_sign;
} tc_kick_options;

TC_API void tc_kick_options_default(tc_kick_options *opts);

TC_API tc_status tc_estimate_serial(const tc_dataset *ds, double theta, const tc_kick_options *opts, uint64_t seed,
                                    tc_result **out);

typedef struct tc_schedule_options {
    double theta0;
    double factor;
    double threshold_coeff;
    double theta_floor;
} tc_schedule_options;

TC_API void tc_schedule_options_default(tc_schedule_options *opts);

/* Serial estimate at theta0, theta0/factor, ... until |mu_e| exceeds
 * threshold_coeff * theta^2. Step k is seeded by derive(seed, k). The report
 * is the final step's, with theta_schedule, reductions, and step and restart
 * totals over all steps. */
TC_API tc_status tc_estimate_schedule(const tc_dataset *ds, const tc_schedule_options *sched,
                                      const tc_kick_options *opts, uint64_t seed, tc_result **out);

/* One cat particle per value; alpha ignored when ideal is set. */
TC_API tc_status tc_estimate_epr(const tc_dataset *ds, double theta, uint64_t alpha, int ideal, uint64_t seed,
                                 tc_result **out);

typedef struct tc_distributed_options {
    uint64_t eta;
    int shard;             /* node j works on the j-th contiguous slice */
    int force;             /* run even when eta exceeds the bound */
    double failure_budget;
} tc_distributed_options;

TC_API void tc_distributed_options_default(tc_distributed_options *opts);

TC_API tc_status tc_estimate_distributed(const tc_dataset *ds, double theta, const tc_distributed_options *dopts,
                                         const tc_kick_options *opts, uint64_t seed, tc_result **out);

/* ------------------------------------------------------------ experiments */

TC_API tc_status tc_sweep_theta(const tc_dataset *ds, const double *thetas, size_t count, int rescale,
                                const tc_kick_options *opts, tc_result **out);
TC_API tc_status tc_sweep_eta(const tc_dataset *ds, double theta, const uint64_t *etas, size_t count,
                              const tc_kick_options *opts, uint64_t seed, tc_result **out);

typedef struct tc_oracle_options {
    double theta;
    int gamma_linear;
    int corrupt_gamma_sign;
    uint64_t eta;
    uint64_t r;
    double tolerance;
} tc_oracle_options;

TC_API void tc_oracle_options_default(tc_oracle_options *opts);
TC_API tc_status tc_oracle_check(const tc_dataset *ds, const tc_oracle_options *opts, tc_result **out);

/* exhaustive: one ordered pass, n_samples must equal N (repeats ignored). */
TC_API tc_status tc_baseline(const tc_dataset *ds, uint64_t n_samples, uint64_t repeats, int exhaustive,
                             uint64_t seed, tc_result **out);
TC_API tc_status tc_required_samples(double epsilon, double coeff, uint64_t *out);

/* Pairs the phase qubits level by level with CNOT + measurement. */
TC_API tc_status tc_ladder(const double *phases, size_t count, size_t levels, uint64_t seed, tc_result **out);

/* ----------------------------------------------------------------- results */

/* Pretty JSON report, newline-terminated. */
TC_API const char *tc_result_json(const tc_result *res);
/* CSV table; "" when the result kind has no CSV form. */
TC_API const char *tc_result_csv(const tc_result *res);
/* Network trace as JSON lines; "" when the run has no trace. */
TC_API const char *tc_result_trace(const tc_result *res);
/* Headline number: mu_e, baseline estimate, or ladder success rate. */
TC_API double tc_result_value(const tc_result *res);
/* Oracle check verdict; 1 for every other kind. */
TC_API int tc_result_passed(const tc_result *res);
TC_API void tc_result_free(tc_result *res);

/* ------------------------------------------------------------ state vector */

TC_API tc_status tc_state_new(size_t num_sites, tc_state **out);
TC_API tc_status tc_state_from_amplitudes(const double *re, const double *im, size_t dim, tc_state **out);
TC_API size_t tc_state_num_sites(const tc_state *s);
TC_API tc_status tc_state_apply_m(tc_state *s, size_t site);
TC_API tc_status tc_state_apply_wh(tc_state *s, const size_t *sites, size_t count);
TC_API tc_status tc_state_apply_cnot(tc_state *s, size_t control, size_t target);
TC_API tc_status tc_state_rotate_basis_phase(tc_state *s, uint64_t index, double angle);
TC_API tc_status tc_state_amplitude(const tc_state *s, uint64_t index, double *re, double *im);
/* Samples and collapses; bits[k] gets the outcome of sites[k]. */
TC_API tc_status tc_state_measure(tc_state *s, const size_t *sites, size_t count, uint64_t seed, int *bits);
TC_API void tc_state_free(tc_state *s);

#ifdef __cplusplus
}
#endif

#endif /* TELECOMP_TELECOMP_H_ */
