/* Copyright 2026 The pgrand authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the pgrand library: noise-guessing syndrome decoding for
 * entanglement purification, plus the closed-form performance models.
 *
 * Conventions: every function returns a pgrand_status; results travel
 * through out-pointers. Handles are opaque and freed with their matching
 * _free function. All functions are thread-safe on distinct handles;
 * decode and the pure analytic calls are safe on shared ones.
 */

#ifndef PGRAND_PGRAND_H
#define PGRAND_PGRAND_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#define PGRAND_API
#else
#define PGRAND_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pgrand_status {
    PGRAND_OK = 0,
    PGRAND_ERR_INVALID_ARGUMENT = 1,
    PGRAND_ERR_DIMENSION_MISMATCH = 2,
    PGRAND_ERR_RESOURCE_LIMIT = 3,
    PGRAND_ERR_IO = 4,
    /* Structured "purification unattainable" signal, not a failure. */
    PGRAND_ERR_UNATTAINABLE = 5,
    PGRAND_ERR_INTERNAL = 6,
} pgrand_status;

PGRAND_API const char *pgrand_version(void);
/* Message for the most recent error on this thread; empty when none. */
PGRAND_API const char *pgrand_last_error(void);

/* ---- random Clifford encoders ---- */

typedef struct pgrand_circuit pgrand_circuit;

/* ceil(0.14 n log2(n)^2), the default encoding budget. */
PGRAND_API pgrand_status pgrand_default_gate_count(uint32_t n, uint32_t *out);

PGRAND_API pgrand_status
pgrand_circuit_sample(uint32_t n, uint32_t num_gates, uint64_t seed, pgrand_circuit **out);
PGRAND_API pgrand_status pgrand_circuit_save(const pgrand_circuit *c, const char *path);
PGRAND_API pgrand_status pgrand_circuit_load(const char *path, pgrand_circuit **out);
PGRAND_API pgrand_status pgrand_circuit_num_qubits(const pgrand_circuit *c, uint32_t *out);
PGRAND_API pgrand_status pgrand_circuit_num_gates(const pgrand_circuit *c, uint32_t *out);
PGRAND_API pgrand_status pgrand_circuit_seed(const pgrand_circuit *c, uint64_t *out);
PGRAND_API void pgrand_circuit_free(pgrand_circuit *c);

PGRAND_API pgrand_status pgrand_gate_cost_estimate(
    uint32_t n, uint32_t k, double *overhead_per_pair, double *expected_cnots, double *expected_single_qubit);

/* ---- syndrome lookup tables ---- */

typedef struct pgrand_lut pgrand_lut;

/* Builds the table for the code defined by `circuit` with k kept qubits
 * (the last n-k are measured), weight cap t, depolarization p. Fails with
 * PGRAND_ERR_RESOURCE_LIMIT when min(N_<=t, 2^(n-k)) cannot fit the
 * memory budget. checkpoint_path may be NULL; when given, the build
 * checkpoints per weight class and resumes interrupted runs. */
PGRAND_API pgrand_status pgrand_lut_build(
    const pgrand_circuit *circuit,
    uint32_t k,
    uint32_t t,
    double p,
    uint64_t memory_budget_bytes,
    uint32_t workers,
    const char *checkpoint_path,
    pgrand_lut **out);

PGRAND_API pgrand_status pgrand_lut_save(const pgrand_lut *lut, const char *path);
PGRAND_API pgrand_status pgrand_lut_load(const char *path, pgrand_lut **out);
PGRAND_API pgrand_status pgrand_lut_entry_count(const pgrand_lut *lut, uint64_t *out);
PGRAND_API pgrand_status pgrand_lut_params(
    const pgrand_lut *lut, uint32_t *n, uint32_t *k, uint32_t *t, uint64_t *encoder_seed, uint32_t *num_gates);
PGRAND_API pgrand_status
pgrand_lut_stats(const pgrand_lut *lut, uint32_t w, uint64_t *patterns_seen, uint64_t *patterns_stored);
PGRAND_API pgrand_status pgrand_lut_correctable_fraction(const pgrand_lut *lut, uint32_t w, double *out);

/* Decodes a syndrome given as ceil((n-k)/8) little-endian bytes. Writes the
 * decoded pattern as a NUL-terminated string over {I,X,Y,Z} (buffer needs
 * n+1 bytes); *found is 0 when the syndrome has no stored pattern. */
PGRAND_API pgrand_status pgrand_lut_decode(
    const pgrand_lut *lut, const uint8_t *syndrome_bytes, size_t syndrome_len, char *pattern_out, size_t pattern_cap,
    int *found);

PGRAND_API void pgrand_lut_free(pgrand_lut *lut);

/* ---- Monte Carlo protocol simulation ---- */

typedef struct pgrand_sim_config {
    uint32_t n;
    uint32_t k;
    uint32_t t;
    double p;
    uint32_t num_gates;  /* 0 selects the default budget */
    uint32_t num_encoders;
    uint32_t shots_per_encoder;
    uint64_t seed;
    int logical_equivalence;       /* 0: exact identification */
    int explicit_measurement_mask; /* simulate the XOR mask on both sides */
    uint32_t workers;
    uint64_t memory_budget_bytes;
} pgrand_sim_config;

typedef struct pgrand_sim_result {
    double pe_hat;
    double stderr_;
    double fidelity_lower_bound;
    double yield;
    uint64_t trials;
    uint64_t failures;
    uint32_t num_gates;
} pgrand_sim_result;

PGRAND_API pgrand_status pgrand_simulate(const pgrand_sim_config *config, pgrand_sim_result *result);

/* ---- closed-form performance models ---- */

PGRAND_API pgrand_status pgrand_avg_correctable_fraction(uint32_t n, uint32_t k, uint32_t t, uint32_t w, double *out);
PGRAND_API pgrand_status pgrand_error_probability(uint32_t n, uint32_t k, double p, uint32_t t, double *out);
PGRAND_API pgrand_status pgrand_hamming_bound_yield(double p, double *out);
/* PGRAND_ERR_UNATTAINABLE when no fidelity in (0.25, 1) purifies. */
PGRAND_API pgrand_status pgrand_min_fidelity(uint32_t n, uint32_t t, double *out);
/* t_cap < 0 leaves t unrestricted (t = n). */
PGRAND_API pgrand_status pgrand_min_pairs(double f, int64_t t_cap, uint32_t n_cap, uint32_t *out);
PGRAND_API pgrand_status pgrand_max_yield(uint32_t n, double f, double pe_target, uint32_t *k_out, double *yield_out);

PGRAND_API pgrand_status pgrand_werner_entropy(double f, double *out);
PGRAND_API pgrand_status pgrand_count_patterns_log2(uint32_t n, uint32_t w, double *log2_nw, double *log2_cumulative);
/* Exact decimal count (n <= 256); cumulative when `cumulative` is nonzero. */
PGRAND_API pgrand_status
pgrand_count_patterns_exact(uint32_t n, uint32_t w, int cumulative, char *decimal_out, size_t cap);
PGRAND_API pgrand_status pgrand_binomial_pmf(uint32_t n, double p, uint32_t w, double *out);

/* ---- hashing-protocol bound ---- */

PGRAND_API pgrand_status pgrand_hashing_fidelity_bound(
    uint32_t n, uint32_t k, double f, double delta, int printed_final_term, double *out);
PGRAND_API pgrand_status pgrand_delta_reference(uint32_t n, double f, double *out);
PGRAND_API pgrand_status pgrand_delta_prime(uint32_t n, uint32_t t, double f, double *out);
PGRAND_API pgrand_status
pgrand_delta_optimal(uint32_t n, uint32_t k, double f, int printed_final_term, double *delta_out, double *bound_out);
/* strategy: 0 = delta_optimal, 1 = delta_reference. */
PGRAND_API pgrand_status pgrand_hashing_min_pairs(
    double f, uint32_t k, int strategy, int printed_final_term, uint32_t n_cap, uint32_t *out);

PGRAND_API pgrand_status pgrand_typical_set_bounds(
    uint32_t n, double f, double delta, double *log2_p_low, double *log2_p_high, double *log2_max_count);
/* Arrays of length n+1: per-weight log2 pattern probability, log2 count,
 * probability mass, inclusion flag. Any output may be NULL. */
PGRAND_API pgrand_status pgrand_typical_set_profile(
    uint32_t n, double f, double delta, double *log2_prob, double *log2_count, double *mass, int *included,
    double *mass_inside, double *mass_outside);

/* ---- recurrence baselines and the measurement-based layer ---- */

typedef struct pgrand_protocol_outcome {
    double p_suc;
    double f_in;
    double f_out;
    double n_in;
    double k_out;
} pgrand_protocol_outcome;

PGRAND_API pgrand_status pgrand_oxford_round(
    double a, double b, double c, double d, double state_out[4], double *p_suc);
PGRAND_API pgrand_status
pgrand_oxford_protocol(double f_initial, uint32_t rounds, pgrand_protocol_outcome *out, int *converging);
PGRAND_API pgrand_status pgrand_effective_yield(const pgrand_protocol_outcome *outcome, double *out);

PGRAND_API pgrand_status pgrand_mb_input_fidelity(double p, double q, double *out);
PGRAND_API pgrand_status pgrand_mb_output_fidelity(double p_e, double q, double *out);
PGRAND_API pgrand_status pgrand_mb_threshold_q(double f_floor, double *out);
/* t_cap < 0 leaves t unrestricted. PGRAND_ERR_UNATTAINABLE when the window
 * is empty. */
PGRAND_API pgrand_status pgrand_mb_purification_range(
    uint32_t n, double q, int64_t t_cap, uint32_t k, double *f_min_eff, double *f_max_eff, double *p_low,
    double *p_high);
PGRAND_API pgrand_status pgrand_mb_threshold_search(uint32_t n, int64_t t_cap, uint32_t k, double *out);

typedef struct pgrand_protocol_table pgrand_protocol_table;

/* Tabulated external protocol on a strictly increasing f_in grid. */
PGRAND_API pgrand_status pgrand_protocol_table_create(
    const char *name, const double *f_in, const double *p_suc, const double *f_out, const double *yield, size_t count,
    pgrand_protocol_table **out);
PGRAND_API pgrand_status
pgrand_protocol_table_eval(const pgrand_protocol_table *table, double f_in, pgrand_protocol_outcome *out);
PGRAND_API void pgrand_protocol_table_free(pgrand_protocol_table *table);

#ifdef __cplusplus
}
#endif

#endif /* PGRAND_PGRAND_H */
