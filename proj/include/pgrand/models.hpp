// Copyright 2026 The pgrand authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PGRAND_MODELS_HPP
#define PGRAND_MODELS_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace pgrand {

/// Closed-form model point: n pairs, k kept (so S = 2^(n-k) syndromes),
/// depolarization p, precomputation cap t.
struct PgrandModelPoint {
    uint32_t n;
    uint32_t k;
    double p;
    uint32_t t;

    void validate() const;
};

/// <f_w> and its complement for every weight at fixed (n, k), evaluated in
/// log space. The complement 1 - <f_w> is carried separately so the error
/// probability can be accumulated without cancellation even when it is
/// smaller than double epsilon.
class CorrectableFractionTable {
   public:
    CorrectableFractionTable(uint32_t n, uint32_t k);

    uint32_t n() const { return n_; }
    uint32_t k() const { return k_; }
    double fraction(uint32_t w) const;    // <f_w>, clamped to [0,1]
    double complement(uint32_t w) const;  // 1 - <f_w>

    /// p_e = sum_{w<=t} (1-<f_w>) f_Bin(w) + sum_{w>t} f_Bin(w).
    double error_probability(double p, uint32_t t) const;

   private:
    uint32_t n_, k_;
    std::vector<double> f_, g_;
};

/// <f_w> = (S/N_w) exp(-N_{<=w-1}/S) (1 - exp(-N_w/S)) for w <= t, else 0.
double avg_correctable_fraction(const PgrandModelPoint &point, uint32_t w);

/// p_e = 1 - sum_{i=0}^{t} <f_i> f_Bin(n,p)(i), monotone non-increasing in t.
double error_probability(const PgrandModelPoint &point);

/// Quantum Hamming bound on the yield: 1 - p log2(3) - H(p).
double hamming_bound_yield(double p);

/// Smallest initial fidelity (k = 1) with 1 - p_e > F, bisected to 1e-5.
/// Absent when purification is unattainable anywhere in (0.25, 1).
std::optional<double> min_fidelity(uint32_t n, uint32_t t);

/// Smallest n (k = 1, t = n unless capped) satisfying 1 - p_e > F.
std::optional<uint32_t> min_pairs(double f, std::optional<uint32_t> t_cap = std::nullopt, uint32_t n_cap = 5000);

struct MaxYieldResult {
    uint32_t k;  // 0 when no positive yield reaches the target
    double yield;
};

/// Largest k with p_e <= p_e_target at t = n, capped strictly below the
/// Hamming bound.
MaxYieldResult max_yield(uint32_t n, double f, double p_e_target);

/// Werner-regime coefficients of the hashing fidelity bound.
double entropy_s(double f);
double coef_a(double f);
double coef_g(double f);

struct HashingBoundParams {
    uint32_t n;
    uint32_t k;
    double f;
    double delta;
    /// When set, uses the exponent -n(S+delta)-(n-k) for the counting term
    /// instead of n(S+delta)-(n-k). Kept for comparison; the default is the
    /// form that makes the delta trade-off real.
    bool printed_final_term = false;
};

/// <F_a> >= 1 - 2 exp{-(n/a)[(g+d) ln(1+d/g) - d]} - 2^(n(S+d)-(n-k)),
/// clamped to [0,1].
double hashing_fidelity_bound(const HashingBoundParams &params);

/// delta_ref = ((n-1)/n - S(F)) / 2. May be non-positive when S(F) is large.
double delta_reference(uint32_t n, double f);

/// delta'(t) = log2(N_{<=t})/n - S(F).
double delta_prime(uint32_t n, uint32_t t, double f);

struct DeltaOptimal {
    double delta;
    double bound;
};

/// Maximizes the bound over delta in (0, 1-S(F)): coarse grid bracketing
/// (robust if the bound is not unimodal) then golden-section to 1e-6.
/// Absent when the feasible interval is empty.
std::optional<DeltaOptimal> delta_optimal(uint32_t n, uint32_t k, double f, bool printed_final_term = false);

enum class DeltaStrategy { optimal, reference };

/// Smallest n (k fixed) whose hashing bound exceeds F under the given delta
/// strategy.
std::optional<uint32_t> hashing_min_pairs(
    double f,
    uint32_t k,
    DeltaStrategy strategy,
    bool printed_final_term = false,
    uint32_t n_cap = 200000);

struct TypicalSetBounds {
    double log2_p_low;      // -n(S+delta)
    double log2_p_high;     // -n(S-delta)
    double log2_max_count;  // n(S+delta)
};

TypicalSetBounds typical_set_bounds(uint32_t n, double f, double delta);

struct TypicalSetWeightRow {
    uint32_t w;
    double log2_pattern_prob;  // log2 P(E) for any weight-w pattern
    double log2_num_patterns;  // log2 N_w
    double weight_mass;        // f_Bin(n, 1-F)(w)
    bool included;
};

struct TypicalSetProfile {
    std::vector<TypicalSetWeightRow> rows;
    double mass_inside;
    double mass_outside;
};

/// Per-weight membership and probability mass relative to the typical set;
/// the outside mass lower-bounds the hashing failure probability.
TypicalSetProfile typical_set_profile(uint32_t n, double f, double delta);

}  // namespace pgrand

#endif
