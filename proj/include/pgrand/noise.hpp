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

#ifndef PGRAND_NOISE_HPP
#define PGRAND_NOISE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgrand/pauli.hpp"

namespace pgrand {

/// Counter-style splitmix64 generator. Streams derived from the same master
/// seed with distinct stream ids are decorrelated, so workers can draw from
/// per-trial streams without coordination. All outputs are platform-stable.
class Rng {
   public:
    explicit Rng(uint64_t seed) : state_(mix(seed + GOLDEN)) {}

    static Rng from_stream(uint64_t seed, uint64_t stream) {
        Rng r(0);
        r.state_ = mix(seed + GOLDEN) ^ mix(stream * GOLDEN + 0x1D8E4E27C47D124FULL);
        return r;
    }

    uint64_t next_u64() {
        state_ += GOLDEN;
        return mix(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [0, bound) without modulo bias. bound must be nonzero.
    uint64_t next_below(uint64_t bound);

   private:
    static constexpr uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    uint64_t state_;
};

/// Per-qubit depolarizing channel parameters. The p < 3/4 cap keeps
/// likelihood order identical to weight order, which the decoder relies on.
struct DepolarizingParams {
    double p;
    uint32_t n;

    DepolarizingParams(double p, uint32_t n);
};

/// Bell-basis diagonal coefficients (phi+, psi-, psi+, phi-).
struct BellDiagonalState {
    double a, b, c, d;

    BellDiagonalState(double a, double b, double c, double d);
    double fidelity() const { return a; }
};

/// i.i.d. per qubit: identity w.p. 1-p, else X/Y/Z each w.p. p/3.
PauliString sample_error(const DepolarizingParams &params, Rng &rng);

/// (p/3)^w (1-p)^(n-w), and its exact-log variant.
double pattern_probability(const PauliString &e, const DepolarizingParams &params);
double pattern_log2_probability(const PauliString &e, const DepolarizingParams &params);
/// Same, parameterized by weight alone.
double weight_log2_probability(uint32_t n, double p, uint32_t w);

/// Unsigned big integer with just enough arithmetic for pattern counting:
/// add, small multiply, decimal conversion.
class BigUint {
   public:
    BigUint() : limbs_{0} {}
    explicit BigUint(uint64_t v) : limbs_{v} {}

    static BigUint from_decimal(const std::string &digits);

    void add(const BigUint &other);
    void mul_u32(uint32_t m);

    bool is_zero() const { return limbs_.size() == 1 && limbs_[0] == 0; }
    uint32_t bit_length() const;
    double log2() const;
    std::string to_decimal() const;
    /// Value as u64 when it fits, absent otherwise.
    std::optional<uint64_t> to_u64() const;

    bool operator==(const BigUint &other) const { return limbs_ == other.limbs_; }

   private:
    void trim();
    std::vector<uint64_t> limbs_;  // little-endian, base 2^64
};

/// N_w = C(n,w) 3^w and the cumulative N_{<=w}. The exact count is carried
/// for n <= 256; the log2 value is always available (lgamma-based beyond).
struct PatternCount {
    double log2_value;
    std::optional<BigUint> exact;
};

PatternCount count_patterns(uint32_t n, uint32_t w);
PatternCount count_patterns_up_to(uint32_t n, uint32_t w);
double log2_count(uint32_t n, uint32_t w);
double log2_count_up_to(uint32_t n, uint32_t w);

/// C(n,w) p^w (1-p)^(n-w), evaluated in log space.
double binomial_pmf(uint32_t n, double p, uint32_t w);
double log_binomial_pmf(uint32_t n, double p, uint32_t w);

/// Emits every pattern of weight 0, then 1, ..., then t. Within a weight
/// class the order is lexicographic: support positions ascending, then
/// per-qubit codes with X < Z < Y, last support position varying fastest.
/// This is the tie order the lookup table's first-come rule is defined by.
void enumerate_patterns(uint32_t n, uint32_t t, const std::function<void(const PauliString &)> &fn);

/// Stream from enumerate_patterns collected into a vector (small n only).
std::vector<PauliString> enumerate_patterns_vec(uint32_t n, uint32_t t);

/// Low-level walk over one weight class restricted to support combinations
/// whose first position lies in [first_lo, first_hi). The visitor sees the
/// support array, the code array (0=X, 1=Z, 2=Y), and the shallowest level
/// that changed since the previous pattern; levels at or beyond it must be
/// reprocessed. Weight-0 visits once with dirty_level 0 and empty spans.
/// Visitation order matches enumerate_patterns when shards are walked in
/// ascending first-position order.
template <typename Visitor>
void walk_weight_class(uint32_t n, uint32_t w, uint32_t first_lo, uint32_t first_hi, Visitor &&visit);

/// Werner state with fidelity F: (F, (1-F)/3, (1-F)/3, (1-F)/3).
BellDiagonalState werner_from_fidelity(double f);

/// S(F) = -F log2 F - (1-F) log2((1-F)/3); S(1) = 0 by continuity.
double werner_entropy(double f);

// --- template implementation ---

template <typename Visitor>
void walk_weight_class(uint32_t n, uint32_t w, uint32_t first_lo, uint32_t first_hi, Visitor &&visit) {
    if (w == 0) {
        if (first_lo == 0) {
            visit(std::span<const uint32_t>{}, std::span<const uint8_t>{}, uint32_t{0});
        }
        return;
    }
    if (w > n || first_lo >= first_hi || first_lo + w > n) {
        return;
    }
    std::vector<uint32_t> support(w);
    std::vector<uint8_t> codes(w, 0);
    support[0] = first_lo;
    for (uint32_t j = 1; j < w; j++) {
        support[j] = first_lo + j;
    }
    uint32_t dirty = 0;
    for (;;) {
        // Code odometer over the current support; last level fastest.
        for (;;) {
            visit(std::span<const uint32_t>(support), std::span<const uint8_t>(codes), dirty);
            uint32_t lvl = w;
            while (lvl > 0 && codes[lvl - 1] == 2) {
                codes[lvl - 1] = 0;
                lvl--;
            }
            if (lvl == 0) {
                dirty = 0;
                break;
            }
            codes[lvl - 1]++;
            dirty = lvl - 1;
        }
        // Advance the support combination in lexicographic order. Level l
        // tops out at n-w+l; the first level is further capped by first_hi.
        uint32_t j = w;
        while (j > 0) {
            uint32_t l = j - 1;
            uint32_t max_pos = n - w + l;
            if (l == 0 && first_hi - 1 < max_pos) {
                max_pos = first_hi - 1;
            }
            if (support[l] < max_pos) {
                break;
            }
            j--;
        }
        if (j == 0) {
            return;
        }
        support[j - 1]++;
        for (uint32_t i = j; i < w; i++) {
            support[i] = support[i - 1] + 1;
        }
        // The code odometer rolled every level back to 0 before the
        // combination advanced, so all levels are dirty here.
        dirty = 0;
    }
}

}  // namespace pgrand

#endif
