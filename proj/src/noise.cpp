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

#include "pgrand/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pgrand {

namespace {

constexpr double LOG2_3 = 1.5849625007211562;
constexpr double LN2 = 0.6931471805599453;

double log2_binomial_coeff(uint32_t n, uint32_t w) {
    return (std::lgamma(n + 1.0) - std::lgamma(w + 1.0) - std::lgamma(n - w + 1.0)) / LN2;
}

}  // namespace

uint64_t Rng::next_below(uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("Rng::next_below: bound must be nonzero");
    }
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = next_u64();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

DepolarizingParams::DepolarizingParams(double p, uint32_t n) : p(p), n(n) {
    if (!(p >= 0.0) || p >= 0.75) {
        throw std::invalid_argument("DepolarizingParams: p must lie in [0, 3/4)");
    }
}

BellDiagonalState::BellDiagonalState(double a, double b, double c, double d) : a(a), b(b), c(c), d(d) {
    if (a < 0 || b < 0 || c < 0 || d < 0) {
        throw std::invalid_argument("BellDiagonalState: components must be non-negative");
    }
    if (std::abs(a + b + c + d - 1.0) > 1e-12) {
        throw std::invalid_argument("BellDiagonalState: components must sum to 1 within 1e-12");
    }
}

PauliString sample_error(const DepolarizingParams &params, Rng &rng) {
    PauliString e(params.n);
    for (uint32_t q = 0; q < params.n; q++) {
        if (rng.next_double() < params.p) {
            // X, Y, Z each with probability p/3.
            static constexpr PauliOp ops[3] = {PauliOp::X, PauliOp::Y, PauliOp::Z};
            e.set_op(q, ops[rng.next_below(3)]);
        }
    }
    return e;
}

double pattern_probability(const PauliString &e, const DepolarizingParams &params) {
    return std::exp2(pattern_log2_probability(e, params));
}

double pattern_log2_probability(const PauliString &e, const DepolarizingParams &params) {
    if (e.num_qubits() != params.n) {
        throw std::invalid_argument("pattern_probability: qubit count mismatch");
    }
    return weight_log2_probability(params.n, params.p, e.weight());
}

double weight_log2_probability(uint32_t n, double p, uint32_t w) {
    if (p == 0.0) {
        return w == 0 ? 0.0 : -HUGE_VAL;
    }
    return w * (std::log2(p) - LOG2_3) + (n - w) * (std::log1p(-p) / LN2);
}

BigUint BigUint::from_decimal(const std::string &digits) {
    BigUint v;
    for (char c : digits) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("BigUint::from_decimal: invalid digit");
        }
        v.mul_u32(10);
        BigUint d(static_cast<uint64_t>(c - '0'));
        v.add(d);
    }
    return v;
}

void BigUint::add(const BigUint &other) {
    size_t sz = std::max(limbs_.size(), other.limbs_.size());
    limbs_.resize(sz, 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < sz; i++) {
        unsigned __int128 sum = carry + limbs_[i];
        if (i < other.limbs_.size()) {
            sum += other.limbs_[i];
        }
        limbs_[i] = static_cast<uint64_t>(sum);
        carry = sum >> 64;
    }
    if (carry) {
        limbs_.push_back(static_cast<uint64_t>(carry));
    }
}

void BigUint::mul_u32(uint32_t m) {
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < limbs_.size(); i++) {
        unsigned __int128 prod = static_cast<unsigned __int128>(limbs_[i]) * m + carry;
        limbs_[i] = static_cast<uint64_t>(prod);
        carry = prod >> 64;
    }
    while (carry) {
        limbs_.push_back(static_cast<uint64_t>(carry));
        carry >>= 64;
    }
    trim();
}

uint32_t BigUint::bit_length() const {
    if (is_zero()) {
        return 0;
    }
    uint64_t top = limbs_.back();
    uint32_t bits = 0;
    while (top) {
        bits++;
        top >>= 1;
    }
    return static_cast<uint32_t>((limbs_.size() - 1) * 64) + bits;
}

double BigUint::log2() const {
    if (is_zero()) {
        return -HUGE_VAL;
    }
    uint32_t bl = bit_length();
    // Top 128 bits give a faithfully rounded mantissa.
    double mant = 0.0;
    int32_t shift = static_cast<int32_t>(bl) - 1;
    for (int32_t b = shift; b > shift - 128 && b >= 0; b--) {
        uint32_t limb = b >> 6;
        if ((limbs_[limb] >> (b & 63)) & 1) {
            mant += std::exp2(static_cast<double>(b - shift));
        }
    }
    return shift + std::log2(mant);
}

std::string BigUint::to_decimal() const {
    if (is_zero()) {
        return "0";
    }
    std::vector<uint64_t> tmp = limbs_;
    std::string out;
    while (!(tmp.size() == 1 && tmp[0] == 0)) {
        unsigned __int128 rem = 0;
        for (size_t i = tmp.size(); i-- > 0;) {
            unsigned __int128 cur = (rem << 64) | tmp[i];
            tmp[i] = static_cast<uint64_t>(cur / 10);
            rem = cur % 10;
        }
        out.push_back(static_cast<char>('0' + static_cast<int>(rem)));
        while (tmp.size() > 1 && tmp.back() == 0) {
            tmp.pop_back();
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<uint64_t> BigUint::to_u64() const {
    if (limbs_.size() > 1) {
        return std::nullopt;
    }
    return limbs_[0];
}

void BigUint::trim() {
    while (limbs_.size() > 1 && limbs_.back() == 0) {
        limbs_.pop_back();
    }
}

namespace {

// C(n, w) by Pascal additions; exact for any n this code is asked for.
BigUint exact_binomial(uint32_t n, uint32_t w) {
    std::vector<BigUint> row(w + 1);
    row[0] = BigUint(1);
    for (uint32_t i = 1; i <= n; i++) {
        for (uint32_t j = std::min(i, w); j >= 1; j--) {
            if (j <= i) {
                row[j].add(row[j - 1]);
            }
            if (j == 1) {
                break;
            }
        }
    }
    return row[w];
}

BigUint exact_pattern_count(uint32_t n, uint32_t w) {
    BigUint c = exact_binomial(n, w);
    for (uint32_t i = 0; i < w; i++) {
        c.mul_u32(3);
    }
    return c;
}

}  // namespace

double log2_count(uint32_t n, uint32_t w) {
    if (w > n) {
        throw std::invalid_argument("log2_count: weight out of range");
    }
    return log2_binomial_coeff(n, w) + w * LOG2_3;
}

double log2_count_up_to(uint32_t n, uint32_t w) {
    if (w > n) {
        throw std::invalid_argument("log2_count_up_to: weight out of range");
    }
    double m = -HUGE_VAL;
    for (uint32_t i = 0; i <= w; i++) {
        m = std::max(m, log2_count(n, i));
    }
    double s = 0.0;
    for (uint32_t i = 0; i <= w; i++) {
        s += std::exp2(log2_count(n, i) - m);
    }
    return m + std::log2(s);
}

PatternCount count_patterns(uint32_t n, uint32_t w) {
    if (w > n) {
        throw std::invalid_argument("count_patterns: weight out of range");
    }
    PatternCount out{log2_count(n, w), std::nullopt};
    if (n <= 256) {
        out.exact = exact_pattern_count(n, w);
        out.log2_value = out.exact->log2();
    }
    return out;
}

PatternCount count_patterns_up_to(uint32_t n, uint32_t w) {
    if (w > n) {
        throw std::invalid_argument("count_patterns_up_to: weight out of range");
    }
    PatternCount out{log2_count_up_to(n, w), std::nullopt};
    if (n <= 256) {
        BigUint total;
        for (uint32_t i = 0; i <= w; i++) {
            total.add(exact_pattern_count(n, i));
        }
        out.exact = total;
        out.log2_value = total.log2();
    }
    return out;
}

double binomial_pmf(uint32_t n, double p, uint32_t w) {
    double lp = log_binomial_pmf(n, p, w);
    return lp == -HUGE_VAL ? 0.0 : std::exp(lp);
}

double log_binomial_pmf(uint32_t n, double p, uint32_t w) {
    if (w > n) {
        throw std::invalid_argument("binomial_pmf: weight out of range");
    }
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("binomial_pmf: p must lie in [0, 1]");
    }
    if (p == 0.0) {
        return w == 0 ? 0.0 : -HUGE_VAL;
    }
    if (p == 1.0) {
        return w == n ? 0.0 : -HUGE_VAL;
    }
    return log2_binomial_coeff(n, w) * LN2 + w * std::log(p) + (n - w) * std::log1p(-p);
}

void enumerate_patterns(uint32_t n, uint32_t t, const std::function<void(const PauliString &)> &fn) {
    if (t > n) {
        throw std::invalid_argument("enumerate_patterns: t must not exceed n");
    }
    static constexpr PauliOp code_order[3] = {PauliOp::X, PauliOp::Z, PauliOp::Y};
    for (uint32_t w = 0; w <= t; w++) {
        PauliString pattern(n);
        std::vector<uint32_t> prev_support;
        walk_weight_class(n, w, 0, n == 0 ? 1 : n, [&](std::span<const uint32_t> support, std::span<const uint8_t> codes, uint32_t dirty) {
            // Rewrite the changed suffix of the pattern.
            for (size_t j = dirty; j < prev_support.size(); j++) {
                pattern.set_op(prev_support[j], PauliOp::I);
            }
            prev_support.assign(support.begin(), support.end());
            for (size_t j = dirty; j < support.size(); j++) {
                pattern.set_op(support[j], code_order[codes[j]]);
            }
            fn(pattern);
        });
    }
}

std::vector<PauliString> enumerate_patterns_vec(uint32_t n, uint32_t t) {
    std::vector<PauliString> out;
    enumerate_patterns(n, t, [&](const PauliString &p) { out.push_back(p); });
    return out;
}

BellDiagonalState werner_from_fidelity(double f) {
    if (!(f >= 0.25) || f > 1.0) {
        throw std::invalid_argument("werner_from_fidelity: F must lie in [1/4, 1]");
    }
    double rest = (1.0 - f) / 3.0;
    return BellDiagonalState(f, rest, rest, rest);
}

double werner_entropy(double f) {
    if (!(f > 0.0) || f > 1.0) {
        throw std::invalid_argument("werner_entropy: F must lie in (0, 1]");
    }
    if (f == 1.0) {
        return 0.0;
    }
    return -f * std::log2(f) - (1.0 - f) * std::log2((1.0 - f) / 3.0);
}

}  // namespace pgrand
