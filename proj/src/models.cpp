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

#include "pgrand/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pgrand/noise.hpp"

namespace pgrand {

namespace {

constexpr double PURIFICATION_FLOOR = 0.8107;

double clamp01(double v) {
    return std::min(1.0, std::max(0.0, v));
}

// (1 - e^{-b})/b and its complement, stable across the full range of b.
struct Ratio {
    double value;
    double complement;
};

Ratio one_minus_exp_ratio(double b) {
    if (b <= 0.0) {
        return {1.0, 0.0};
    }
    if (b > 700.0) {
        return {1.0 / b, 1.0 - 1.0 / b};
    }
    double em = std::expm1(-b);
    return {-em / b, (b + em) / b};
}

double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

}  // namespace

void PgrandModelPoint::validate() const {
    if (k < 1 || k >= n) {
        throw std::invalid_argument("model point: need 1 <= k < n");
    }
    if (!(p > 0.0) || p >= 0.75) {
        throw std::invalid_argument("model point: need 0 < p < 3/4");
    }
    if (t > n) {
        throw std::invalid_argument("model point: need t <= n");
    }
}

CorrectableFractionTable::CorrectableFractionTable(uint32_t n, uint32_t k) : n_(n), k_(k) {
    if (k < 1 || k >= n) {
        throw std::invalid_argument("CorrectableFractionTable: need 1 <= k < n");
    }
    f_.resize(n + 1);
    g_.resize(n + 1);
    double log2_s = static_cast<double>(n - k);
    double log2_cum = -HUGE_VAL;  // log2 N_{<=w-1}
    for (uint32_t w = 0; w <= n; w++) {
        double log2_nw = log2_count(n, w);
        double b = std::exp2(log2_nw - log2_s);
        double a = log2_cum == -HUGE_VAL ? 0.0 : std::exp2(log2_cum - log2_s);
        Ratio r = one_minus_exp_ratio(b);
        double f, g;
        if (!(a < HUGE_VAL)) {
            f = 0.0;
            g = 1.0;
        } else {
            f = std::exp(-a) * r.value;
            g = r.complement + r.value * (-std::expm1(-a));
        }
        f_[w] = clamp01(f);
        g_[w] = clamp01(g);
        // log2(2^x + 2^y) without leaving log space.
        if (log2_cum == -HUGE_VAL) {
            log2_cum = log2_nw;
        } else {
            double hi = std::max(log2_cum, log2_nw);
            log2_cum = hi + std::log2(std::exp2(log2_cum - hi) + std::exp2(log2_nw - hi));
        }
    }
}

double CorrectableFractionTable::fraction(uint32_t w) const {
    return w <= n_ ? f_[w] : 0.0;
}

double CorrectableFractionTable::complement(uint32_t w) const {
    return w <= n_ ? g_[w] : 1.0;
}

double CorrectableFractionTable::error_probability(double p, uint32_t t) const {
    if (!(p >= 0.0) || p >= 0.75) {
        throw std::invalid_argument("error_probability: need 0 <= p < 3/4");
    }
    if (p == 0.0) {
        // Noiseless channel: the identity pattern is always stored.
        return 0.0;
    }
    t = std::min(t, n_);
    double mean = p * n_;
    double acc = 0.0;
    for (uint32_t w = 0; w <= t; w++) {
        double lp = log_binomial_pmf(n_, p, w);
        if (lp > -745.0) {
            acc += g_[w] * std::exp(lp);
        } else if (w > mean) {
            break;
        }
    }
    for (uint32_t w = t + 1; w <= n_; w++) {
        double lp = log_binomial_pmf(n_, p, w);
        if (lp > -745.0) {
            acc += std::exp(lp);
        } else if (w > mean) {
            break;
        }
    }
    return clamp01(acc);
}

double avg_correctable_fraction(const PgrandModelPoint &point, uint32_t w) {
    point.validate();
    if (w > point.t) {
        return 0.0;
    }
    return CorrectableFractionTable(point.n, point.k).fraction(w);
}

double error_probability(const PgrandModelPoint &point) {
    point.validate();
    return CorrectableFractionTable(point.n, point.k).error_probability(point.p, point.t);
}

double hamming_bound_yield(double p) {
    if (!(p >= 0.0) || p > 1.0) {
        throw std::invalid_argument("hamming_bound_yield: need 0 <= p <= 1");
    }
    constexpr double LOG2_3 = 1.5849625007211562;
    double h = -xlog2x(p) - xlog2x(1.0 - p);
    return 1.0 - p * LOG2_3 - h;
}

std::optional<double> min_fidelity(uint32_t n, uint32_t t) {
    if (n < 2) {
        throw std::invalid_argument("min_fidelity: need n >= 2");
    }
    if (t > n) {
        throw std::invalid_argument("min_fidelity: need t <= n");
    }
    CorrectableFractionTable table(n, 1);
    auto purifies = [&](double f) {
        return 1.0 - table.error_probability(1.0 - f, t) > f;
    };
    // The purifying set is a window: the closed form loses 1 - <f_0> =
    // O(2^-(n-1)) even at p -> 0, so fidelities too close to 1 fail. Grid
    // scan for a bracket, then bisect the lower edge.
    double lo = 0.2500001;
    if (purifies(lo)) {
        return lo;
    }
    constexpr int GRID = 4096;
    double hi = 0.0;
    for (int i = 1; i < GRID; i++) {
        double f = lo + (1.0 - 1e-9 - lo) * i / GRID;
        if (purifies(f)) {
            hi = f;
            lo = std::max(lo, f - (1.0 - 1e-9 - 0.2500001) / GRID);
            break;
        }
    }
    if (hi == 0.0) {
        return std::nullopt;
    }
    while (hi - lo > 1e-5) {
        double mid = 0.5 * (lo + hi);
        if (purifies(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::optional<uint32_t> min_pairs(double f, std::optional<uint32_t> t_cap, uint32_t n_cap) {
    if (!(f > 0.0) || f >= 1.0) {
        throw std::invalid_argument("min_pairs: need 0 < F < 1");
    }
    if (f <= PURIFICATION_FLOOR) {
        return std::nullopt;
    }
    double p = 1.0 - f;
    for (uint32_t n = 2; n <= n_cap; n++) {
        uint32_t t = t_cap ? std::min(*t_cap, n) : n;
        CorrectableFractionTable table(n, 1);
        if (1.0 - table.error_probability(p, t) > f) {
            return n;
        }
    }
    return std::nullopt;
}

MaxYieldResult max_yield(uint32_t n, double f, double p_e_target) {
    if (n < 2) {
        throw std::invalid_argument("max_yield: need n >= 2");
    }
    if (!(f > 0.25) || f > 1.0) {
        throw std::invalid_argument("max_yield: need 0.25 < F <= 1");
    }
    if (!(p_e_target >= 0.0) || p_e_target > 1.0) {
        throw std::invalid_argument("max_yield: need 0 <= p_e_target <= 1");
    }
    double p = 1.0 - f;
    double bound = hamming_bound_yield(p);
    for (uint32_t k = n - 1; k >= 1; k--) {
        if (static_cast<double>(k) / n >= bound) {
            continue;
        }
        CorrectableFractionTable table(n, k);
        double pe = table.error_probability(p, n);
        if (pe <= p_e_target) {
            return {k, static_cast<double>(k) / n};
        }
    }
    return {0, 0.0};
}

double entropy_s(double f) {
    return werner_entropy(f);
}

double coef_a(double f) {
    return std::abs(std::log2((1.0 - f) / 3.0)) + entropy_s(f);
}

double coef_g(double f) {
    double l = std::log2((1.0 - f) / 3.0);
    double s = entropy_s(f);
    return (f * std::log2(f) * std::log2(f) + (1.0 - f) * l * l - s * s) / coef_a(f);
}

double hashing_fidelity_bound(const HashingBoundParams &params) {
    if (!(params.f > 0.0) || params.f >= 1.0) {
        throw std::invalid_argument("hashing_fidelity_bound: need 0 < F < 1");
    }
    if (!(params.delta > 0.0)) {
        throw std::invalid_argument("hashing_fidelity_bound: need delta > 0");
    }
    if (params.k < 1 || params.k >= params.n) {
        throw std::invalid_argument("hashing_fidelity_bound: need 1 <= k < n");
    }
    double s = entropy_s(params.f);
    double a = coef_a(params.f);
    double g = coef_g(params.f);
    if (!(g > 0.0)) {
        throw std::invalid_argument("hashing_fidelity_bound: g(F) must be positive");
    }
    double n = params.n;
    double d = params.delta;
    double concentration = 2.0 * std::exp(-(n / a) * ((g + d) * std::log1p(d / g) - d));
    double count_exp = params.printed_final_term ? -n * (s + d) - (n - params.k) : n * (s + d) - (n - params.k);
    double counting = count_exp > 1020.0 ? HUGE_VAL : std::exp2(count_exp);
    return clamp01(1.0 - concentration - counting);
}

double delta_reference(uint32_t n, double f) {
    if (n < 2) {
        throw std::invalid_argument("delta_reference: need n >= 2");
    }
    return 0.5 * ((n - 1.0) / n - entropy_s(f));
}

double delta_prime(uint32_t n, uint32_t t, double f) {
    if (t > n) {
        throw std::invalid_argument("delta_prime: need t <= n");
    }
    return log2_count_up_to(n, t) / n - entropy_s(f);
}

std::optional<DeltaOptimal> delta_optimal(uint32_t n, uint32_t k, double f, bool printed_final_term) {
    double hi = 1.0 - entropy_s(f);
    if (!(hi > 1e-9)) {
        return std::nullopt;
    }
    auto eval = [&](double d) {
        return hashing_fidelity_bound({n, k, f, d, printed_final_term});
    };
    constexpr int GRID = 512;
    double best_d = hi / GRID;
    double best_v = -1.0;
    for (int i = 1; i < GRID; i++) {
        double d = hi * i / GRID;
        double v = eval(d);
        if (v > best_v) {
            best_v = v;
            best_d = d;
        }
    }
    double lo = std::max(1e-12, best_d - hi / GRID);
    double up = std::min(hi - 1e-12, best_d + hi / GRID);
    constexpr double INVPHI = 0.6180339887498949;
    double c = up - INVPHI * (up - lo);
    double d = lo + INVPHI * (up - lo);
    double fc = eval(c);
    double fd = eval(d);
    while (up - lo > 1e-6) {
        if (fc > fd) {
            up = d;
            d = c;
            fd = fc;
            c = up - INVPHI * (up - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INVPHI * (up - lo);
            fd = eval(d);
        }
    }
    double opt = 0.5 * (lo + up);
    return DeltaOptimal{opt, eval(opt)};
}

std::optional<uint32_t> hashing_min_pairs(
    double f, uint32_t k, DeltaStrategy strategy, bool printed_final_term, uint32_t n_cap) {
    if (!(f > 0.0) || f >= 1.0) {
        throw std::invalid_argument("hashing_min_pairs: need 0 < F < 1");
    }
    if (entropy_s(f) >= 1.0) {
        return std::nullopt;
    }
    for (uint32_t n = k + 1; n <= n_cap; n++) {
        double bound;
        if (strategy == DeltaStrategy::reference) {
            double d = delta_reference(n, f);
            if (!(d > 0.0)) {
                continue;
            }
            bound = hashing_fidelity_bound({n, k, f, d, printed_final_term});
        } else {
            auto opt = delta_optimal(n, k, f, printed_final_term);
            if (!opt) {
                continue;
            }
            bound = opt->bound;
        }
        if (bound > f) {
            return n;
        }
    }
    return std::nullopt;
}

TypicalSetBounds typical_set_bounds(uint32_t n, double f, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("typical_set_bounds: need delta > 0");
    }
    double s = entropy_s(f);
    return TypicalSetBounds{-static_cast<double>(n) * (s + delta), -static_cast<double>(n) * (s - delta), n * (s + delta)};
}

TypicalSetProfile typical_set_profile(uint32_t n, double f, double delta) {
    TypicalSetBounds bounds = typical_set_bounds(n, f, delta);
    double p = 1.0 - f;
    TypicalSetProfile profile;
    profile.rows.reserve(n + 1);
    profile.mass_inside = 0.0;
    for (uint32_t w = 0; w <= n; w++) {
        TypicalSetWeightRow row;
        row.w = w;
        row.log2_pattern_prob = weight_log2_probability(n, p, w);
        row.log2_num_patterns = log2_count(n, w);
        row.weight_mass = binomial_pmf(n, p, w);
        row.included = row.log2_pattern_prob >= bounds.log2_p_low && row.log2_pattern_prob <= bounds.log2_p_high;
        if (row.included) {
            profile.mass_inside += row.weight_mass;
        }
        profile.rows.push_back(row);
    }
    profile.mass_inside = clamp01(profile.mass_inside);
    profile.mass_outside = clamp01(1.0 - profile.mass_inside);
    return profile;
}

}  // namespace pgrand
