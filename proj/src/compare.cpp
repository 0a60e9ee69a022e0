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

#include "pgrand/compare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pgrand/models.hpp"

namespace pgrand {

namespace {

/// Depolarizing parameters compose as a + b - (4/3) a b on a Bell pair.
double compose_depolarizing(double a, double b) {
    return a + b - (4.0 / 3.0) * a * b;
}

}  // namespace

OxfordRoundResult oxford_round(const BellDiagonalState &state) {
    double a = state.a, b = state.b, c = state.c, d = state.d;
    double norm = (a + b) * (a + b) + (c + d) * (c + d);
    if (norm <= 0.0) {
        throw std::invalid_argument("oxford_round: degenerate state, zero success probability");
    }
    return OxfordRoundResult{
        BellDiagonalState((a * a + b * b) / norm, 2.0 * c * d / norm, (c * c + d * d) / norm, 2.0 * a * b / norm),
        norm,
    };
}

OxfordProtocolResult oxford_protocol(double f_initial, uint32_t rounds) {
    if (rounds < 1) {
        throw std::invalid_argument("oxford_protocol: need at least one round");
    }
    if (!(f_initial > 0.25) || f_initial > 1.0) {
        throw std::invalid_argument("oxford_protocol: need 0.25 < F <= 1");
    }
    BellDiagonalState state = werner_from_fidelity(f_initial);
    double p_suc = 1.0;
    for (uint32_t r = 0; r < rounds; r++) {
        OxfordRoundResult step = oxford_round(state);
        state = step.state;
        p_suc *= step.p_suc;
    }
    OxfordProtocolResult result{
        ProtocolOutcome{p_suc, f_initial, state.a, std::exp2(static_cast<double>(rounds)), 1.0},
        f_initial > 0.5,
    };
    return result;
}

double effective_yield(const ProtocolOutcome &outcome) {
    if (outcome.p_suc < 0.0 || outcome.p_suc > 1.0) {
        throw std::invalid_argument("effective_yield: P_suc must lie in [0, 1]");
    }
    if (outcome.f_out < outcome.f_in) {
        return 0.0;
    }
    double y = outcome.p_suc * outcome.yield() * (outcome.f_out - outcome.f_in);
    return std::min(1.0, std::max(0.0, y));
}

double mb_input_fidelity(double p, double q) {
    if (!(p >= 0.0) || p >= 1.0 || !(q >= 0.0) || q >= 1.0) {
        throw std::invalid_argument("mb_input_fidelity: need p, q in [0, 1)");
    }
    return 1.0 - p - q + (4.0 / 3.0) * p * q;
}

double mb_output_fidelity(double p_e, double q) {
    if (!(p_e >= 0.0) || p_e > 1.0 || !(q >= 0.0) || q >= 1.0) {
        throw std::invalid_argument("mb_output_fidelity: need p_e in [0, 1] and q in [0, 1)");
    }
    return 1.0 - p_e - q + (4.0 / 3.0) * p_e * q;
}

double mb_threshold_q(double f_floor) {
    if (!(f_floor > 0.75) || f_floor > 1.0) {
        throw std::invalid_argument("mb_threshold_q: need F_floor in (0.75, 1]");
    }
    double disc = 4.0 - (16.0 / 3.0) * (1.0 - f_floor);
    if (disc < 0.0) {
        throw std::invalid_argument("mb_threshold_q: no real root");
    }
    return (2.0 - std::sqrt(disc)) / (8.0 / 3.0);
}

namespace {

struct MbWindowProblem {
    const CorrectableFractionTable &table;
    double q;
    uint32_t t;

    // Error probability of the protocol run on pairs whose noise has been
    // dressed by one resource layer per coupling side.
    double pe(double p) const {
        double dressed = compose_depolarizing(compose_depolarizing(p, q), q);
        if (dressed >= 0.75) {
            return 1.0;
        }
        return table.error_probability(dressed, t);
    }

    // Positive while purification fails at pair noise p.
    double gap(double p) const {
        return pe(p) - p;
    }
};

constexpr double MB_P_CAP = 0.30;

std::optional<std::pair<double, double>> find_window(const MbWindowProblem &prob) {
    // Coarse scan for the negative region, then bisect both edges. The gap
    // at p -> 0 equals pe(q+q) > 0, so tiny lower roots are caught by a
    // geometric sweep.
    constexpr int LIN_STEPS = 600;
    std::vector<double> grid;
    grid.reserve(LIN_STEPS + 64);
    for (double p = 1e-18; p < 1e-2; p *= 1.8) {
        grid.push_back(p);
    }
    for (int i = 0; i <= LIN_STEPS; i++) {
        grid.push_back(1e-2 + (MB_P_CAP - 1e-2) * i / LIN_STEPS);
    }
    int first_neg = -1, last_neg = -1;
    for (size_t i = 0; i < grid.size(); i++) {
        if (prob.gap(grid[i]) < 0.0) {
            if (first_neg < 0) {
                first_neg = static_cast<int>(i);
            }
            last_neg = static_cast<int>(i);
        }
    }
    if (first_neg < 0) {
        return std::nullopt;
    }
    auto bisect = [&](double lo, double hi, bool lo_positive) {
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi + 1e-300; it++) {
            double mid = 0.5 * (lo + hi);
            if ((prob.gap(mid) > 0.0) == lo_positive) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    double p_low;
    if (first_neg == 0) {
        // Entire sweep start already purifies; the edge sits below the grid
        // at the fixpoint pe(p) = p, bounded above by the first grid point.
        p_low = bisect(0.0, grid[0], true);
    } else {
        p_low = bisect(grid[first_neg - 1], grid[first_neg], true);
    }
    double p_high;
    if (last_neg == static_cast<int>(grid.size()) - 1) {
        p_high = MB_P_CAP;
    } else {
        p_high = bisect(grid[last_neg + 1], grid[last_neg], false);
    }
    return std::make_pair(p_low, p_high);
}

}  // namespace

std::optional<MbRange> mb_purification_range(uint32_t n, double q, std::optional<uint32_t> t, uint32_t k) {
    if (!(q >= 0.0) || q >= 1.0) {
        throw std::invalid_argument("mb_purification_range: need q in [0, 1)");
    }
    if (k < 1 || k >= n) {
        throw std::invalid_argument("mb_purification_range: need 1 <= k < n");
    }
    uint32_t t_eff = t ? std::min(*t, n) : n;
    CorrectableFractionTable table(n, k);
    MbWindowProblem prob{table, q, t_eff};
    auto window = find_window(prob);
    if (!window) {
        return std::nullopt;
    }
    auto [p_low, p_high] = *window;
    MbRange range;
    range.p_low = p_low;
    range.p_high = p_high;
    range.f_min_eff = mb_input_fidelity(p_high, q);
    range.f_max_eff = mb_output_fidelity(prob.pe(p_low), q);
    return range;
}

double mb_threshold_search(uint32_t n, std::optional<uint32_t> t, uint32_t k) {
    double lo = 0.0, hi = 0.25;
    for (int it = 0; it < 40 && hi - lo > 1e-5; it++) {
        double mid = 0.5 * (lo + hi);
        if (mb_purification_range(n, mid, t, k).has_value()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ExternalProtocol::ExternalProtocol(std::string name, std::vector<Entry> table)
    : name_(std::move(name)), table_(std::move(table)) {
    if (table_.empty()) {
        throw std::invalid_argument("ExternalProtocol: outcome table must not be empty");
    }
    for (size_t i = 1; i < table_.size(); i++) {
        if (!(table_[i].f_in > table_[i - 1].f_in)) {
            throw std::invalid_argument("ExternalProtocol: fidelity grid must be strictly increasing");
        }
    }
}

ProtocolOutcome ExternalProtocol::evaluate(double f_in) const {
    const Entry *lo = &table_.front();
    const Entry *hi = &table_.back();
    if (f_in <= lo->f_in) {
        return ProtocolOutcome{lo->p_suc, f_in, lo->f_out, 1.0, lo->yield};
    }
    if (f_in >= hi->f_in) {
        return ProtocolOutcome{hi->p_suc, f_in, hi->f_out, 1.0, hi->yield};
    }
    auto it = std::upper_bound(table_.begin(), table_.end(), f_in, [](double v, const Entry &e) {
        return v < e.f_in;
    });
    const Entry &b = *it;
    const Entry &a = *(it - 1);
    double u = (f_in - a.f_in) / (b.f_in - a.f_in);
    auto lerp = [&](double x, double y) {
        return x + u * (y - x);
    };
    return ProtocolOutcome{lerp(a.p_suc, b.p_suc), f_in, lerp(a.f_out, b.f_out), 1.0, lerp(a.yield, b.yield)};
}

}  // namespace pgrand
