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

#ifndef PGRAND_COMPARE_HPP
#define PGRAND_COMPARE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgrand/noise.hpp"

namespace pgrand {

struct ProtocolOutcome {
    double p_suc;
    double f_in;
    double f_out;
    double n_in;
    double k_out;

    double yield() const { return k_out / n_in; }
};

struct OxfordRoundResult {
    BellDiagonalState state;
    double p_suc;  // N_r, the probability the two measurement results agree
};

/// One recurrence round: A' = (A^2+B^2)/N, B' = 2CD/N, C' = (C^2+D^2)/N,
/// D' = 2AB/N with N = (A+B)^2 + (C+D)^2.
OxfordRoundResult oxford_round(const BellDiagonalState &state);

struct OxfordProtocolResult {
    ProtocolOutcome outcome;
    /// False when the iteration cannot approach the perfect Bell pair
    /// (initial fidelity at or below 1/2).
    bool converging;
};

/// Chains `rounds` recurrence rounds from a Werner input; the pair budget is
/// the idealized binary tree, 2^rounds inputs per output, so the yield is
/// 2^-rounds and P_suc multiplies over rounds.
OxfordProtocolResult oxford_protocol(double f_initial, uint32_t rounds);

/// Y_E = P_suc * (k_out/n_in) * (F_out - F_in), floored at zero.
double effective_yield(const ProtocolOutcome &outcome);

/// Werner fidelity after moving resource-state noise q onto a pair that
/// already carries noise p: 1 - p - q + (4/3) p q. Symmetric in (p, q).
double mb_input_fidelity(double p, double q);

/// Same transfer applied to the output: 1 - p_e - q + (4/3) p_e q.
double mb_output_fidelity(double p_e, double q);

/// Smaller root of (4/3) q^2 - 2 q + (1 - f_floor) = 0: the resource noise
/// at which two transferred q layers exhaust the fidelity floor.
double mb_threshold_q(double f_floor);

struct MbRange {
    double f_min_eff;  // minimum effective input fidelity that still purifies
    double f_max_eff;  // best achievable effective output fidelity
    double p_low, p_high;  // pair-noise window where purification succeeds
};

/// Purification window of the measurement-based protocol on n pairs with
/// per-qubit resource noise q. The decoder sees the pair noise dressed by
/// one resource layer per coupling side (p then q twice under depolarizing
/// composition); purification demands the transferred output fidelity beat
/// the transferred input fidelity. Absent when no window exists.
std::optional<MbRange> mb_purification_range(
    uint32_t n, double q, std::optional<uint32_t> t = std::nullopt, uint32_t k = 1);

/// Largest q with a nonempty purification window, bisected to 1e-5.
double mb_threshold_search(uint32_t n, std::optional<uint32_t> t = std::nullopt, uint32_t k = 1);

/// Outcome table of an externally specified protocol, interpolated linearly
/// on a strictly increasing fidelity grid.
class ExternalProtocol {
   public:
    struct Entry {
        double f_in;
        double p_suc;
        double f_out;
        double yield;
    };

    ExternalProtocol(std::string name, std::vector<Entry> table);

    const std::string &name() const { return name_; }
    const std::vector<Entry> &table() const { return table_; }

    /// Clamps below the grid to the first entry and above to the last.
    ProtocolOutcome evaluate(double f_in) const;

   private:
    std::string name_;
    std::vector<Entry> table_;
};

}  // namespace pgrand

#endif
