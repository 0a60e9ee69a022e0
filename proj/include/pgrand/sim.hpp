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

#ifndef PGRAND_SIM_HPP
#define PGRAND_SIM_HPP

#include <cstdint>
#include <vector>

#include "pgrand/clifford.hpp"
#include "pgrand/noise.hpp"
#include "pgrand/pauli.hpp"
#include "pgrand/syndrome_table.hpp"

namespace pgrand {

enum class SuccessCriterion : uint8_t {
    /// Decoded pattern equals the sampled one.
    exact_identification,
    /// Residual compose(E, E_hat) has zero syndrome and commutes with the
    /// kept qubits' logical operators; degenerate corrections count.
    logical_equivalence,
};

struct SimConfig {
    uint32_t n = 0;
    uint32_t k = 0;
    uint32_t t = 0;
    double p = 0.0;
    uint32_t num_gates = 0;  // 0 selects the default budget
    uint32_t num_encoders = 20;
    uint32_t shots_per_encoder = 1000;
    uint64_t seed = 0;
    SuccessCriterion criterion = SuccessCriterion::exact_identification;
    /// Simulate the measurement-word XOR explicitly on both sides instead
    /// of relying on its cancellation.
    bool explicit_measurement_mask = false;
    uint32_t workers = 1;
    uint64_t memory_budget_bytes = uint64_t{2} << 30;

    uint64_t trials() const { return uint64_t{num_encoders} * shots_per_encoder; }
    void validate() const;
};

struct SimResult {
    double pe_hat = 0.0;
    double stderr_ = 0.0;  // Wald binomial standard error
    double fidelity_lower_bound = 1.0;
    double yield = 0.0;
    uint64_t trials = 0;
    uint64_t failures = 0;
    uint32_t num_gates = 0;
    uint64_t seed = 0;
    std::vector<uint64_t> weight_trials;     // indexed by sampled weight
    std::vector<uint64_t> weight_successes;
};

/// Logical X/Z operators of the kept qubits, evolved through the encoder.
struct LogicalOps {
    std::vector<PauliString> xs, zs;
};

LogicalOps derive_logical_ops(const CliffordCircuit &circuit, std::span<const uint32_t> kept_qubits);

/// One protocol trial: sample an error, extract and decode its syndrome,
/// judge success under the configured criterion. The logical operators are
/// needed only for logical_equivalence and may be null otherwise.
bool run_trial(
    const ParityCheckMatrix &pcm,
    const SyndromeTable &table,
    const DepolarizingParams &noise,
    Rng &rng,
    SuccessCriterion criterion,
    bool explicit_measurement_mask,
    const LogicalOps *logical,
    uint32_t *sampled_weight_out = nullptr);

/// Monte Carlo estimate of the protocol error probability, averaged over
/// num_encoders independent random encoders with shots_per_encoder trials
/// each. Every trial draws from its own counter-derived RNG stream, so the
/// estimate is bitwise independent of the worker count.
SimResult estimate_error_probability(const SimConfig &config);

/// 1 - p_e: a lower bound on the mean output fidelity, not the fidelity.
double fidelity_lower_bound(double p_e);

}  // namespace pgrand

#endif
