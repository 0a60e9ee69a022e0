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

#include "pgrand/sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace pgrand {

void SimConfig::validate() const {
    if (k < 1 || k >= n) {
        throw std::invalid_argument("sim config: need 1 <= k < n");
    }
    if (t > n) {
        throw std::invalid_argument("sim config: need t <= n");
    }
    if (!(p >= 0.0) || p >= 0.75) {
        throw std::invalid_argument("sim config: need 0 <= p < 3/4");
    }
    if (num_encoders < 1 || shots_per_encoder < 1) {
        throw std::invalid_argument("sim config: need at least one encoder and one shot");
    }
}

LogicalOps derive_logical_ops(const CliffordCircuit &circuit, std::span<const uint32_t> kept_qubits) {
    LogicalOps ops;
    ops.xs.reserve(kept_qubits.size());
    ops.zs.reserve(kept_qubits.size());
    for (uint32_t q : kept_qubits) {
        ops.xs.push_back(conjugate_pauli(circuit, PauliString::single(circuit.n, q, PauliOp::X)));
        ops.zs.push_back(conjugate_pauli(circuit, PauliString::single(circuit.n, q, PauliOp::Z)));
    }
    return ops;
}

bool run_trial(
    const ParityCheckMatrix &pcm,
    const SyndromeTable &table,
    const DepolarizingParams &noise,
    Rng &rng,
    SuccessCriterion criterion,
    bool explicit_measurement_mask,
    const LogicalOps *logical,
    uint32_t *sampled_weight_out) {
    PauliString e = sample_error(noise, rng);
    if (sampled_weight_out) {
        *sampled_weight_out = e.weight();
    }
    BitVec s = syndrome(pcm, e);
    if (explicit_measurement_mask) {
        // Alice's measurement word masks the transmitted syndrome and
        // Bob's extraction alike, so it drops out after the update step.
        BitVec mask(s.num_bits());
        for (uint32_t i = 0; i < mask.num_bits(); i++) {
            mask.set_bit(i, rng.next_u64() & 1);
        }
        BitVec transmitted = apply_measurement_update(s, mask);
        s = apply_measurement_update(transmitted, mask);
    }
    auto decoded = table.decode(s);
    if (!decoded) {
        return false;
    }
    if (criterion == SuccessCriterion::exact_identification) {
        return *decoded == e;
    }
    if (logical == nullptr) {
        throw std::invalid_argument("run_trial: logical_equivalence needs the logical operators");
    }
    PauliString residual = e.composed(*decoded);
    if (!syndrome(pcm, residual).is_zero()) {
        return false;
    }
    for (const PauliString &lx : logical->xs) {
        if (residual.symplectic_product(lx)) {
            return false;
        }
    }
    for (const PauliString &lz : logical->zs) {
        if (residual.symplectic_product(lz)) {
            return false;
        }
    }
    return true;
}

SimResult estimate_error_probability(const SimConfig &config) {
    config.validate();
    uint32_t num_gates = config.num_gates ? config.num_gates : default_gate_count(config.n);
    DepolarizingParams noise(config.p, config.n);
    LutBuildOptions lut_opts{config.memory_budget_bytes, std::max(1u, config.workers)};

    SimResult result;
    result.trials = config.trials();
    result.num_gates = num_gates;
    result.seed = config.seed;
    result.weight_trials.assign(config.n + 1, 0);
    result.weight_successes.assign(config.n + 1, 0);
    result.yield = static_cast<double>(config.k) / config.n;

    std::vector<uint32_t> kept(config.k);
    for (uint32_t i = 0; i < config.k; i++) {
        kept[i] = i;
    }

    for (uint32_t enc = 0; enc < config.num_encoders; enc++) {
        uint64_t encoder_seed = Rng::from_stream(config.seed, enc).next_u64();
        CliffordCircuit circuit = sample_random_encoder(config.n, num_gates, encoder_seed);
        ParityCheckMatrix pcm = build_parity_check(circuit, default_measured_qubits(config.n, config.k));
        SyndromeTable table = build_table(pcm, config.t, noise, lut_opts);
        LogicalOps logical;
        if (config.criterion == SuccessCriterion::logical_equivalence) {
            logical = derive_logical_ops(circuit, kept);
        }

        uint32_t workers = std::max(1u, config.workers);
        std::vector<uint64_t> fail_acc(workers, 0);
        std::vector<std::vector<uint64_t>> wt_acc(workers), ws_acc(workers);
        std::atomic<uint32_t> next_chunk{0};
        uint32_t chunk_size = std::max<uint32_t>(64, config.shots_per_encoder / (workers * 8) + 1);
        uint32_t num_chunks = (config.shots_per_encoder + chunk_size - 1) / chunk_size;
        auto run_range = [&](uint32_t worker_id) {
            wt_acc[worker_id].assign(config.n + 1, 0);
            ws_acc[worker_id].assign(config.n + 1, 0);
            for (;;) {
                uint32_t c = next_chunk.fetch_add(1);
                if (c >= num_chunks) {
                    return;
                }
                uint32_t begin = c * chunk_size;
                uint32_t end = std::min(config.shots_per_encoder, begin + chunk_size);
                for (uint32_t shot = begin; shot < end; shot++) {
                    // Trial stream ids are global, so scheduling cannot
                    // change any draw.
                    uint64_t stream = (uint64_t{enc} << 32) | shot;
                    Rng rng = Rng::from_stream(config.seed ^ 0x5172414ED15EA5E5ULL, stream);
                    uint32_t w = 0;
                    bool ok = run_trial(
                        pcm, table, noise, rng, config.criterion, config.explicit_measurement_mask,
                        &logical, &w);
                    wt_acc[worker_id][w]++;
                    if (ok) {
                        ws_acc[worker_id][w]++;
                    } else {
                        fail_acc[worker_id]++;
                    }
                }
            }
        };
        if (workers == 1) {
            run_range(0);
        } else {
            std::vector<std::thread> pool;
            for (uint32_t i = 0; i < workers; i++) {
                pool.emplace_back(run_range, i);
            }
            for (auto &th : pool) {
                th.join();
            }
        }
        for (uint32_t i = 0; i < workers; i++) {
            result.failures += fail_acc[i];
            for (uint32_t w = 0; w <= config.n; w++) {
                result.weight_trials[w] += wt_acc[i][w];
                result.weight_successes[w] += ws_acc[i][w];
            }
        }
    }

    result.pe_hat = static_cast<double>(result.failures) / static_cast<double>(result.trials);
    result.stderr_ = std::sqrt(result.pe_hat * (1.0 - result.pe_hat) / static_cast<double>(result.trials));
    result.fidelity_lower_bound = 1.0 - result.pe_hat;
    return result;
}

double fidelity_lower_bound(double p_e) {
    if (!(p_e >= 0.0) || p_e > 1.0) {
        throw std::invalid_argument("fidelity_lower_bound: need 0 <= p_e <= 1");
    }
    return 1.0 - p_e;
}

}  // namespace pgrand
