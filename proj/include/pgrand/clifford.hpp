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

#ifndef PGRAND_CLIFFORD_HPP
#define PGRAND_CLIFFORD_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pgrand/pauli.hpp"

namespace pgrand {

/// Elementary gates the two-qubit Clifford group is generated from. The
/// suffix names the slot (0 or 1) within the targeted qubit pair.
enum class PrimitiveGate : uint8_t { H0, H1, S0, S1, CNOT01, CNOT10 };

enum class NamedGate : uint8_t { H, S, CNOT, CZ };

/// The 11520-element two-qubit Clifford group (modulo global phase), built
/// once by closing {H, S, CNOT} words over sign-tracked tableaus and
/// deduplicating by canonical form. Element indices are positions in the
/// sorted canonical-form list, so they are stable across runs and platforms.
class CliffordGroup {
   public:
    static constexpr uint32_t SIZE = 11520;

    static const CliffordGroup &instance();

    /// Phase-free conjugation table of element `index`: maps a 4-bit input
    /// mask (x0, z0, x1, z1) to the 4-bit image mask.
    const std::array<uint8_t, 16> &pauli_map(uint32_t index) const;

    /// Index of the inverse group element.
    uint32_t inverse_index(uint32_t index) const;

    /// A generator word realizing element `index` (gates in application order).
    std::span<const PrimitiveGate> word(uint32_t index) const;

    /// Canonical index of a named generator acting on slots (0, 1); the
    /// single-qubit gates act on slot 0.
    uint32_t index_of(NamedGate gate) const;

   private:
    CliffordGroup();
    std::vector<std::array<uint8_t, 16>> pauli_maps_;
    std::vector<uint32_t> inverse_;
    std::vector<std::vector<PrimitiveGate>> words_;
    std::array<uint32_t, 4> named_;
};

/// One two-qubit Clifford group element applied to an ordered qubit pair.
struct CliffordGate {
    uint32_t index;  // element id within CliffordGroup, < CliffordGroup::SIZE
    uint32_t a, b;   // distinct qubit slots

    static CliffordGate named(NamedGate gate, uint32_t a, uint32_t b);
};

/// An encoder: ordered gate list plus the seed that produced it (0 when
/// assembled by hand). Replaying the seed regenerates the same list.
struct CliffordCircuit {
    uint32_t n = 0;
    uint64_t seed = 0;
    std::vector<CliffordGate> gates;
};

/// Default encoding budget, ceil(0.14 n log2(n)^2) gates.
uint32_t default_gate_count(uint32_t n);

/// num_gates gates, each drawn uniformly from the two-qubit Clifford group
/// and applied to a uniformly random unordered pair of distinct qubits.
CliffordCircuit sample_random_encoder(uint32_t n, uint32_t num_gates, uint64_t seed);

/// U P U^-1 as a phase-free Pauli string, gate by gate. O(1) per gate.
PauliString conjugate_pauli(const CliffordCircuit &circuit, const PauliString &p);

/// Reversed circuit with each gate replaced by its group inverse, so that
/// conjugating by it undoes conjugation by the original.
CliffordCircuit inverted(const CliffordCircuit &circuit);

/// One gate per line, `<clifford_index> <q_a> <q_b>`, after a header line
/// `n=<n> seed=<seed>`.
void save_circuit(const CliffordCircuit &circuit, std::ostream &out);
CliffordCircuit load_circuit(std::istream &in);

/// The (n-k) x 2n binary stabilizer matrix: row i is the symplectic form of
/// the i-th measured qubit's evolved Z stabilizer. Column layout is
/// [x_0..x_{n-1} | z_0..z_{n-1}].
struct ParityCheckMatrix {
    uint32_t n = 0;
    uint32_t k = 0;
    BitMatrix h;
    std::vector<PauliString> stabilizers;
    std::vector<uint32_t> measured;
    uint64_t encoder_seed = 0;
    uint32_t num_gates = 0;

    uint32_t num_checks() const { return n - k; }
};

/// Evolves Z_{m_i} for each measured qubit through the encoder. Measured
/// indices must be distinct and within range, and leave at least one qubit
/// unmeasured.
ParityCheckMatrix build_parity_check(const CliffordCircuit &circuit, std::span<const uint32_t> measured_qubits);

/// The default sacrifice set: the last n-k qubit indices.
std::vector<uint32_t> default_measured_qubits(uint32_t n, uint32_t k);

/// Syndrome of an error pattern: bit i = symplectic_product(row_i, e).
BitVec syndrome(const ParityCheckMatrix &pcm, const PauliString &e);

struct GateCostEstimate {
    double overhead_per_pair;      // 3(n/k - 1)
    double expected_cnots;         // (n-k) * 3n/4
    double expected_single_qubit;  // (n-k) * 7n/2
};

GateCostEstimate gate_cost_estimate(uint32_t n, uint32_t k);

}  // namespace pgrand

#endif
