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

#include "pgrand/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "pgrand/errors.hpp"
#include "pgrand/noise.hpp"

namespace pgrand {

namespace {

// Conjugation action of a two-qubit Clifford on the four Pauli generators.
// Each image is a 4-bit mask (x0, z0, x1, z1 from bit 0 up) plus a sign bit;
// signs matter only for telling group elements apart.
struct Tableau {
    std::array<uint8_t, 4> img;  // images of X0, Z0, X1, Z1
    uint8_t signs;               // bit i = sign of img[i]

    static Tableau identity() {
        return Tableau{{0b0001, 0b0010, 0b0100, 0b1000}, 0};
    }

    uint32_t canonical() const {
        uint32_t c = signs;
        for (int i = 3; i >= 0; i--) {
            c = (c << 4) | img[i];
        }
        return c;
    }

    bool operator==(const Tableau &o) const {
        return img == o.img && signs == o.signs;
    }
};

// Standard tableau update rules, applied to one (mask, sign) row.
void apply_primitive_row(PrimitiveGate g, uint8_t &m, uint8_t &sign) {
    auto xbit = [&](int q) -> uint8_t { return (m >> (2 * q)) & 1; };
    auto zbit = [&](int q) -> uint8_t { return (m >> (2 * q + 1)) & 1; };
    switch (g) {
        case PrimitiveGate::H0:
        case PrimitiveGate::H1: {
            int q = (g == PrimitiveGate::H0) ? 0 : 1;
            sign ^= xbit(q) & zbit(q);
            uint8_t x = xbit(q), z = zbit(q);
            m = static_cast<uint8_t>((m & ~(3u << (2 * q))) | (z << (2 * q)) | (x << (2 * q + 1)));
            break;
        }
        case PrimitiveGate::S0:
        case PrimitiveGate::S1: {
            int q = (g == PrimitiveGate::S0) ? 0 : 1;
            sign ^= xbit(q) & zbit(q);
            m ^= static_cast<uint8_t>(xbit(q) << (2 * q + 1));
            break;
        }
        case PrimitiveGate::CNOT01:
        case PrimitiveGate::CNOT10: {
            int c = (g == PrimitiveGate::CNOT01) ? 0 : 1;
            int t = 1 - c;
            sign ^= xbit(c) & zbit(t) & (xbit(t) ^ zbit(c) ^ 1);
            m ^= static_cast<uint8_t>(xbit(c) << (2 * t));
            m ^= static_cast<uint8_t>(zbit(t) << (2 * c + 1));
            break;
        }
    }
}

Tableau apply_primitive(PrimitiveGate g, const Tableau &t) {
    Tableau out = t;
    for (int i = 0; i < 4; i++) {
        uint8_t sign = (out.signs >> i) & 1;
        apply_primitive_row(g, out.img[i], sign);
        out.signs = static_cast<uint8_t>((out.signs & ~(1u << i)) | (sign << i));
    }
    return out;
}

Tableau apply_word(std::span<const PrimitiveGate> word, Tableau t) {
    for (PrimitiveGate g : word) {
        t = apply_primitive(g, t);
    }
    return t;
}

PrimitiveGate primitive_inverse_tail(PrimitiveGate g, int repeat_out[1]) {
    // H and CNOT are involutions; S inverts as S^3.
    switch (g) {
        case PrimitiveGate::S0:
        case PrimitiveGate::S1:
            repeat_out[0] = 3;
            return g;
        default:
            repeat_out[0] = 1;
            return g;
    }
}

}  // namespace

const CliffordGroup &CliffordGroup::instance() {
    static CliffordGroup group;
    return group;
}

CliffordGroup::CliffordGroup() {
    static constexpr PrimitiveGate GENERATORS[6] = {
        PrimitiveGate::H0, PrimitiveGate::H1, PrimitiveGate::S0,
        PrimitiveGate::S1, PrimitiveGate::CNOT01, PrimitiveGate::CNOT10,
    };

    // Breadth-first closure from the identity tableau.
    std::unordered_map<uint32_t, std::vector<PrimitiveGate>> seen;
    std::deque<Tableau> frontier;
    Tableau id = Tableau::identity();
    seen.emplace(id.canonical(), std::vector<PrimitiveGate>{});
    frontier.push_back(id);
    while (!frontier.empty()) {
        Tableau cur = frontier.front();
        frontier.pop_front();
        const auto &cur_word = seen.at(cur.canonical());
        for (PrimitiveGate g : GENERATORS) {
            Tableau next = apply_primitive(g, cur);
            uint32_t code = next.canonical();
            if (!seen.count(code)) {
                std::vector<PrimitiveGate> word = cur_word;
                word.push_back(g);
                seen.emplace(code, std::move(word));
                frontier.push_back(next);
            }
        }
    }
    if (seen.size() != SIZE) {
        throw std::logic_error("CliffordGroup: closure produced " + std::to_string(seen.size()) + " elements");
    }

    // Stable indexing: sort by canonical code.
    std::vector<uint32_t> codes;
    codes.reserve(SIZE);
    for (const auto &kv : seen) {
        codes.push_back(kv.first);
    }
    std::sort(codes.begin(), codes.end());
    std::unordered_map<uint32_t, uint32_t> code_to_index;
    code_to_index.reserve(SIZE * 2);
    words_.resize(SIZE);
    for (uint32_t i = 0; i < SIZE; i++) {
        code_to_index.emplace(codes[i], i);
        words_[i] = seen.at(codes[i]);
    }

    // Phase-free conjugation tables: input mask -> XOR of generator images.
    pauli_maps_.resize(SIZE);
    for (uint32_t i = 0; i < SIZE; i++) {
        Tableau t = apply_word(words_[i], Tableau::identity());
        for (uint32_t m = 0; m < 16; m++) {
            uint8_t out = 0;
            for (int b = 0; b < 4; b++) {
                if ((m >> b) & 1) {
                    out ^= t.img[b];
                }
            }
            pauli_maps_[i][m] = out;
        }
    }

    // Inverses via reversed words with per-gate inverses.
    inverse_.resize(SIZE);
    for (uint32_t i = 0; i < SIZE; i++) {
        Tableau t = Tableau::identity();
        const auto &w = words_[i];
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            int repeat = 1;
            PrimitiveGate g = primitive_inverse_tail(*it, &repeat);
            for (int r = 0; r < repeat; r++) {
                t = apply_primitive(g, t);
            }
        }
        auto found = code_to_index.find(t.canonical());
        if (found == code_to_index.end()) {
            throw std::logic_error("CliffordGroup: inverse fell outside the group");
        }
        inverse_[i] = found->second;
    }

    auto index_of_word = [&](std::initializer_list<PrimitiveGate> word) {
        Tableau t = apply_word(std::span<const PrimitiveGate>(word.begin(), word.size()), Tableau::identity());
        return code_to_index.at(t.canonical());
    };
    named_[static_cast<size_t>(NamedGate::H)] = index_of_word({PrimitiveGate::H0});
    named_[static_cast<size_t>(NamedGate::S)] = index_of_word({PrimitiveGate::S0});
    named_[static_cast<size_t>(NamedGate::CNOT)] = index_of_word({PrimitiveGate::CNOT01});
    named_[static_cast<size_t>(NamedGate::CZ)] =
        index_of_word({PrimitiveGate::H1, PrimitiveGate::CNOT01, PrimitiveGate::H1});
}

const std::array<uint8_t, 16> &CliffordGroup::pauli_map(uint32_t index) const {
    if (index >= SIZE) {
        throw std::out_of_range("CliffordGroup::pauli_map: bad element index");
    }
    return pauli_maps_[index];
}

uint32_t CliffordGroup::inverse_index(uint32_t index) const {
    if (index >= SIZE) {
        throw std::out_of_range("CliffordGroup::inverse_index: bad element index");
    }
    return inverse_[index];
}

std::span<const PrimitiveGate> CliffordGroup::word(uint32_t index) const {
    if (index >= SIZE) {
        throw std::out_of_range("CliffordGroup::word: bad element index");
    }
    return words_[index];
}

uint32_t CliffordGroup::index_of(NamedGate gate) const {
    return named_[static_cast<size_t>(gate)];
}

CliffordGate CliffordGate::named(NamedGate gate, uint32_t a, uint32_t b) {
    return CliffordGate{CliffordGroup::instance().index_of(gate), a, b};
}

uint32_t default_gate_count(uint32_t n) {
    if (n < 2) {
        throw std::invalid_argument("default_gate_count: n must be at least 2");
    }
    double lg = std::log2(static_cast<double>(n));
    // Guard against representation noise pushing exact products past ceil.
    return static_cast<uint32_t>(std::ceil(0.14 * n * lg * lg - 1e-9));
}

CliffordCircuit sample_random_encoder(uint32_t n, uint32_t num_gates, uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("sample_random_encoder: n must be at least 2");
    }
    if (num_gates < 1) {
        throw std::invalid_argument("sample_random_encoder: num_gates must be at least 1");
    }
    CliffordCircuit c;
    c.n = n;
    c.seed = seed;
    c.gates.reserve(num_gates);
    Rng rng = Rng::from_stream(seed, 0xC11FF0D0ULL);
    for (uint32_t i = 0; i < num_gates; i++) {
        uint32_t idx = static_cast<uint32_t>(rng.next_below(CliffordGroup::SIZE));
        uint32_t a = static_cast<uint32_t>(rng.next_below(n));
        uint32_t b = static_cast<uint32_t>(rng.next_below(n - 1));
        if (b >= a) {
            b++;
        }
        if (a > b) {
            std::swap(a, b);
        }
        c.gates.push_back(CliffordGate{idx, a, b});
    }
    return c;
}

PauliString conjugate_pauli(const CliffordCircuit &circuit, const PauliString &p) {
    if (p.num_qubits() != circuit.n) {
        throw std::invalid_argument("conjugate_pauli: qubit count mismatch");
    }
    const CliffordGroup &group = CliffordGroup::instance();
    PauliString out = p;
    for (const CliffordGate &g : circuit.gates) {
        if (g.index >= CliffordGroup::SIZE || g.a >= circuit.n || g.b >= circuit.n || g.a == g.b) {
            throw std::invalid_argument("conjugate_pauli: malformed gate");
        }
        uint8_t m = static_cast<uint8_t>(
            (out.x_bit(g.a) ? 1 : 0) | (out.z_bit(g.a) ? 2 : 0) | (out.x_bit(g.b) ? 4 : 0) | (out.z_bit(g.b) ? 8 : 0));
        uint8_t r = group.pauli_map(g.index)[m];
        out.set_op(g.a, static_cast<PauliOp>(r & 3));
        out.set_op(g.b, static_cast<PauliOp>((r >> 2) & 3));
    }
    return out;
}

CliffordCircuit inverted(const CliffordCircuit &circuit) {
    const CliffordGroup &group = CliffordGroup::instance();
    CliffordCircuit inv;
    inv.n = circuit.n;
    inv.seed = circuit.seed;
    inv.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        inv.gates.push_back(CliffordGate{group.inverse_index(it->index), it->a, it->b});
    }
    return inv;
}

void save_circuit(const CliffordCircuit &circuit, std::ostream &out) {
    out << "n=" << circuit.n << " seed=" << circuit.seed << "\n";
    for (const CliffordGate &g : circuit.gates) {
        out << g.index << " " << g.a << " " << g.b << "\n";
    }
}

CliffordCircuit load_circuit(std::istream &in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw io_error("load_circuit: missing header line");
    }
    CliffordCircuit c;
    unsigned long long n = 0, seed = 0;
    if (std::sscanf(header.c_str(), "n=%llu seed=%llu", &n, &seed) != 2) {
        throw io_error("load_circuit: malformed header line");
    }
    c.n = static_cast<uint32_t>(n);
    c.seed = seed;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        unsigned long long idx = 0, a = 0, b = 0;
        if (std::sscanf(line.c_str(), "%llu %llu %llu", &idx, &a, &b) != 3) {
            throw io_error("load_circuit: malformed gate line: " + line);
        }
        if (idx >= CliffordGroup::SIZE || a >= c.n || b >= c.n || a == b) {
            throw io_error("load_circuit: gate out of range: " + line);
        }
        c.gates.push_back(CliffordGate{static_cast<uint32_t>(idx), static_cast<uint32_t>(a), static_cast<uint32_t>(b)});
    }
    return c;
}

std::vector<uint32_t> default_measured_qubits(uint32_t n, uint32_t k) {
    if (k < 1 || k >= n) {
        throw std::invalid_argument("default_measured_qubits: need 1 <= k < n");
    }
    std::vector<uint32_t> measured(n - k);
    for (uint32_t i = 0; i < n - k; i++) {
        measured[i] = k + i;
    }
    return measured;
}

ParityCheckMatrix build_parity_check(const CliffordCircuit &circuit, std::span<const uint32_t> measured_qubits) {
    uint32_t n = circuit.n;
    if (measured_qubits.empty() || measured_qubits.size() >= n) {
        throw std::invalid_argument("build_parity_check: measured set must leave 1 <= k < n kept qubits");
    }
    std::unordered_set<uint32_t> uniq;
    for (uint32_t q : measured_qubits) {
        if (q >= n) {
            throw std::invalid_argument("build_parity_check: measured qubit index out of range");
        }
        if (!uniq.insert(q).second) {
            throw std::invalid_argument("build_parity_check: duplicate measured qubit index");
        }
    }
    uint32_t m = static_cast<uint32_t>(measured_qubits.size());
    ParityCheckMatrix pcm;
    pcm.n = n;
    pcm.k = n - m;
    pcm.h = BitMatrix(m, 2 * n);
    pcm.measured.assign(measured_qubits.begin(), measured_qubits.end());
    pcm.encoder_seed = circuit.seed;
    pcm.num_gates = static_cast<uint32_t>(circuit.gates.size());
    pcm.stabilizers.reserve(m);
    for (uint32_t i = 0; i < m; i++) {
        PauliString row = conjugate_pauli(circuit, PauliString::single(n, measured_qubits[i], PauliOp::Z));
        if (row.weight() == 0) {
            throw std::logic_error("build_parity_check: evolved stabilizer is trivial");
        }
        for (uint32_t q = 0; q < n; q++) {
            pcm.h.set_bit(i, q, row.x_bit(q));
            pcm.h.set_bit(i, n + q, row.z_bit(q));
        }
        pcm.stabilizers.push_back(std::move(row));
    }
    return pcm;
}

BitVec syndrome(const ParityCheckMatrix &pcm, const PauliString &e) {
    if (e.num_qubits() != pcm.n) {
        throw std::invalid_argument("syndrome: qubit count mismatch");
    }
    BitVec s(pcm.num_checks());
    for (uint32_t i = 0; i < pcm.num_checks(); i++) {
        if (pcm.stabilizers[i].symplectic_product(e)) {
            s.set_bit(i, true);
        }
    }
    return s;
}

GateCostEstimate gate_cost_estimate(uint32_t n, uint32_t k) {
    if (k < 1 || k >= n) {
        throw std::invalid_argument("gate_cost_estimate: need 1 <= k < n");
    }
    double nd = n, kd = k;
    return GateCostEstimate{
        3.0 * (nd / kd - 1.0),
        (nd - kd) * (3.0 * nd / 4.0),
        (nd - kd) * (7.0 * nd / 2.0),
    };
}

}  // namespace pgrand
