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

// Brute-force unitary-matrix oracle for small-n Pauli and Clifford checks.
// Deliberately naive and independent of the bit-packed implementation.

#ifndef PGRAND_TESTS_MATRIX_ORACLE_HPP
#define PGRAND_TESTS_MATRIX_ORACLE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "pgrand/clifford.hpp"
#include "pgrand/pauli.hpp"

namespace oracle {

using cplx = std::complex<double>;

struct Mat {
    size_t dim;
    std::vector<cplx> v;  // row-major

    explicit Mat(size_t dim) : dim(dim), v(dim * dim, cplx{0, 0}) {}

    cplx &at(size_t r, size_t c) { return v[r * dim + c]; }
    const cplx &at(size_t r, size_t c) const { return v[r * dim + c]; }

    static Mat identity(size_t dim) {
        Mat m(dim);
        for (size_t i = 0; i < dim; i++) {
            m.at(i, i) = 1;
        }
        return m;
    }
};

inline Mat mul(const Mat &a, const Mat &b) {
    Mat out(a.dim);
    for (size_t i = 0; i < a.dim; i++) {
        for (size_t k = 0; k < a.dim; k++) {
            cplx aik = a.at(i, k);
            if (aik == cplx{0, 0}) {
                continue;
            }
            for (size_t j = 0; j < a.dim; j++) {
                out.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return out;
}

inline Mat dagger(const Mat &a) {
    Mat out(a.dim);
    for (size_t i = 0; i < a.dim; i++) {
        for (size_t j = 0; j < a.dim; j++) {
            out.at(i, j) = std::conj(a.at(j, i));
        }
    }
    return out;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.dim * b.dim);
    for (size_t i = 0; i < a.dim; i++) {
        for (size_t j = 0; j < a.dim; j++) {
            for (size_t k = 0; k < b.dim; k++) {
                for (size_t l = 0; l < b.dim; l++) {
                    out.at(i * b.dim + k, j * b.dim + l) = a.at(i, j) * b.at(k, l);
                }
            }
        }
    }
    return out;
}

inline Mat pauli_matrix_1q(pgrand::PauliOp op) {
    Mat m(2);
    switch (op) {
        case pgrand::PauliOp::I:
            m.at(0, 0) = 1;
            m.at(1, 1) = 1;
            break;
        case pgrand::PauliOp::X:
            m.at(0, 1) = 1;
            m.at(1, 0) = 1;
            break;
        case pgrand::PauliOp::Y:
            m.at(0, 1) = cplx{0, -1};
            m.at(1, 0) = cplx{0, 1};
            break;
        case pgrand::PauliOp::Z:
            m.at(0, 0) = 1;
            m.at(1, 1) = -1;
            break;
    }
    return m;
}

// Qubit 0 is the leftmost tensor factor.
inline Mat pauli_matrix(const pgrand::PauliString &p) {
    Mat m = pauli_matrix_1q(p.op_at(0));
    for (uint32_t q = 1; q < p.num_qubits(); q++) {
        m = kron(m, pauli_matrix_1q(p.op_at(q)));
    }
    return m;
}

// a == phase * b for some unit phase?
inline bool equal_up_to_phase(const Mat &a, const Mat &b, double tol = 1e-9) {
    cplx phase{0, 0};
    for (size_t i = 0; i < a.v.size(); i++) {
        if (std::abs(b.v[i]) > 1e-12) {
            phase = a.v[i] / b.v[i];
            break;
        }
    }
    if (std::abs(std::abs(phase) - 1.0) > tol) {
        return false;
    }
    for (size_t i = 0; i < a.v.size(); i++) {
        if (std::abs(a.v[i] - phase * b.v[i]) > tol) {
            return false;
        }
    }
    return true;
}

inline Mat gate_matrix_2q(pgrand::PrimitiveGate g) {
    const double s = 1.0 / std::sqrt(2.0);
    Mat h(2), sg(2), id = Mat::identity(2);
    h.at(0, 0) = s;
    h.at(0, 1) = s;
    h.at(1, 0) = s;
    h.at(1, 1) = -s;
    sg.at(0, 0) = 1;
    sg.at(1, 1) = cplx{0, 1};
    switch (g) {
        case pgrand::PrimitiveGate::H0:
            return kron(h, id);
        case pgrand::PrimitiveGate::H1:
            return kron(id, h);
        case pgrand::PrimitiveGate::S0:
            return kron(sg, id);
        case pgrand::PrimitiveGate::S1:
            return kron(id, sg);
        case pgrand::PrimitiveGate::CNOT01: {
            Mat m(4);
            m.at(0, 0) = 1;
            m.at(1, 1) = 1;
            m.at(2, 3) = 1;
            m.at(3, 2) = 1;
            return m;
        }
        case pgrand::PrimitiveGate::CNOT10: {
            Mat m(4);
            m.at(0, 0) = 1;
            m.at(1, 3) = 1;
            m.at(2, 2) = 1;
            m.at(3, 1) = 1;
            return m;
        }
    }
    return Mat(4);
}

// Unitary of one group element on the full n-qubit space, built from its
// generator word with single-qubit embeddings.
inline Mat clifford_gate_matrix(uint32_t n, const pgrand::CliffordGate &gate) {
    const auto &group = pgrand::CliffordGroup::instance();
    Mat u = Mat::identity(size_t{1} << n);
    for (pgrand::PrimitiveGate g : group.word(gate.index)) {
        Mat m2 = gate_matrix_2q(g);
        // Embed the two-qubit matrix at slots (gate.a, gate.b).
        Mat full(size_t{1} << n);
        size_t dim = size_t{1} << n;
        for (size_t row = 0; row < dim; row++) {
            for (size_t col = 0; col < dim; col++) {
                // Bits of the basis index, qubit 0 most significant.
                auto bit_of = [&](size_t idx, uint32_t q) -> size_t {
                    return (idx >> (n - 1 - q)) & 1;
                };
                bool others_equal = true;
                for (uint32_t q = 0; q < n; q++) {
                    if (q != gate.a && q != gate.b && bit_of(row, q) != bit_of(col, q)) {
                        others_equal = false;
                        break;
                    }
                }
                if (!others_equal) {
                    continue;
                }
                size_t r2 = bit_of(row, gate.a) * 2 + bit_of(row, gate.b);
                size_t c2 = bit_of(col, gate.a) * 2 + bit_of(col, gate.b);
                full.at(row, col) = m2.at(r2, c2);
            }
        }
        u = mul(full, u);
    }
    return u;
}

inline Mat circuit_matrix(const pgrand::CliffordCircuit &circuit) {
    Mat u = Mat::identity(size_t{1} << circuit.n);
    for (const auto &gate : circuit.gates) {
        u = mul(clifford_gate_matrix(circuit.n, gate), u);
    }
    return u;
}

}  // namespace oracle

#endif
