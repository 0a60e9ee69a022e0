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

#ifndef PGRAND_PAULI_HPP
#define PGRAND_PAULI_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pgrand {

/// Single-qubit Pauli operators, ordered by decoding priority (X < Z < Y).
/// The 2-bit wire code is x + 2z, so I=0b00, X=0b01, Z=0b10, Y=0b11.
enum class PauliOp : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

/// Packed bit vector, used for syndromes and measurement words.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(uint32_t num_bits);

    uint32_t num_bits() const { return num_bits_; }
    bool bit(uint32_t i) const;
    void set_bit(uint32_t i, bool v);
    bool is_zero() const;

    /// Componentwise XOR. Lengths must match.
    void xor_with(const BitVec &other);

    std::span<const uint64_t> words() const { return words_; }
    std::span<uint64_t> words() { return words_; }

    /// Packs into ceil(num_bits/8) bytes, LSB-first within each byte.
    std::vector<uint8_t> to_bytes() const;
    static BitVec from_bytes(uint32_t num_bits, std::span<const uint8_t> bytes);

    /// "0"/"1" characters, bit 0 first.
    std::string to_string() const;

    bool operator==(const BitVec &other) const;
    bool operator!=(const BitVec &other) const { return !(*this == other); }

   private:
    uint32_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

/// XOR of a syndrome with a measurement-outcome word. Lengths must match.
BitVec apply_measurement_update(const BitVec &syndrome, const BitVec &measurement);

/// An n-qubit Pauli error pattern as paired X/Z bit vectors. Phase is not
/// tracked anywhere: the protocol's observables depend only on the pattern.
class PauliString {
   public:
    explicit PauliString(uint32_t n);

    static PauliString identity(uint32_t n);
    /// Pattern acting with `op` on `qubit` and trivially elsewhere.
    static PauliString single(uint32_t n, uint32_t qubit, PauliOp op);

    uint32_t num_qubits() const { return n_; }

    PauliOp op_at(uint32_t qubit) const;
    void set_op(uint32_t qubit, PauliOp op);
    bool x_bit(uint32_t qubit) const;
    bool z_bit(uint32_t qubit) const;

    /// Number of qubits acted on non-trivially.
    uint32_t weight() const;

    /// Phase-free product: componentwise XOR of the X and Z parts.
    PauliString composed(const PauliString &other) const;
    void compose_with(const PauliString &other);

    /// 0 iff the two strings commute: <x1,z2> + <z1,x2> mod 2.
    int symplectic_product(const PauliString &other) const;

    std::span<const uint64_t> x_words() const { return x_; }
    std::span<const uint64_t> z_words() const { return z_; }

    /// Canonical text rendering over {I,X,Y,Z}, qubit 0 leftmost.
    std::string to_string() const;
    static PauliString from_string(const std::string &text);

    /// Dense enumeration index: per qubit the 2-bit code x+2z, concatenated
    /// little-endian by qubit index. Requires n <= 32.
    uint64_t dense_index() const;
    static PauliString from_dense_index(uint32_t n, uint64_t index);

    /// The same 2n-bit encoding packed into ceil(2n/8) bytes, LSB-first.
    std::vector<uint8_t> to_canonical_bytes() const;
    static PauliString from_canonical_bytes(uint32_t n, std::span<const uint8_t> bytes);

    bool operator==(const PauliString &other) const;
    bool operator!=(const PauliString &other) const { return !(*this == other); }

   private:
    uint32_t n_;
    std::vector<uint64_t> x_, z_;
};

/// weight/compose/symplectic_product as free functions, mirroring the
/// member forms.
inline uint32_t weight(const PauliString &p) {
    return p.weight();
}
inline PauliString compose(const PauliString &p, const PauliString &q) {
    return p.composed(q);
}
inline int symplectic_product(const PauliString &p, const PauliString &q) {
    return p.symplectic_product(q);
}

/// Dense GF(2) matrix, packed row-major.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(uint32_t rows, uint32_t cols);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }

    bool bit(uint32_t r, uint32_t c) const;
    void set_bit(uint32_t r, uint32_t c, bool v);

    std::span<const uint64_t> row_words(uint32_t r) const;
    std::span<uint64_t> row_words(uint32_t r);
    uint32_t words_per_row() const { return words_per_row_; }

    /// row r ^= row s.
    void xor_rows(uint32_t r, uint32_t s);

    /// GF(2) rank by Gaussian elimination (operates on a copy).
    uint32_t rank() const;

    bool row_is_zero(uint32_t r) const;

    bool operator==(const BitMatrix &other) const;

   private:
    uint32_t rows_ = 0, cols_ = 0, words_per_row_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace pgrand

#endif
