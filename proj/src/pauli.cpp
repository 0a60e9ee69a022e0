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

#include "pgrand/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace pgrand {

namespace {

uint32_t words_for_bits(uint32_t bits) {
    return (bits + 63) / 64;
}

void check_same_size(uint32_t a, uint32_t b, const char *what) {
    if (a != b) {
        throw std::invalid_argument(
            std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

BitVec::BitVec(uint32_t num_bits) : num_bits_(num_bits), words_(words_for_bits(num_bits), 0) {
}

bool BitVec::bit(uint32_t i) const {
    if (i >= num_bits_) {
        throw std::out_of_range("BitVec::bit: index " + std::to_string(i) + " >= " + std::to_string(num_bits_));
    }
    return (words_[i >> 6] >> (i & 63)) & 1;
}

void BitVec::set_bit(uint32_t i, bool v) {
    if (i >= num_bits_) {
        throw std::out_of_range("BitVec::set_bit: index " + std::to_string(i) + " >= " + std::to_string(num_bits_));
    }
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

bool BitVec::is_zero() const {
    for (uint64_t w : words_) {
        if (w) {
            return false;
        }
    }
    return true;
}

void BitVec::xor_with(const BitVec &other) {
    check_same_size(num_bits_, other.num_bits_, "BitVec::xor_with");
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] ^= other.words_[i];
    }
}

std::vector<uint8_t> BitVec::to_bytes() const {
    std::vector<uint8_t> out((num_bits_ + 7) / 8, 0);
    for (size_t i = 0; i < out.size(); i++) {
        out[i] = static_cast<uint8_t>(words_[i >> 3] >> ((i & 7) * 8));
    }
    return out;
}

BitVec BitVec::from_bytes(uint32_t num_bits, std::span<const uint8_t> bytes) {
    if (bytes.size() != (num_bits + 7) / 8) {
        throw std::invalid_argument("BitVec::from_bytes: wrong byte count");
    }
    BitVec v(num_bits);
    for (size_t i = 0; i < bytes.size(); i++) {
        v.words_[i >> 3] |= uint64_t{bytes[i]} << ((i & 7) * 8);
    }
    uint32_t tail = num_bits & 63;
    if (tail && !v.words_.empty()) {
        v.words_.back() &= (uint64_t{1} << tail) - 1;
    }
    return v;
}

std::string BitVec::to_string() const {
    std::string s(num_bits_, '0');
    for (uint32_t i = 0; i < num_bits_; i++) {
        if (bit(i)) {
            s[i] = '1';
        }
    }
    return s;
}

bool BitVec::operator==(const BitVec &other) const {
    return num_bits_ == other.num_bits_ && words_ == other.words_;
}

BitVec apply_measurement_update(const BitVec &syndrome, const BitVec &measurement) {
    BitVec out = syndrome;
    out.xor_with(measurement);
    return out;
}

PauliString::PauliString(uint32_t n) : n_(n), x_(words_for_bits(n), 0), z_(words_for_bits(n), 0) {
}

PauliString PauliString::identity(uint32_t n) {
    return PauliString(n);
}

PauliString PauliString::single(uint32_t n, uint32_t qubit, PauliOp op) {
    PauliString p(n);
    p.set_op(qubit, op);
    return p;
}

PauliOp PauliString::op_at(uint32_t qubit) const {
    if (qubit >= n_) {
        throw std::out_of_range("PauliString::op_at: qubit out of range");
    }
    uint32_t x = (x_[qubit >> 6] >> (qubit & 63)) & 1;
    uint32_t z = (z_[qubit >> 6] >> (qubit & 63)) & 1;
    return static_cast<PauliOp>(x | (z << 1));
}

void PauliString::set_op(uint32_t qubit, PauliOp op) {
    if (qubit >= n_) {
        throw std::out_of_range("PauliString::set_op: qubit out of range");
    }
    uint64_t mask = uint64_t{1} << (qubit & 63);
    uint8_t code = static_cast<uint8_t>(op);
    if (code & 1) {
        x_[qubit >> 6] |= mask;
    } else {
        x_[qubit >> 6] &= ~mask;
    }
    if (code & 2) {
        z_[qubit >> 6] |= mask;
    } else {
        z_[qubit >> 6] &= ~mask;
    }
}

bool PauliString::x_bit(uint32_t qubit) const {
    if (qubit >= n_) {
        throw std::out_of_range("PauliString::x_bit: qubit out of range");
    }
    return (x_[qubit >> 6] >> (qubit & 63)) & 1;
}

bool PauliString::z_bit(uint32_t qubit) const {
    if (qubit >= n_) {
        throw std::out_of_range("PauliString::z_bit: qubit out of range");
    }
    return (z_[qubit >> 6] >> (qubit & 63)) & 1;
}

uint32_t PauliString::weight() const {
    uint32_t w = 0;
    for (size_t i = 0; i < x_.size(); i++) {
        w += std::popcount(x_[i] | z_[i]);
    }
    return w;
}

PauliString PauliString::composed(const PauliString &other) const {
    PauliString out = *this;
    out.compose_with(other);
    return out;
}

void PauliString::compose_with(const PauliString &other) {
    check_same_size(n_, other.n_, "PauliString::compose_with");
    for (size_t i = 0; i < x_.size(); i++) {
        x_[i] ^= other.x_[i];
        z_[i] ^= other.z_[i];
    }
}

int PauliString::symplectic_product(const PauliString &other) const {
    check_same_size(n_, other.n_, "PauliString::symplectic_product");
    uint64_t acc = 0;
    for (size_t i = 0; i < x_.size(); i++) {
        acc ^= x_[i] & other.z_[i];
        acc ^= z_[i] & other.x_[i];
    }
    return std::popcount(acc) & 1;
}

std::string PauliString::to_string() const {
    static const char names[4] = {'I', 'X', 'Z', 'Y'};
    std::string s(n_, 'I');
    for (uint32_t q = 0; q < n_; q++) {
        s[q] = names[static_cast<uint8_t>(op_at(q))];
    }
    return s;
}

PauliString PauliString::from_string(const std::string &text) {
    PauliString p(static_cast<uint32_t>(text.size()));
    for (uint32_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
                break;
            case 'X':
                p.set_op(q, PauliOp::X);
                break;
            case 'Z':
                p.set_op(q, PauliOp::Z);
                break;
            case 'Y':
                p.set_op(q, PauliOp::Y);
                break;
            default:
                throw std::invalid_argument("PauliString::from_string: invalid character");
        }
    }
    return p;
}

uint64_t PauliString::dense_index() const {
    if (n_ > 32) {
        throw std::invalid_argument("PauliString::dense_index: requires n <= 32");
    }
    uint64_t idx = 0;
    for (uint32_t q = 0; q < n_; q++) {
        idx |= uint64_t{static_cast<uint8_t>(op_at(q))} << (2 * q);
    }
    return idx;
}

PauliString PauliString::from_dense_index(uint32_t n, uint64_t index) {
    if (n > 32) {
        throw std::invalid_argument("PauliString::from_dense_index: requires n <= 32");
    }
    PauliString p(n);
    for (uint32_t q = 0; q < n; q++) {
        p.set_op(q, static_cast<PauliOp>((index >> (2 * q)) & 3));
    }
    return p;
}

std::vector<uint8_t> PauliString::to_canonical_bytes() const {
    std::vector<uint8_t> out((2 * static_cast<size_t>(n_) + 7) / 8, 0);
    for (uint32_t q = 0; q < n_; q++) {
        uint8_t code = static_cast<uint8_t>(op_at(q));
        size_t bit_pos = 2 * static_cast<size_t>(q);
        out[bit_pos >> 3] |= static_cast<uint8_t>((code & 3) << (bit_pos & 7));
    }
    return out;
}

PauliString PauliString::from_canonical_bytes(uint32_t n, std::span<const uint8_t> bytes) {
    if (bytes.size() != (2 * static_cast<size_t>(n) + 7) / 8) {
        throw std::invalid_argument("PauliString::from_canonical_bytes: wrong byte count");
    }
    PauliString p(n);
    for (uint32_t q = 0; q < n; q++) {
        size_t bit_pos = 2 * static_cast<size_t>(q);
        uint8_t code = (bytes[bit_pos >> 3] >> (bit_pos & 7)) & 3;
        p.set_op(q, static_cast<PauliOp>(code));
    }
    return p;
}

bool PauliString::operator==(const PauliString &other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
}

BitMatrix::BitMatrix(uint32_t rows, uint32_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for_bits(cols)), words_(static_cast<size_t>(rows) * words_for_bits(cols), 0) {
}

bool BitMatrix::bit(uint32_t r, uint32_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("BitMatrix::bit: index out of range");
    }
    return (words_[static_cast<size_t>(r) * words_per_row_ + (c >> 6)] >> (c & 63)) & 1;
}

void BitMatrix::set_bit(uint32_t r, uint32_t c, bool v) {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("BitMatrix::set_bit: index out of range");
    }
    uint64_t &w = words_[static_cast<size_t>(r) * words_per_row_ + (c >> 6)];
    uint64_t mask = uint64_t{1} << (c & 63);
    if (v) {
        w |= mask;
    } else {
        w &= ~mask;
    }
}

std::span<const uint64_t> BitMatrix::row_words(uint32_t r) const {
    if (r >= rows_) {
        throw std::out_of_range("BitMatrix::row_words: row out of range");
    }
    return {words_.data() + static_cast<size_t>(r) * words_per_row_, words_per_row_};
}

std::span<uint64_t> BitMatrix::row_words(uint32_t r) {
    if (r >= rows_) {
        throw std::out_of_range("BitMatrix::row_words: row out of range");
    }
    return {words_.data() + static_cast<size_t>(r) * words_per_row_, words_per_row_};
}

void BitMatrix::xor_rows(uint32_t r, uint32_t s) {
    if (r >= rows_ || s >= rows_) {
        throw std::out_of_range("BitMatrix::xor_rows: row out of range");
    }
    auto dst = row_words(r);
    auto src = row_words(s);
    for (uint32_t i = 0; i < words_per_row_; i++) {
        dst[i] ^= src[i];
    }
}

uint32_t BitMatrix::rank() const {
    BitMatrix m = *this;
    uint32_t rank = 0;
    for (uint32_t c = 0; c < cols_ && rank < rows_; c++) {
        uint32_t pivot = rows_;
        for (uint32_t r = rank; r < rows_; r++) {
            if (m.bit(r, c)) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows_) {
            continue;
        }
        if (pivot != rank) {
            for (uint32_t i = 0; i < words_per_row_; i++) {
                std::swap(m.row_words(pivot)[i], m.row_words(rank)[i]);
            }
        }
        for (uint32_t r = 0; r < rows_; r++) {
            if (r != rank && m.bit(r, c)) {
                m.xor_rows(r, rank);
            }
        }
        rank++;
    }
    return rank;
}

bool BitMatrix::row_is_zero(uint32_t r) const {
    for (uint64_t w : row_words(r)) {
        if (w) {
            return false;
        }
    }
    return true;
}

bool BitMatrix::operator==(const BitMatrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_;
}

}  // namespace pgrand
