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

#ifndef PGRAND_SYNDROME_TABLE_HPP
#define PGRAND_SYNDROME_TABLE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pgrand/clifford.hpp"
#include "pgrand/noise.hpp"
#include "pgrand/pauli.hpp"

namespace pgrand {

struct LutBuildOptions {
    uint64_t memory_budget_bytes = uint64_t{2} << 30;
    uint32_t workers = 1;
};

/// The GRAND lookup table: each syndrome maps to its most likely error
/// pattern among those of weight <= t, first-come under the likelihood
/// (weight, then lexicographic) enumeration order. Immutable once built;
/// decode is safe to call concurrently.
class SyndromeTable {
   public:
    SyndromeTable() = default;

    uint32_t n() const { return n_; }
    uint32_t k() const { return k_; }
    uint32_t t() const { return t_; }
    uint64_t encoder_seed() const { return encoder_seed_; }
    uint32_t num_gates() const { return num_gates_; }
    const std::vector<uint32_t> &measured_qubits() const { return measured_; }
    /// Depolarization probability the table was built for (provenance only;
    /// the stored content depends only on the weight order).
    double build_p() const { return build_p_; }

    uint64_t size() const { return entry_count_; }
    uint64_t patterns_seen(uint32_t w) const;
    uint64_t patterns_stored(uint32_t w) const;

    /// Stored pattern for the syndrome, or absent when no candidate of
    /// weight <= t produced it.
    std::optional<PauliString> decode(const BitVec &s) const;

    /// patterns_stored[w] / N_w; zero for w > t by definition.
    double empirical_correctable_fraction(uint32_t w) const;

    /// Bit-exact persistent format, little-endian: magic "PGRANDv1", u32 n,
    /// k, t, u64 encoder seed, u32 gate count, u32 entry count, then entries
    /// sorted by syndrome value, each ceil((n-k)/8) syndrome bytes followed
    /// by ceil(2n/8) pattern bytes.
    void serialize(std::ostream &out) const;
    static SyndromeTable deserialize(std::istream &in);

   private:
    friend class LutBuilder;

    uint64_t hash_syndrome(const uint64_t *syn) const;
    bool insert_if_absent(const uint64_t *syn, const uint64_t *pattern);
    const uint64_t *find(const uint64_t *syn) const;
    void rehash(uint64_t bucket_count);
    void recount_from_entries();

    uint32_t n_ = 0, k_ = 0, t_ = 0;
    uint64_t encoder_seed_ = 0;
    uint32_t num_gates_ = 0;
    double build_p_ = 0.0;
    std::vector<uint32_t> measured_;

    uint32_t syn_words_ = 0, pat_words_ = 0;
    uint64_t entry_count_ = 0;
    std::vector<uint64_t> entries_;   // entry i: syn_words_ + pat_words_ words
    std::vector<uint32_t> buckets_;   // open addressing into entries_
    uint64_t bucket_mask_ = 0;

    std::vector<uint64_t> seen_, stored_;  // per weight, 0..t
};

/// Builds the table by enumerating patterns in likelihood order, reusing
/// lower-level partial syndromes along the enumeration walk. Deterministic
/// for fixed (H, t): the outcome does not depend on the worker count.
/// Throws resource_limit_error when min(N_<=t, 2^(n-k)) would not fit the
/// memory budget.
SyndromeTable build_table(
    const ParityCheckMatrix &pcm,
    uint32_t t,
    const DepolarizingParams &noise,
    const LutBuildOptions &opts = {});

/// Same build, checkpointing after every completed weight class so an
/// interrupted run resumes where it stopped. The checkpoint is removed on
/// success.
SyndromeTable build_table_resumable(
    const ParityCheckMatrix &pcm,
    uint32_t t,
    const DepolarizingParams &noise,
    const LutBuildOptions &opts,
    const std::string &checkpoint_path);

}  // namespace pgrand

#endif
