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

#include "pgrand/syndrome_table.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include "pgrand/errors.hpp"

namespace pgrand {

namespace {

constexpr uint32_t EMPTY_BUCKET = 0xFFFFFFFFu;
constexpr char MAGIC[9] = "PGRANDv1";
constexpr char CKPT_MAGIC[9] = "PGRANDc1";

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t next_pow2(uint64_t v) {
    uint64_t p = 16;
    while (p < v) {
        p <<= 1;
    }
    return p;
}

void write_u32(std::ostream &out, uint32_t v) {
    uint8_t b[4] = {
        static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8),
        static_cast<uint8_t>(v >> 16), static_cast<uint8_t>(v >> 24)};
    out.write(reinterpret_cast<const char *>(b), 4);
}

void write_u64(std::ostream &out, uint64_t v) {
    for (int i = 0; i < 8; i++) {
        uint8_t b = static_cast<uint8_t>(v >> (8 * i));
        out.write(reinterpret_cast<const char *>(&b), 1);
    }
}

uint32_t read_u32(std::istream &in) {
    uint8_t b[4];
    in.read(reinterpret_cast<char *>(b), 4);
    if (!in) {
        throw io_error("syndrome table: truncated file");
    }
    return uint32_t{b[0]} | uint32_t{b[1]} << 8 | uint32_t{b[2]} << 16 | uint32_t{b[3]} << 24;
}

uint64_t read_u64(std::istream &in) {
    uint8_t b[8];
    in.read(reinterpret_cast<char *>(b), 8);
    if (!in) {
        throw io_error("syndrome table: truncated file");
    }
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) {
        v |= uint64_t{b[i]} << (8 * i);
    }
    return v;
}

void words_to_bytes(const uint64_t *words, uint32_t num_bits, std::vector<uint8_t> &out) {
    uint32_t num_bytes = (num_bits + 7) / 8;
    out.resize(num_bytes);
    for (uint32_t i = 0; i < num_bytes; i++) {
        out[i] = static_cast<uint8_t>(words[i >> 3] >> ((i & 7) * 8));
    }
}

void bytes_to_words(const uint8_t *bytes, uint32_t num_bits, uint64_t *words, uint32_t num_words) {
    std::fill(words, words + num_words, 0);
    uint32_t num_bytes = (num_bits + 7) / 8;
    for (uint32_t i = 0; i < num_bytes; i++) {
        words[i >> 3] |= uint64_t{bytes[i]} << ((i & 7) * 8);
    }
}

// Little-endian integer comparison of equal-length word arrays.
bool syndrome_value_less(const uint64_t *a, const uint64_t *b, uint32_t words) {
    for (uint32_t i = words; i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return false;
}

}  // namespace

uint64_t SyndromeTable::hash_syndrome(const uint64_t *syn) const {
    uint64_t h = 0x6A09E667F3BCC909ULL;
    for (uint32_t i = 0; i < syn_words_; i++) {
        h = mix64(h ^ syn[i]);
    }
    return h;
}

bool SyndromeTable::insert_if_absent(const uint64_t *syn, const uint64_t *pattern) {
    if ((entry_count_ + 1) * 2 > buckets_.size()) {
        rehash(buckets_.size() * 2);
    }
    uint64_t pos = hash_syndrome(syn) & bucket_mask_;
    for (;;) {
        uint32_t idx = buckets_[pos];
        if (idx == EMPTY_BUCKET) {
            break;
        }
        const uint64_t *stored = entries_.data() + static_cast<size_t>(idx) * (syn_words_ + pat_words_);
        if (std::equal(stored, stored + syn_words_, syn)) {
            return false;
        }
        pos = (pos + 1) & bucket_mask_;
    }
    buckets_[pos] = static_cast<uint32_t>(entry_count_);
    entries_.insert(entries_.end(), syn, syn + syn_words_);
    entries_.insert(entries_.end(), pattern, pattern + pat_words_);
    entry_count_++;
    return true;
}

const uint64_t *SyndromeTable::find(const uint64_t *syn) const {
    if (entry_count_ == 0) {
        return nullptr;
    }
    uint64_t pos = hash_syndrome(syn) & bucket_mask_;
    for (;;) {
        uint32_t idx = buckets_[pos];
        if (idx == EMPTY_BUCKET) {
            return nullptr;
        }
        const uint64_t *stored = entries_.data() + static_cast<size_t>(idx) * (syn_words_ + pat_words_);
        if (std::equal(stored, stored + syn_words_, syn)) {
            return stored;
        }
        pos = (pos + 1) & bucket_mask_;
    }
}

void SyndromeTable::rehash(uint64_t bucket_count) {
    bucket_count = next_pow2(bucket_count);
    buckets_.assign(bucket_count, EMPTY_BUCKET);
    bucket_mask_ = bucket_count - 1;
    uint32_t stride = syn_words_ + pat_words_;
    for (uint64_t i = 0; i < entry_count_; i++) {
        const uint64_t *syn = entries_.data() + i * stride;
        uint64_t pos = hash_syndrome(syn) & bucket_mask_;
        while (buckets_[pos] != EMPTY_BUCKET) {
            pos = (pos + 1) & bucket_mask_;
        }
        buckets_[pos] = static_cast<uint32_t>(i);
    }
}

void SyndromeTable::recount_from_entries() {
    seen_.assign(t_ + 1, 0);
    stored_.assign(t_ + 1, 0);
    uint32_t stride = syn_words_ + pat_words_;
    for (uint64_t i = 0; i < entry_count_; i++) {
        const uint64_t *pat = entries_.data() + i * stride + syn_words_;
        uint32_t w = 0;
        for (uint32_t q = 0; q < n_; q++) {
            if ((pat[q >> 5] >> ((q & 31) * 2)) & 3) {
                w++;
            }
        }
        if (w <= t_) {
            stored_[w]++;
        }
    }
    for (uint32_t w = 0; w <= t_; w++) {
        if (n_ <= 256) {
            auto exact = count_patterns(n_, w).exact;
            seen_[w] = exact->to_u64().value_or(UINT64_MAX);
        } else {
            double lc = log2_count(n_, w);
            seen_[w] = lc < 63 ? static_cast<uint64_t>(std::llround(std::exp2(lc))) : UINT64_MAX;
        }
    }
}

uint64_t SyndromeTable::patterns_seen(uint32_t w) const {
    return w <= t_ ? seen_[w] : 0;
}

uint64_t SyndromeTable::patterns_stored(uint32_t w) const {
    return w <= t_ ? stored_[w] : 0;
}

std::optional<PauliString> SyndromeTable::decode(const BitVec &s) const {
    if (s.num_bits() != n_ - k_) {
        throw std::invalid_argument("SyndromeTable::decode: syndrome length mismatch");
    }
    const uint64_t *entry = find(s.words().data());
    if (!entry) {
        return std::nullopt;
    }
    const uint64_t *pat = entry + syn_words_;
    PauliString p(n_);
    for (uint32_t q = 0; q < n_; q++) {
        uint8_t code = (pat[q >> 5] >> ((q & 31) * 2)) & 3;
        if (code) {
            p.set_op(q, static_cast<PauliOp>(code));
        }
    }
    return p;
}

double SyndromeTable::empirical_correctable_fraction(uint32_t w) const {
    if (w > t_) {
        return 0.0;
    }
    return static_cast<double>(stored_[w]) * std::exp2(-log2_count(n_, w));
}

void SyndromeTable::serialize(std::ostream &out) const {
    out.write(MAGIC, 8);
    write_u32(out, n_);
    write_u32(out, k_);
    write_u32(out, t_);
    write_u64(out, encoder_seed_);
    write_u32(out, num_gates_);
    write_u32(out, static_cast<uint32_t>(entry_count_));

    uint32_t stride = syn_words_ + pat_words_;
    std::vector<uint64_t> order(entry_count_);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) {
        return syndrome_value_less(entries_.data() + a * stride, entries_.data() + b * stride, syn_words_);
    });

    std::vector<uint8_t> buf;
    for (uint64_t i : order) {
        const uint64_t *entry = entries_.data() + i * stride;
        words_to_bytes(entry, n_ - k_, buf);
        out.write(reinterpret_cast<const char *>(buf.data()), static_cast<std::streamsize>(buf.size()));
        words_to_bytes(entry + syn_words_, 2 * n_, buf);
        out.write(reinterpret_cast<const char *>(buf.data()), static_cast<std::streamsize>(buf.size()));
    }
}

SyndromeTable SyndromeTable::deserialize(std::istream &in) {
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, MAGIC, 8) != 0) {
        throw io_error("syndrome table: bad magic");
    }
    SyndromeTable table;
    table.n_ = read_u32(in);
    table.k_ = read_u32(in);
    table.t_ = read_u32(in);
    table.encoder_seed_ = read_u64(in);
    table.num_gates_ = read_u32(in);
    uint32_t count = read_u32(in);
    if (table.n_ == 0 || table.k_ == 0 || table.k_ >= table.n_ || table.t_ > table.n_) {
        throw io_error("syndrome table: inconsistent header");
    }
    table.measured_ = default_measured_qubits(table.n_, table.k_);
    table.syn_words_ = (table.n_ - table.k_ + 63) / 64;
    table.pat_words_ = (2 * table.n_ + 63) / 64;
    table.rehash(next_pow2(uint64_t{count} * 2 + 16));
    uint32_t syn_bytes = (table.n_ - table.k_ + 7) / 8;
    uint32_t pat_bytes = (2 * table.n_ + 7) / 8;
    std::vector<uint8_t> buf(syn_bytes + pat_bytes);
    std::vector<uint64_t> syn(table.syn_words_), pat(table.pat_words_);
    for (uint32_t i = 0; i < count; i++) {
        in.read(reinterpret_cast<char *>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (!in) {
            throw io_error("syndrome table: truncated entries");
        }
        bytes_to_words(buf.data(), table.n_ - table.k_, syn.data(), table.syn_words_);
        bytes_to_words(buf.data() + syn_bytes, 2 * table.n_, pat.data(), table.pat_words_);
        if (!table.insert_if_absent(syn.data(), pat.data())) {
            throw io_error("syndrome table: duplicate syndrome in file");
        }
    }
    table.recount_from_entries();
    return table;
}

// --- builder ---

class LutBuilder {
   public:
    LutBuilder(const ParityCheckMatrix &pcm, uint32_t t, const DepolarizingParams &noise, const LutBuildOptions &opts)
        : pcm_(pcm), t_(t), opts_(opts) {
        uint32_t n = pcm.n;
        if (noise.n != n) {
            throw std::invalid_argument("build_table: noise qubit count mismatch");
        }
        if (t > n) {
            throw std::invalid_argument("build_table: t must not exceed n");
        }
        table_.n_ = n;
        table_.k_ = pcm.k;
        table_.t_ = t;
        table_.encoder_seed_ = pcm.encoder_seed;
        table_.num_gates_ = pcm.num_gates;
        table_.build_p_ = noise.p;
        table_.measured_ = pcm.measured;
        table_.syn_words_ = (pcm.num_checks() + 63) / 64;
        table_.pat_words_ = (2 * n + 63) / 64;
        table_.seen_.assign(t + 1, 0);
        table_.stored_.assign(t + 1, 0);

        check_budget();
        build_columns();
    }

    // Estimated table size is min(N_<=t, 2^(n-k)); refuse builds that cannot
    // fit the budget before touching any pattern.
    void check_budget() const {
        double log2_entries = std::min(log2_count_up_to(pcm_.n, t_), static_cast<double>(pcm_.num_checks()));
        double entry_bytes = 8.0 * (table_.syn_words_ + table_.pat_words_);
        double est_bytes = std::exp2(log2_entries) * (entry_bytes + 8.0);
        if (log2_entries > 62 || est_bytes > static_cast<double>(opts_.memory_budget_bytes)) {
            char msg[160];
            std::snprintf(
                msg, sizeof(msg),
                "build_table: estimated table of 2^%.2f entries exceeds memory budget of %llu bytes",
                log2_entries, static_cast<unsigned long long>(opts_.memory_budget_bytes));
            throw resource_limit_error(msg);
        }
    }

    void build_columns() {
        uint32_t n = pcm_.n;
        uint32_t sw = table_.syn_words_;
        cols_.assign(static_cast<size_t>(n) * 3 * sw, 0);
        for (uint32_t i = 0; i < pcm_.num_checks(); i++) {
            const PauliString &row = pcm_.stabilizers[i];
            for (uint32_t q = 0; q < n; q++) {
                bool rx = row.x_bit(q), rz = row.z_bit(q);
                // Contribution of each code (0=X, 1=Z, 2=Y) at qubit q to
                // syndrome bit i.
                bool contrib[3] = {rz, rx, static_cast<bool>(rx ^ rz)};
                for (uint32_t c = 0; c < 3; c++) {
                    if (contrib[c]) {
                        cols_[(static_cast<size_t>(q) * 3 + c) * sw + (i >> 6)] |= uint64_t{1} << (i & 63);
                    }
                }
            }
        }
    }

    const uint64_t *col(uint32_t q, uint8_t code) const {
        return cols_.data() + (static_cast<size_t>(q) * 3 + code) * table_.syn_words_;
    }

    void size_buckets() {
        double log2_entries = std::min(log2_count_up_to(pcm_.n, t_), static_cast<double>(pcm_.num_checks()));
        uint64_t est = log2_entries < 62 ? static_cast<uint64_t>(std::exp2(log2_entries)) : UINT64_MAX;
        table_.rehash(next_pow2(est * 2 + 16));
    }

    // Candidate entries of one enumeration shard, kept in first-seen order.
    struct LocalShard {
        SyndromeTable map;  // abused as a syn->pattern set with local dedup
        uint64_t seen = 0;

        void init(const SyndromeTable &proto) {
            map.n_ = proto.n_;
            map.k_ = proto.k_;
            map.t_ = proto.t_;
            map.syn_words_ = proto.syn_words_;
            map.pat_words_ = proto.pat_words_;
            map.rehash(1024);
        }
    };

    // Walks one weight class within [first_lo, first_hi), keeping an XOR
    // stack of partial syndromes so each step costs O(changed levels).
    template <typename Sink>
    void walk_shard(uint32_t w, uint32_t first_lo, uint32_t first_hi, Sink &&sink) {
        uint32_t sw = table_.syn_words_;
        std::vector<uint64_t> stack((w + 1) * sw, 0);
        std::vector<uint64_t> pattern(table_.pat_words_, 0);
        std::vector<uint32_t> prev_support;
        walk_weight_class(pcm_.n, w, first_lo, first_hi, [&](std::span<const uint32_t> support, std::span<const uint8_t> codes, uint32_t dirty) {
            for (size_t j = dirty; j < prev_support.size(); j++) {
                uint32_t q = prev_support[j];
                pattern[q >> 5] &= ~(uint64_t{3} << ((q & 31) * 2));
            }
            prev_support.assign(support.begin(), support.end());
            for (size_t j = dirty; j < support.size(); j++) {
                const uint64_t *column = col(support[j], codes[j]);
                uint64_t *dst = stack.data() + (j + 1) * sw;
                const uint64_t *src = stack.data() + j * sw;
                for (uint32_t i = 0; i < sw; i++) {
                    dst[i] = src[i] ^ column[i];
                }
                uint32_t q = support[j];
                pattern[q >> 5] |= (uint64_t{codes[j]} + 1) << ((q & 31) * 2);
            }
            sink(stack.data() + support.size() * sw, pattern.data());
        });
    }

    void build_weight_class(uint32_t w) {
        uint32_t n = pcm_.n;
        double class_log2 = log2_count(n, w);
        bool parallel = opts_.workers > 1 && class_log2 > 18 && w >= 1;
        if (!parallel) {
            walk_shard(w, 0, n == 0 ? 1 : n, [&](const uint64_t *syn, const uint64_t *pat) {
                table_.seen_[w]++;
                if (table_.insert_if_absent(syn, pat)) {
                    table_.stored_[w]++;
                }
            });
            return;
        }

        // Partition by first support position into chunks of comparable
        // pattern counts, then merge shard-local candidates in order so the
        // result is exactly the sequential one.
        uint32_t max_first = n - w;
        std::vector<double> class_sizes(max_first + 1);
        for (uint32_t f = 0; f <= max_first; f++) {
            class_sizes[f] = std::exp2(log2_count(n - 1 - f, w - 1));
        }
        double total = std::accumulate(class_sizes.begin(), class_sizes.end(), 0.0);
        uint32_t num_chunks = std::min<uint32_t>(opts_.workers * 4, max_first + 1);
        std::vector<std::pair<uint32_t, uint32_t>> chunks;
        double per_chunk = total / num_chunks;
        uint32_t start = 0;
        double acc = 0;
        for (uint32_t f = 0; f <= max_first; f++) {
            acc += class_sizes[f];
            if (acc >= per_chunk || f == max_first) {
                chunks.emplace_back(start, f + 1);
                start = f + 1;
                acc = 0;
            }
        }

        std::vector<LocalShard> shards(chunks.size());
        std::atomic<uint32_t> next_chunk{0};
        auto worker = [&]() {
            for (;;) {
                uint32_t c = next_chunk.fetch_add(1);
                if (c >= chunks.size()) {
                    return;
                }
                LocalShard &shard = shards[c];
                shard.init(table_);
                walk_shard(w, chunks[c].first, chunks[c].second, [&](const uint64_t *syn, const uint64_t *pat) {
                    shard.seen++;
                    // Skip syndromes already claimed by lighter patterns;
                    // the global table is immutable during this pass.
                    if (table_.find(syn) == nullptr) {
                        shard.map.insert_if_absent(syn, pat);
                    }
                });
            }
        };
        std::vector<std::thread> pool;
        for (uint32_t i = 0; i < opts_.workers; i++) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }

        uint32_t stride = table_.syn_words_ + table_.pat_words_;
        for (const LocalShard &shard : shards) {
            table_.seen_[w] += shard.seen;
            for (uint64_t i = 0; i < shard.map.entry_count_; i++) {
                const uint64_t *entry = shard.map.entries_.data() + i * stride;
                if (table_.insert_if_absent(entry, entry + table_.syn_words_)) {
                    table_.stored_[w]++;
                }
            }
        }
    }

    SyndromeTable take() { return std::move(table_); }

    // Restores the state saved after some completed weight class; returns
    // the next weight to build, or 0 when nothing usable was found.
    uint32_t resume_from_checkpoint(std::istream &in, const DepolarizingParams &noise) {
        char magic[8];
        in.read(magic, 8);
        if (!in || std::memcmp(magic, CKPT_MAGIC, 8) != 0) {
            return 0;
        }
        uint32_t completed = read_u32(in);
        SyndromeTable partial = SyndromeTable::deserialize(in);
        bool matches = partial.n() == pcm_.n && partial.k() == pcm_.k && partial.t() == t_ &&
                       partial.encoder_seed() == pcm_.encoder_seed && partial.num_gates() == pcm_.num_gates;
        if (!matches || completed >= t_) {
            return 0;
        }
        partial.build_p_ = noise.p;
        partial.measured_ = pcm_.measured;
        for (uint32_t w = 0; w <= t_; w++) {
            partial.seen_[w] = read_u64(in);
            partial.stored_[w] = read_u64(in);
        }
        if (!in) {
            return 0;
        }
        table_ = std::move(partial);
        return completed + 1;
    }

    SyndromeTable table_;
    const ParityCheckMatrix &pcm_;
    uint32_t t_;
    LutBuildOptions opts_;
    std::vector<uint64_t> cols_;
};

SyndromeTable build_table(
    const ParityCheckMatrix &pcm, uint32_t t, const DepolarizingParams &noise, const LutBuildOptions &opts) {
    LutBuilder builder(pcm, t, noise, opts);
    builder.size_buckets();
    for (uint32_t w = 0; w <= t; w++) {
        builder.build_weight_class(w);
    }
    return builder.take();
}

namespace {

void write_checkpoint(const std::string &path, const SyndromeTable &table, uint32_t completed_weight) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw io_error("checkpoint: cannot open " + tmp);
        }
        out.write(CKPT_MAGIC, 8);
        write_u32(out, completed_weight);
        table.serialize(out);
        for (uint32_t w = 0; w <= table.t(); w++) {
            write_u64(out, table.patterns_seen(w));
            write_u64(out, table.patterns_stored(w));
        }
        if (!out) {
            throw io_error("checkpoint: write failed on " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

SyndromeTable build_table_resumable(
    const ParityCheckMatrix &pcm,
    uint32_t t,
    const DepolarizingParams &noise,
    const LutBuildOptions &opts,
    const std::string &checkpoint_path) {
    LutBuilder builder(pcm, t, noise, opts);

    uint32_t start_w = 0;
    if (std::filesystem::exists(checkpoint_path)) {
        std::ifstream in(checkpoint_path, std::ios::binary);
        start_w = builder.resume_from_checkpoint(in, noise);
    }
    if (start_w == 0) {
        builder.size_buckets();
    }
    for (uint32_t w = start_w; w <= t; w++) {
        builder.build_weight_class(w);
        if (w < t) {
            write_checkpoint(checkpoint_path, builder.table_, w);
        }
    }
    std::error_code ec;
    std::filesystem::remove(checkpoint_path, ec);
    return builder.take();
}

}  // namespace pgrand
