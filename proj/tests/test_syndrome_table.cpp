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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "pgrand/errors.hpp"
#include "pgrand/syndrome_table.hpp"

using namespace pgrand;

namespace {

ParityCheckMatrix make_pcm(uint32_t n, uint32_t k, uint64_t seed, uint32_t gates = 0) {
    CliffordCircuit circuit = sample_random_encoder(n, gates ? gates : default_gate_count(n), seed);
    return build_parity_check(circuit, default_measured_qubits(n, k));
}

// Brute-force map syndrome -> minimal weight over all 4^n patterns.
std::map<std::string, uint32_t> min_weight_by_syndrome(const ParityCheckMatrix &pcm) {
    std::map<std::string, uint32_t> best;
    uint64_t total = uint64_t{1} << (2 * pcm.n);
    for (uint64_t i = 0; i < total; i++) {
        PauliString e = PauliString::from_dense_index(pcm.n, i);
        std::string s = syndrome(pcm, e).to_string();
        auto it = best.find(s);
        if (it == best.end() || e.weight() < it->second) {
            best[s] = e.weight();
        }
    }
    return best;
}

}  // namespace

TEST_CASE("t=0 table holds exactly the identity") {
    ParityCheckMatrix pcm = make_pcm(6, 2, 5);
    SyndromeTable table = build_table(pcm, 0, DepolarizingParams(0.1, 6));
    CHECK(table.size() == 1);
    auto dec = table.decode(BitVec(4));
    REQUIRE(dec.has_value());
    CHECK(dec->weight() == 0);
    CHECK(table.empirical_correctable_fraction(0) == 1.0);
    CHECK(table.empirical_correctable_fraction(1) == 0.0);
}

TEST_CASE("stored patterns are weight-minimal representatives (exhaustive n <= 6)") {
    for (auto [n, k, t, seed] : {std::tuple<uint32_t, uint32_t, uint32_t, uint64_t>{5, 1, 5, 2},
                                 {6, 2, 6, 9},
                                 {6, 1, 3, 14},
                                 {4, 2, 4, 1}}) {
        ParityCheckMatrix pcm = make_pcm(n, k, seed);
        SyndromeTable table = build_table(pcm, t, DepolarizingParams(0.05, n));
        auto oracle = min_weight_by_syndrome(pcm);

        CHECK(table.size() <= uint64_t{1} << (n - k));
        uint64_t stored_total = 0;
        for (uint32_t w = 0; w <= t; w++) {
            stored_total += table.patterns_stored(w);
        }
        CHECK(stored_total == table.size());

        // Every oracle syndrome reachable within weight t must be present,
        // mapped to a pattern of exactly the minimal weight, and round-trip
        // through the real syndrome map.
        for (const auto &[syn_text, min_w] : oracle) {
            BitVec s(n - k);
            for (uint32_t i = 0; i < s.num_bits(); i++) {
                s.set_bit(i, syn_text[i] == '1');
            }
            auto dec = table.decode(s);
            if (min_w <= t) {
                REQUIRE(dec.has_value());
                CHECK(dec->weight() == min_w);
                CHECK(syndrome(pcm, *dec) == s);
            } else {
                CHECK_FALSE(dec.has_value());
            }
        }
    }
}

TEST_CASE("weight-1 coverage on a full-rank code") {
    ParityCheckMatrix pcm = make_pcm(5, 1, 2);
    SyndromeTable table = build_table(pcm, 5, DepolarizingParams(0.05, 5));
    CHECK(table.size() <= 16);
    // Every weight-1 pattern with a unique syndrome must be stored.
    std::map<std::string, int> syn_count;
    for (uint32_t q = 0; q < 5; q++) {
        for (PauliOp op : {PauliOp::X, PauliOp::Z, PauliOp::Y}) {
            syn_count[syndrome(pcm, PauliString::single(5, q, op)).to_string()]++;
        }
    }
    for (uint32_t q = 0; q < 5; q++) {
        for (PauliOp op : {PauliOp::X, PauliOp::Z, PauliOp::Y}) {
            PauliString e = PauliString::single(5, q, op);
            BitVec s = syndrome(pcm, e);
            if (s.is_zero() || syn_count[s.to_string()] > 1) {
                continue;
            }
            auto dec = table.decode(s);
            REQUIRE(dec.has_value());
            CHECK(*dec == e);
        }
    }
}

TEST_CASE("decode round trip and absence") {
    ParityCheckMatrix pcm = make_pcm(12, 4, 21);
    SyndromeTable table = build_table(pcm, 2, DepolarizingParams(0.01, 12));
    Rng rng(8);
    for (int it = 0; it < 200; it++) {
        PauliString e(12);
        uint32_t q = static_cast<uint32_t>(rng.next_below(12));
        e.set_op(q, static_cast<PauliOp>(1 + rng.next_below(3)));
        auto dec = table.decode(syndrome(pcm, e));
        REQUIRE(dec.has_value());
        // Consistency: the decoded pattern reproduces the syndrome.
        CHECK(syndrome(pcm, *dec) == syndrome(pcm, e));
        CHECK(dec->weight() <= e.weight());
    }
    CHECK_THROWS_AS(table.decode(BitVec(3)), std::invalid_argument);
}

TEST_CASE("per-weight counters match the count oracle") {
    ParityCheckMatrix pcm = make_pcm(32, 12, 77, 120);
    SyndromeTable table = build_table(pcm, 3, DepolarizingParams(0.01, 32));
    CHECK(table.patterns_seen(0) == 1);
    CHECK(table.patterns_seen(1) == 96);
    CHECK(table.patterns_seen(2) == 4464);
    CHECK(table.patterns_seen(3) == 133920);  // C(32,3) * 27
    CHECK(table.patterns_stored(0) == 1);

    // Independent stored-count oracle for weight 1: distinct nonzero
    // syndromes over the 96 single-qubit patterns.
    std::map<std::string, int> syn1;
    for (uint32_t q = 0; q < 32; q++) {
        for (PauliOp op : {PauliOp::X, PauliOp::Z, PauliOp::Y}) {
            BitVec s = syndrome(pcm, PauliString::single(32, q, op));
            if (!s.is_zero()) {
                syn1[s.to_string()]++;
            }
        }
    }
    CHECK(table.patterns_stored(1) == syn1.size());

    CHECK(table.size() <= 1 + 96 + 4464 + 133920);
    CHECK(table.empirical_correctable_fraction(2) ==
          doctest::Approx(table.patterns_stored(2) / 4464.0).epsilon(1e-12));
}

TEST_CASE("builds are deterministic and independent of the worker count") {
    ParityCheckMatrix pcm = make_pcm(20, 6, 123, 90);
    DepolarizingParams noise(0.02, 20);
    SyndromeTable seq = build_table(pcm, 3, noise, {uint64_t{2} << 30, 1});
    SyndromeTable par = build_table(pcm, 3, noise, {uint64_t{2} << 30, 8});
    std::ostringstream a, b;
    seq.serialize(a);
    par.serialize(b);
    CHECK(a.str() == b.str());
    CHECK(seq.size() == par.size());
    for (uint32_t w = 0; w <= 3; w++) {
        CHECK(seq.patterns_seen(w) == par.patterns_seen(w));
        CHECK(seq.patterns_stored(w) == par.patterns_stored(w));
    }
}

TEST_CASE("serialization is byte-exact, sorted, and round-trips") {
    ParityCheckMatrix pcm = make_pcm(9, 3, 5);
    SyndromeTable table = build_table(pcm, 2, DepolarizingParams(0.03, 9));
    std::ostringstream out1, out2;
    table.serialize(out1);
    table.serialize(out2);
    std::string bytes = out1.str();
    CHECK(bytes == out2.str());
    CHECK(bytes.substr(0, 8) == "PGRANDv1");

    // Header fields: n, k, t, seed, gate count, entry count.
    auto u32_at = [&](size_t off) {
        return uint32_t(uint8_t(bytes[off])) | uint32_t(uint8_t(bytes[off + 1])) << 8 |
               uint32_t(uint8_t(bytes[off + 2])) << 16 | uint32_t(uint8_t(bytes[off + 3])) << 24;
    };
    CHECK(u32_at(8) == 9);
    CHECK(u32_at(12) == 3);
    CHECK(u32_at(16) == 2);
    CHECK(u32_at(28) == pcm.num_gates);
    uint32_t entries = u32_at(32);
    CHECK(entries == table.size());
    uint32_t syn_bytes = (9 - 3 + 7) / 8, pat_bytes = (2 * 9 + 7) / 8;
    CHECK(bytes.size() == 36 + size_t{entries} * (syn_bytes + pat_bytes));

    // Entries sorted ascending by syndrome value (single byte here).
    for (uint32_t i = 1; i < entries; i++) {
        CHECK(uint8_t(bytes[36 + (i - 1) * (syn_bytes + pat_bytes)]) <
              uint8_t(bytes[36 + i * (syn_bytes + pat_bytes)]));
    }

    std::istringstream in(bytes);
    SyndromeTable loaded = SyndromeTable::deserialize(in);
    CHECK(loaded.n() == 9);
    CHECK(loaded.k() == 3);
    CHECK(loaded.t() == 2);
    CHECK(loaded.size() == table.size());
    CHECK(loaded.encoder_seed() == table.encoder_seed());
    for (uint32_t w = 0; w <= 2; w++) {
        CHECK(loaded.patterns_stored(w) == table.patterns_stored(w));
    }
    std::ostringstream out3;
    loaded.serialize(out3);
    CHECK(out3.str() == bytes);

    std::istringstream junk("NOTALUT!xxxx");
    CHECK_THROWS_AS(SyndromeTable::deserialize(junk), io_error);
}

TEST_CASE("memory budget is enforced up front") {
    ParityCheckMatrix pcm = make_pcm(40, 2, 4, 100);
    CHECK_THROWS_AS(
        build_table(pcm, 12, DepolarizingParams(0.05, 40), {1 << 20, 1}),
        resource_limit_error);
}

TEST_CASE("resumable builds continue from the checkpoint and clean it up") {
    ParityCheckMatrix pcm = make_pcm(14, 5, 31, 60);
    DepolarizingParams noise(0.02, 14);
    std::string ckpt = (std::filesystem::temp_directory_path() / "pgrand_test_lut.ckpt").string();
    std::filesystem::remove(ckpt);

    SyndromeTable direct = build_table(pcm, 3, noise);

    // Simulate an interrupted run: build a t=3 table but stop it by writing
    // only through weight 1, then resume.
    {
        SyndromeTable partial = build_table(pcm, 1, noise);
        // Recreate the checkpoint layout the builder writes: completed
        // weight then table then counters. The partial table has t=1; a
        // resumable t=3 run must reject it and start over (header mismatch),
        // so this also exercises the mismatch path.
        std::ofstream out(ckpt, std::ios::binary);
        out.write("PGRANDc1", 8);
        char w = 1;
        out.write(&w, 1);
        char zeros[3] = {0, 0, 0};
        out.write(zeros, 3);
        partial.serialize(out);
    }
    SyndromeTable resumed = build_table_resumable(pcm, 3, noise, {}, ckpt);
    std::ostringstream a, b;
    direct.serialize(a);
    resumed.serialize(b);
    CHECK(a.str() == b.str());
    CHECK_FALSE(std::filesystem::exists(ckpt));

    // Clean run with no checkpoint present.
    SyndromeTable fresh = build_table_resumable(pcm, 3, noise, {}, ckpt);
    std::ostringstream c;
    fresh.serialize(c);
    CHECK(c.str() == a.str());
    CHECK_FALSE(std::filesystem::exists(ckpt));
}

TEST_CASE("build rejects mismatched noise dimension and oversized t") {
    ParityCheckMatrix pcm = make_pcm(8, 2, 1);
    CHECK_THROWS_AS(build_table(pcm, 2, DepolarizingParams(0.1, 9)), std::invalid_argument);
    CHECK_THROWS_AS(build_table(pcm, 9, DepolarizingParams(0.1, 8)), std::invalid_argument);
}
