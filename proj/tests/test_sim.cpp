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

#include <cmath>

#include "pgrand/models.hpp"
#include "pgrand/sim.hpp"

using namespace pgrand;

namespace {

struct Fixture {
    CliffordCircuit circuit;
    ParityCheckMatrix pcm;
    SyndromeTable table;
    LogicalOps logical;

    Fixture(uint32_t n, uint32_t k, uint32_t t, uint64_t seed, double p = 0.05)
        : circuit(sample_random_encoder(n, default_gate_count(n), seed)),
          pcm(build_parity_check(circuit, default_measured_qubits(n, k))),
          table(build_table(pcm, t, DepolarizingParams(p, n))) {
        std::vector<uint32_t> kept(k);
        for (uint32_t i = 0; i < k; i++) {
            kept[i] = i;
        }
        logical = derive_logical_ops(circuit, kept);
    }
};

}  // namespace

TEST_CASE("trial outcomes on pinned cases") {
    Fixture fx(8, 2, 2, 11);
    DepolarizingParams zero_noise(0.0, 8);
    Rng rng(1);

    // Identity error succeeds under both criteria.
    CHECK(run_trial(fx.pcm, fx.table, zero_noise, rng, SuccessCriterion::exact_identification, false, nullptr));
    Rng rng2(1);
    CHECK(run_trial(fx.pcm, fx.table, zero_noise, rng2, SuccessCriterion::logical_equivalence, false, &fx.logical));

    // A stored error decodes to itself.
    for (uint32_t q = 0; q < 8; q++) {
        PauliString e = PauliString::single(8, q, PauliOp::X);
        auto dec = fx.table.decode(syndrome(fx.pcm, e));
        if (dec && *dec == e) {
            // Exact identification is the decode round trip.
            CHECK(syndrome(fx.pcm, *dec) == syndrome(fx.pcm, e));
        }
    }

    // Absent syndromes (weight beyond t with no light representative) fail.
    uint64_t absent = 0;
    for (int it = 0; it < 200; it++) {
        PauliString heavy(8);
        for (uint32_t q = 0; q < 8; q++) {
            heavy.set_op(q, static_cast<PauliOp>(1 + (it + q) % 3));
        }
        if (!fx.table.decode(syndrome(fx.pcm, heavy))) {
            absent++;
        }
    }
    CHECK(absent > 0);
}

TEST_CASE("noiseless simulation never fails") {
    SimConfig config;
    config.n = 8;
    config.k = 2;
    config.t = 1;
    config.p = 0.0;
    config.num_encoders = 2;
    config.shots_per_encoder = 200;
    config.seed = 3;
    SimResult result = estimate_error_probability(config);
    CHECK(result.pe_hat == 0.0);
    CHECK(result.fidelity_lower_bound == 1.0);
    CHECK(result.trials == 400);
    CHECK(result.yield == doctest::Approx(0.25));
}

TEST_CASE("t=0 limit reproduces 1-(1-p)^n") {
    SimConfig config;
    config.n = 32;
    config.k = 31;
    config.t = 0;
    config.p = 0.02;
    config.num_encoders = 5;
    config.shots_per_encoder = 2000;
    config.seed = 18;
    SimResult result = estimate_error_probability(config);
    double expected = 1.0 - std::pow(1.0 - config.p, 32);
    CHECK(std::abs(result.pe_hat - expected) <= 3.0 * result.stderr_);
}

TEST_CASE("per-weight success rates match the table's own correctable fractions") {
    // chi-square between MC conditional success rates and the exact stored
    // fractions of the same table, over weights with enough mass.
    SimConfig config;
    config.n = 8;
    config.k = 3;
    config.t = 3;
    config.p = 0.15;
    config.num_encoders = 1;
    config.shots_per_encoder = 20000;
    config.seed = 5;
    SimResult result = estimate_error_probability(config);

    uint64_t enc_seed = Rng::from_stream(config.seed, 0).next_u64();
    Fixture fx(8, 3, 3, enc_seed, 0.15);
    double chi2 = 0.0;
    int bins = 0;
    for (uint32_t w = 0; w <= 3; w++) {
        double trials_w = static_cast<double>(result.weight_trials[w]);
        if (trials_w < 50) {
            continue;
        }
        double expect = fx.table.empirical_correctable_fraction(w);
        double var = trials_w * expect * (1.0 - expect);
        if (var < 1e-9) {
            CHECK(result.weight_successes[w] == static_cast<uint64_t>(trials_w * expect + 0.5));
            continue;
        }
        double diff = static_cast<double>(result.weight_successes[w]) - trials_w * expect;
        chi2 += diff * diff / var;
        bins++;
    }
    CHECK(bins >= 2);
    CHECK(chi2 < 25.0);  // ~99.99th percentile for <= 4 dof

    // Success rates above t are exactly zero.
    for (uint32_t w = 4; w <= 8; w++) {
        CHECK(result.weight_successes[w] == 0);
    }
}

TEST_CASE("logical equivalence never loses to exact identification") {
    for (uint64_t seed : {1ull, 2ull, 9ull}) {
        Fixture fx(10, 4, 2, seed);
        DepolarizingParams noise(0.12, 10);
        uint64_t exact_ok = 0, logical_ok = 0;
        for (uint32_t trial = 0; trial < 3000; trial++) {
            Rng r1 = Rng::from_stream(seed * 977 + 5, trial);
            Rng r2 = Rng::from_stream(seed * 977 + 5, trial);
            exact_ok += run_trial(fx.pcm, fx.table, noise, r1, SuccessCriterion::exact_identification, false, nullptr);
            logical_ok +=
                run_trial(fx.pcm, fx.table, noise, r2, SuccessCriterion::logical_equivalence, false, &fx.logical);
        }
        CHECK(logical_ok >= exact_ok);
    }
}

TEST_CASE("results are reproducible and independent of worker count") {
    SimConfig config;
    config.n = 12;
    config.k = 4;
    config.t = 2;
    config.p = 0.05;
    config.num_encoders = 3;
    config.shots_per_encoder = 500;
    config.seed = 99;
    config.workers = 1;
    SimResult a = estimate_error_probability(config);
    SimResult b = estimate_error_probability(config);
    config.workers = 7;
    SimResult c = estimate_error_probability(config);
    CHECK(a.failures == b.failures);
    CHECK(a.failures == c.failures);
    CHECK(a.weight_trials == c.weight_trials);
    CHECK(a.weight_successes == c.weight_successes);
}

TEST_CASE("explicit measurement masking cancels exactly") {
    SimConfig config;
    config.n = 10;
    config.k = 3;
    config.t = 2;
    config.p = 0.08;
    config.num_encoders = 2;
    config.shots_per_encoder = 400;
    config.seed = 31;
    SimResult plain = estimate_error_probability(config);
    config.explicit_measurement_mask = true;
    SimResult masked = estimate_error_probability(config);
    CHECK(plain.failures == masked.failures);
    CHECK(plain.weight_successes == masked.weight_successes);
}

TEST_CASE("monte carlo agrees with the analytic model on a well-mixed encoder") {
    // Enough gates for the code ensemble to reach random-code statistics.
    SimConfig config;
    config.n = 16;
    config.k = 8;
    config.t = 3;
    config.p = 0.03;
    config.num_gates = 400;
    config.num_encoders = 20;
    config.shots_per_encoder = 1500;
    config.seed = 12;
    config.workers = 4;
    SimResult result = estimate_error_probability(config);
    double analytic = error_probability({16, 8, 0.03, 3});
    CHECK(std::abs(result.pe_hat - analytic) <= 4.0 * result.stderr_);
}

TEST_CASE("config validation and bound") {
    SimConfig bad;
    bad.n = 4;
    bad.k = 4;
    bad.t = 1;
    bad.p = 0.1;
    CHECK_THROWS_AS(estimate_error_probability(bad), std::invalid_argument);
    bad.k = 1;
    bad.t = 9;
    CHECK_THROWS_AS(estimate_error_probability(bad), std::invalid_argument);

    CHECK(fidelity_lower_bound(0.0) == 1.0);
    CHECK(fidelity_lower_bound(1.0) == 0.0);
    CHECK(fidelity_lower_bound(0.0123) == doctest::Approx(0.9877));
    CHECK_THROWS_AS(fidelity_lower_bound(1.5), std::invalid_argument);
}
