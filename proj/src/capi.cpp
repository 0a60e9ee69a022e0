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

#include "pgrand/pgrand.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "pgrand/clifford.hpp"
#include "pgrand/compare.hpp"
#include "pgrand/errors.hpp"
#include "pgrand/models.hpp"
#include "pgrand/noise.hpp"
#include "pgrand/sim.hpp"
#include "pgrand/syndrome_table.hpp"

struct pgrand_circuit {
    pgrand::CliffordCircuit circuit;
};

struct pgrand_lut {
    pgrand::SyndromeTable table;
};

struct pgrand_protocol_table {
    pgrand::ExternalProtocol protocol;
};

namespace {

thread_local std::string g_last_error;

pgrand_status fail(pgrand_status code, const char *msg) {
    g_last_error = msg;
    return code;
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
pgrand_status guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const pgrand::resource_limit_error &e) {
        return fail(PGRAND_ERR_RESOURCE_LIMIT, e.what());
    } catch (const pgrand::io_error &e) {
        return fail(PGRAND_ERR_IO, e.what());
    } catch (const std::out_of_range &e) {
        return fail(PGRAND_ERR_DIMENSION_MISMATCH, e.what());
    } catch (const std::invalid_argument &e) {
        std::string what = e.what();
        if (what.find("mismatch") != std::string::npos) {
            g_last_error = what;
            return PGRAND_ERR_DIMENSION_MISMATCH;
        }
        return fail(PGRAND_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc &) {
        return fail(PGRAND_ERR_RESOURCE_LIMIT, "out of memory");
    } catch (const std::exception &e) {
        return fail(PGRAND_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(PGRAND_ERR_INTERNAL, "unknown error");
    }
}

pgrand_status require(bool ok, const char *msg) {
    return ok ? PGRAND_OK : fail(PGRAND_ERR_INVALID_ARGUMENT, msg);
}

pgrand_status unattainable(const char *msg) {
    g_last_error = msg;
    return PGRAND_ERR_UNATTAINABLE;
}

pgrand_status write_string(const std::string &s, char *out, size_t cap, const char *what) {
    if (out == nullptr || cap < s.size() + 1) {
        return fail(PGRAND_ERR_INVALID_ARGUMENT, what);
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return PGRAND_OK;
}

}  // namespace

extern "C" {

const char *pgrand_version(void) {
    return "0.1.0";
}

const char *pgrand_last_error(void) {
    return g_last_error.c_str();
}

pgrand_status pgrand_default_gate_count(uint32_t n, uint32_t *out) {
    if (auto st = require(out, "pgrand_default_gate_count: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::default_gate_count(n);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_circuit_sample(uint32_t n, uint32_t num_gates, uint64_t seed, pgrand_circuit **out) {
    if (auto st = require(out, "pgrand_circuit_sample: null output")) {
        return st;
    }
    return guarded([&] {
        *out = new pgrand_circuit{pgrand::sample_random_encoder(n, num_gates, seed)};
        return PGRAND_OK;
    });
}

pgrand_status pgrand_circuit_save(const pgrand_circuit *c, const char *path) {
    if (auto st = require(c && path, "pgrand_circuit_save: null argument")) {
        return st;
    }
    return guarded([&] {
        std::ofstream out(path);
        if (!out) {
            throw pgrand::io_error(std::string("cannot open ") + path);
        }
        pgrand::save_circuit(c->circuit, out);
        if (!out) {
            throw pgrand::io_error(std::string("write failed on ") + path);
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_circuit_load(const char *path, pgrand_circuit **out) {
    if (auto st = require(path && out, "pgrand_circuit_load: null argument")) {
        return st;
    }
    return guarded([&] {
        std::ifstream in(path);
        if (!in) {
            throw pgrand::io_error(std::string("cannot open ") + path);
        }
        *out = new pgrand_circuit{pgrand::load_circuit(in)};
        return PGRAND_OK;
    });
}

pgrand_status pgrand_circuit_num_qubits(const pgrand_circuit *c, uint32_t *out) {
    if (auto st = require(c && out, "pgrand_circuit_num_qubits: null argument")) {
        return st;
    }
    *out = c->circuit.n;
    return PGRAND_OK;
}

pgrand_status pgrand_circuit_num_gates(const pgrand_circuit *c, uint32_t *out) {
    if (auto st = require(c && out, "pgrand_circuit_num_gates: null argument")) {
        return st;
    }
    *out = static_cast<uint32_t>(c->circuit.gates.size());
    return PGRAND_OK;
}

pgrand_status pgrand_circuit_seed(const pgrand_circuit *c, uint64_t *out) {
    if (auto st = require(c && out, "pgrand_circuit_seed: null argument")) {
        return st;
    }
    *out = c->circuit.seed;
    return PGRAND_OK;
}

void pgrand_circuit_free(pgrand_circuit *c) {
    delete c;
}

pgrand_status pgrand_gate_cost_estimate(
    uint32_t n, uint32_t k, double *overhead_per_pair, double *expected_cnots, double *expected_single_qubit) {
    return guarded([&] {
        pgrand::GateCostEstimate est = pgrand::gate_cost_estimate(n, k);
        if (overhead_per_pair) {
            *overhead_per_pair = est.overhead_per_pair;
        }
        if (expected_cnots) {
            *expected_cnots = est.expected_cnots;
        }
        if (expected_single_qubit) {
            *expected_single_qubit = est.expected_single_qubit;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_lut_build(
    const pgrand_circuit *circuit,
    uint32_t k,
    uint32_t t,
    double p,
    uint64_t memory_budget_bytes,
    uint32_t workers,
    const char *checkpoint_path,
    pgrand_lut **out) {
    if (auto st = require(circuit && out, "pgrand_lut_build: null argument")) {
        return st;
    }
    return guarded([&] {
        pgrand::ParityCheckMatrix pcm = pgrand::build_parity_check(
            circuit->circuit, pgrand::default_measured_qubits(circuit->circuit.n, k));
        pgrand::DepolarizingParams noise(p, circuit->circuit.n);
        pgrand::LutBuildOptions opts{memory_budget_bytes, workers ? workers : 1};
        pgrand::SyndromeTable table =
            checkpoint_path ? pgrand::build_table_resumable(pcm, t, noise, opts, checkpoint_path)
                            : pgrand::build_table(pcm, t, noise, opts);
        *out = new pgrand_lut{std::move(table)};
        return PGRAND_OK;
    });
}

pgrand_status pgrand_lut_save(const pgrand_lut *lut, const char *path) {
    if (auto st = require(lut && path, "pgrand_lut_save: null argument")) {
        return st;
    }
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw pgrand::io_error(std::string("cannot open ") + path);
        }
        lut->table.serialize(out);
        if (!out) {
            throw pgrand::io_error(std::string("write failed on ") + path);
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_lut_load(const char *path, pgrand_lut **out) {
    if (auto st = require(path && out, "pgrand_lut_load: null argument")) {
        return st;
    }
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw pgrand::io_error(std::string("cannot open ") + path);
        }
        *out = new pgrand_lut{pgrand::SyndromeTable::deserialize(in)};
        return PGRAND_OK;
    });
}

pgrand_status pgrand_lut_entry_count(const pgrand_lut *lut, uint64_t *out) {
    if (auto st = require(lut && out, "pgrand_lut_entry_count: null argument")) {
        return st;
    }
    *out = lut->table.size();
    return PGRAND_OK;
}

pgrand_status pgrand_lut_params(
    const pgrand_lut *lut, uint32_t *n, uint32_t *k, uint32_t *t, uint64_t *encoder_seed, uint32_t *num_gates) {
    if (auto st = require(lut, "pgrand_lut_params: null argument")) {
        return st;
    }
    if (n) {
        *n = lut->table.n();
    }
    if (k) {
        *k = lut->table.k();
    }
    if (t) {
        *t = lut->table.t();
    }
    if (encoder_seed) {
        *encoder_seed = lut->table.encoder_seed();
    }
    if (num_gates) {
        *num_gates = lut->table.num_gates();
    }
    return PGRAND_OK;
}

pgrand_status pgrand_lut_stats(const pgrand_lut *lut, uint32_t w, uint64_t *patterns_seen, uint64_t *patterns_stored) {
    if (auto st = require(lut, "pgrand_lut_stats: null argument")) {
        return st;
    }
    if (patterns_seen) {
        *patterns_seen = lut->table.patterns_seen(w);
    }
    if (patterns_stored) {
        *patterns_stored = lut->table.patterns_stored(w);
    }
    return PGRAND_OK;
}

pgrand_status pgrand_lut_correctable_fraction(const pgrand_lut *lut, uint32_t w, double *out) {
    if (auto st = require(lut && out, "pgrand_lut_correctable_fraction: null argument")) {
        return st;
    }
    return guarded([&] {
        *out = lut->table.empirical_correctable_fraction(w);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_lut_decode(
    const pgrand_lut *lut, const uint8_t *syndrome_bytes, size_t syndrome_len, char *pattern_out, size_t pattern_cap,
    int *found) {
    if (auto st = require(lut && syndrome_bytes && found, "pgrand_lut_decode: null argument")) {
        return st;
    }
    return guarded([&] {
        uint32_t m = lut->table.n() - lut->table.k();
        if (syndrome_len != (m + 7) / 8) {
            throw std::invalid_argument("pgrand_lut_decode: syndrome length mismatch");
        }
        pgrand::BitVec s = pgrand::BitVec::from_bytes(m, {syndrome_bytes, syndrome_len});
        auto decoded = lut->table.decode(s);
        *found = decoded.has_value() ? 1 : 0;
        if (decoded) {
            return write_string(decoded->to_string(), pattern_out, pattern_cap, "pgrand_lut_decode: buffer too small");
        }
        return PGRAND_OK;
    });
}

void pgrand_lut_free(pgrand_lut *lut) {
    delete lut;
}

pgrand_status pgrand_simulate(const pgrand_sim_config *config, pgrand_sim_result *result) {
    if (auto st = require(config && result, "pgrand_simulate: null argument")) {
        return st;
    }
    return guarded([&] {
        pgrand::SimConfig cfg;
        cfg.n = config->n;
        cfg.k = config->k;
        cfg.t = config->t;
        cfg.p = config->p;
        cfg.num_gates = config->num_gates;
        cfg.num_encoders = config->num_encoders;
        cfg.shots_per_encoder = config->shots_per_encoder;
        cfg.seed = config->seed;
        cfg.criterion = config->logical_equivalence ? pgrand::SuccessCriterion::logical_equivalence
                                                    : pgrand::SuccessCriterion::exact_identification;
        cfg.explicit_measurement_mask = config->explicit_measurement_mask != 0;
        cfg.workers = config->workers ? config->workers : 1;
        cfg.memory_budget_bytes = config->memory_budget_bytes ? config->memory_budget_bytes : (uint64_t{2} << 30);
        pgrand::SimResult res = pgrand::estimate_error_probability(cfg);
        result->pe_hat = res.pe_hat;
        result->stderr_ = res.stderr_;
        result->fidelity_lower_bound = res.fidelity_lower_bound;
        result->yield = res.yield;
        result->trials = res.trials;
        result->failures = res.failures;
        result->num_gates = res.num_gates;
        return PGRAND_OK;
    });
}

pgrand_status pgrand_avg_correctable_fraction(uint32_t n, uint32_t k, uint32_t t, uint32_t w, double *out) {
    if (auto st = require(out, "pgrand_avg_correctable_fraction: null output")) {
        return st;
    }
    return guarded([&] {
        // p is irrelevant to the fraction; any in-domain value validates.
        *out = pgrand::avg_correctable_fraction({n, k, 0.01, t}, w);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_error_probability(uint32_t n, uint32_t k, double p, uint32_t t, double *out) {
    if (auto st = require(out, "pgrand_error_probability: null output")) {
        return st;
    }
    return guarded([&] {
        if (p == 0.0) {
            pgrand::CorrectableFractionTable table(n, k);
            *out = table.error_probability(0.0, t);
        } else {
            *out = pgrand::error_probability({n, k, p, t});
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_hamming_bound_yield(double p, double *out) {
    if (auto st = require(out, "pgrand_hamming_bound_yield: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::hamming_bound_yield(p);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_min_fidelity(uint32_t n, uint32_t t, double *out) {
    if (auto st = require(out, "pgrand_min_fidelity: null output")) {
        return st;
    }
    return guarded([&] {
        auto f = pgrand::min_fidelity(n, t);
        if (!f) {
            return unattainable("min_fidelity: purification unattainable in (0.25, 1)");
        }
        *out = *f;
        return PGRAND_OK;
    });
}

pgrand_status pgrand_min_pairs(double f, int64_t t_cap, uint32_t n_cap, uint32_t *out) {
    if (auto st = require(out, "pgrand_min_pairs: null output")) {
        return st;
    }
    return guarded([&] {
        std::optional<uint32_t> cap;
        if (t_cap >= 0) {
            cap = static_cast<uint32_t>(t_cap);
        }
        auto n = pgrand::min_pairs(f, cap, n_cap ? n_cap : 5000);
        if (!n) {
            return unattainable("min_pairs: purification unattainable at this fidelity");
        }
        *out = *n;
        return PGRAND_OK;
    });
}

pgrand_status pgrand_max_yield(uint32_t n, double f, double pe_target, uint32_t *k_out, double *yield_out) {
    return guarded([&] {
        pgrand::MaxYieldResult r = pgrand::max_yield(n, f, pe_target);
        if (k_out) {
            *k_out = r.k;
        }
        if (yield_out) {
            *yield_out = r.yield;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_werner_entropy(double f, double *out) {
    if (auto st = require(out, "pgrand_werner_entropy: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::werner_entropy(f);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_count_patterns_log2(uint32_t n, uint32_t w, double *log2_nw, double *log2_cumulative) {
    return guarded([&] {
        if (log2_nw) {
            *log2_nw = pgrand::count_patterns(n, w).log2_value;
        }
        if (log2_cumulative) {
            *log2_cumulative = pgrand::count_patterns_up_to(n, w).log2_value;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_count_patterns_exact(uint32_t n, uint32_t w, int cumulative, char *decimal_out, size_t cap) {
    return guarded([&] {
        if (n > 256) {
            throw std::invalid_argument("pgrand_count_patterns_exact: exact counts require n <= 256");
        }
        pgrand::PatternCount count =
            cumulative ? pgrand::count_patterns_up_to(n, w) : pgrand::count_patterns(n, w);
        return write_string(count.exact->to_decimal(), decimal_out, cap, "pgrand_count_patterns_exact: buffer too small");
    });
}

pgrand_status pgrand_binomial_pmf(uint32_t n, double p, uint32_t w, double *out) {
    if (auto st = require(out, "pgrand_binomial_pmf: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::binomial_pmf(n, p, w);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_hashing_fidelity_bound(
    uint32_t n, uint32_t k, double f, double delta, int printed_final_term, double *out) {
    if (auto st = require(out, "pgrand_hashing_fidelity_bound: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::hashing_fidelity_bound({n, k, f, delta, printed_final_term != 0});
        return PGRAND_OK;
    });
}

pgrand_status pgrand_delta_reference(uint32_t n, double f, double *out) {
    if (auto st = require(out, "pgrand_delta_reference: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::delta_reference(n, f);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_delta_prime(uint32_t n, uint32_t t, double f, double *out) {
    if (auto st = require(out, "pgrand_delta_prime: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::delta_prime(n, t, f);
        return PGRAND_OK;
    });
}

pgrand_status
pgrand_delta_optimal(uint32_t n, uint32_t k, double f, int printed_final_term, double *delta_out, double *bound_out) {
    return guarded([&] {
        auto opt = pgrand::delta_optimal(n, k, f, printed_final_term != 0);
        if (!opt) {
            return unattainable("delta_optimal: empty feasible interval");
        }
        if (delta_out) {
            *delta_out = opt->delta;
        }
        if (bound_out) {
            *bound_out = opt->bound;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_hashing_min_pairs(
    double f, uint32_t k, int strategy, int printed_final_term, uint32_t n_cap, uint32_t *out) {
    if (auto st = require(out, "pgrand_hashing_min_pairs: null output")) {
        return st;
    }
    return guarded([&] {
        auto n = pgrand::hashing_min_pairs(
            f, k, strategy ? pgrand::DeltaStrategy::reference : pgrand::DeltaStrategy::optimal,
            printed_final_term != 0, n_cap ? n_cap : 200000);
        if (!n) {
            return unattainable("hashing_min_pairs: purification unattainable at this fidelity");
        }
        *out = *n;
        return PGRAND_OK;
    });
}

pgrand_status pgrand_typical_set_bounds(
    uint32_t n, double f, double delta, double *log2_p_low, double *log2_p_high, double *log2_max_count) {
    return guarded([&] {
        pgrand::TypicalSetBounds b = pgrand::typical_set_bounds(n, f, delta);
        if (log2_p_low) {
            *log2_p_low = b.log2_p_low;
        }
        if (log2_p_high) {
            *log2_p_high = b.log2_p_high;
        }
        if (log2_max_count) {
            *log2_max_count = b.log2_max_count;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_typical_set_profile(
    uint32_t n, double f, double delta, double *log2_prob, double *log2_count, double *mass, int *included,
    double *mass_inside, double *mass_outside) {
    return guarded([&] {
        pgrand::TypicalSetProfile profile = pgrand::typical_set_profile(n, f, delta);
        for (const auto &row : profile.rows) {
            if (log2_prob) {
                log2_prob[row.w] = row.log2_pattern_prob;
            }
            if (log2_count) {
                log2_count[row.w] = row.log2_num_patterns;
            }
            if (mass) {
                mass[row.w] = row.weight_mass;
            }
            if (included) {
                included[row.w] = row.included ? 1 : 0;
            }
        }
        if (mass_inside) {
            *mass_inside = profile.mass_inside;
        }
        if (mass_outside) {
            *mass_outside = profile.mass_outside;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_oxford_round(double a, double b, double c, double d, double state_out[4], double *p_suc) {
    return guarded([&] {
        pgrand::OxfordRoundResult r = pgrand::oxford_round(pgrand::BellDiagonalState(a, b, c, d));
        if (state_out) {
            state_out[0] = r.state.a;
            state_out[1] = r.state.b;
            state_out[2] = r.state.c;
            state_out[3] = r.state.d;
        }
        if (p_suc) {
            *p_suc = r.p_suc;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_oxford_protocol(double f_initial, uint32_t rounds, pgrand_protocol_outcome *out, int *converging) {
    return guarded([&] {
        pgrand::OxfordProtocolResult r = pgrand::oxford_protocol(f_initial, rounds);
        if (out) {
            out->p_suc = r.outcome.p_suc;
            out->f_in = r.outcome.f_in;
            out->f_out = r.outcome.f_out;
            out->n_in = r.outcome.n_in;
            out->k_out = r.outcome.k_out;
        }
        if (converging) {
            *converging = r.converging ? 1 : 0;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_effective_yield(const pgrand_protocol_outcome *outcome, double *out) {
    if (auto st = require(outcome && out, "pgrand_effective_yield: null argument")) {
        return st;
    }
    return guarded([&] {
        pgrand::ProtocolOutcome o{outcome->p_suc, outcome->f_in, outcome->f_out, outcome->n_in, outcome->k_out};
        *out = pgrand::effective_yield(o);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_mb_input_fidelity(double p, double q, double *out) {
    if (auto st = require(out, "pgrand_mb_input_fidelity: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::mb_input_fidelity(p, q);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_mb_output_fidelity(double p_e, double q, double *out) {
    if (auto st = require(out, "pgrand_mb_output_fidelity: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::mb_output_fidelity(p_e, q);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_mb_threshold_q(double f_floor, double *out) {
    if (auto st = require(out, "pgrand_mb_threshold_q: null output")) {
        return st;
    }
    return guarded([&] {
        *out = pgrand::mb_threshold_q(f_floor);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_mb_purification_range(
    uint32_t n, double q, int64_t t_cap, uint32_t k, double *f_min_eff, double *f_max_eff, double *p_low,
    double *p_high) {
    return guarded([&] {
        std::optional<uint32_t> cap;
        if (t_cap >= 0) {
            cap = static_cast<uint32_t>(t_cap);
        }
        auto range = pgrand::mb_purification_range(n, q, cap, k ? k : 1);
        if (!range) {
            return unattainable("mb_purification_range: no purification window at this q");
        }
        if (f_min_eff) {
            *f_min_eff = range->f_min_eff;
        }
        if (f_max_eff) {
            *f_max_eff = range->f_max_eff;
        }
        if (p_low) {
            *p_low = range->p_low;
        }
        if (p_high) {
            *p_high = range->p_high;
        }
        return PGRAND_OK;
    });
}

pgrand_status pgrand_mb_threshold_search(uint32_t n, int64_t t_cap, uint32_t k, double *out) {
    if (auto st = require(out, "pgrand_mb_threshold_search: null output")) {
        return st;
    }
    return guarded([&] {
        std::optional<uint32_t> cap;
        if (t_cap >= 0) {
            cap = static_cast<uint32_t>(t_cap);
        }
        *out = pgrand::mb_threshold_search(n, cap, k ? k : 1);
        return PGRAND_OK;
    });
}

pgrand_status pgrand_protocol_table_create(
    const char *name, const double *f_in, const double *p_suc, const double *f_out, const double *yield, size_t count,
    pgrand_protocol_table **out) {
    if (auto st = require(name && f_in && p_suc && f_out && yield && out, "pgrand_protocol_table_create: null argument")) {
        return st;
    }
    return guarded([&] {
        std::vector<pgrand::ExternalProtocol::Entry> entries(count);
        for (size_t i = 0; i < count; i++) {
            entries[i] = {f_in[i], p_suc[i], f_out[i], yield[i]};
        }
        *out = new pgrand_protocol_table{pgrand::ExternalProtocol(name, std::move(entries))};
        return PGRAND_OK;
    });
}

pgrand_status
pgrand_protocol_table_eval(const pgrand_protocol_table *table, double f_in, pgrand_protocol_outcome *out) {
    if (auto st = require(table && out, "pgrand_protocol_table_eval: null argument")) {
        return st;
    }
    return guarded([&] {
        pgrand::ProtocolOutcome o = table->protocol.evaluate(f_in);
        out->p_suc = o.p_suc;
        out->f_in = o.f_in;
        out->f_out = o.f_out;
        out->n_in = o.n_in;
        out->k_out = o.k_out;
        return PGRAND_OK;
    });
}

void pgrand_protocol_table_free(pgrand_protocol_table *table) {
    delete table;
}

}  // extern "C"
