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

// Command-line runner for the pgrand shared library. Every computation goes
// through the C API; this layer only orchestrates sweeps and writes CSV
// artifacts with their run manifests.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "pgrand/pgrand.h"

namespace {

using json = nlohmann::ordered_json;

int status_exit_code(pgrand_status st) {
    switch (st) {
        case PGRAND_OK:
            return 0;
        case PGRAND_ERR_INVALID_ARGUMENT:
        case PGRAND_ERR_DIMENSION_MISMATCH:
            return 2;
        case PGRAND_ERR_RESOURCE_LIMIT:
            return 3;
        case PGRAND_ERR_IO:
            return 4;
        default:
            return 5;
    }
}

// Aborts the run on hard errors; PGRAND_ERR_UNATTAINABLE is never fatal and
// must be handled by the caller.
void check(pgrand_status st, const std::string &context) {
    if (st == PGRAND_OK) {
        return;
    }
    std::cerr << "error: " << context << ": " << pgrand_last_error() << "\n";
    std::exit(status_exit_code(st));
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

uint64_t fnv1a64(const std::string &text) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string resolve_out(const std::string &out) {
    std::filesystem::path p(out);
    if (p.is_absolute()) {
        return out;
    }
    const char *dir = std::getenv("PGRAND_OUT_DIR");
    if (dir && *dir) {
        return (std::filesystem::path(dir) / p).string();
    }
    return out;
}

// Ordered key=value parameter record shared by the CSV header, the config
// hash, and the manifest.
struct RunParams {
    std::vector<std::pair<std::string, std::string>> items;

    void set(const std::string &key, const std::string &value) {
        items.emplace_back(key, value);
    }
    void set(const std::string &key, double value) {
        set(key, fmt(value));
    }
    void set(const std::string &key, uint64_t value) {
        set(key, std::to_string(value));
    }
    void set(const std::string &key, int value) {
        set(key, std::to_string(value));
    }

    std::string canonical() const {
        std::string s;
        for (const auto &[k, v] : items) {
            s += k;
            s += '=';
            s += v;
            s += '\n';
        }
        return s;
    }
    std::string hash_hex() const {
        char buf[20];
        std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
        return buf;
    }
};

class CsvWriter {
   public:
    CsvWriter(const std::string &path, const std::string &command, const RunParams &params,
              const std::vector<std::string> &columns)
        : path_(path), out_(path) {
        if (!out_) {
            std::cerr << "error: cannot open output file " << path << "\n";
            std::exit(4);
        }
        out_ << "# pgrand " << pgrand_version() << "\n";
        out_ << "# command=" << command << "\n";
        out_ << "# config_hash=" << params.hash_hex() << "\n";
        for (const auto &[k, v] : params.items) {
            out_ << "# " << k << "=" << v << "\n";
        }
        for (size_t i = 0; i < columns.size(); i++) {
            out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        }
    }

    void row(const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); i++) {
            out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
        }
    }

    void comment(const std::string &text) {
        out_ << "# " << text << "\n";
    }

    const std::string &path() const { return path_; }

   private:
    std::string path_;
    std::ofstream out_;
};

void write_manifest(const std::string &out_path, const std::string &command, const RunParams &params) {
    json manifest;
    manifest["tool"] = "pgrand";
    manifest["version"] = pgrand_version();
    manifest["command"] = command;
    manifest["config_hash"] = params.hash_hex();
    json p = json::object();
    for (const auto &[k, v] : params.items) {
        p[k] = v;
    }
    manifest["params"] = p;
    std::ofstream out(out_path + ".manifest.json");
    if (!out) {
        std::cerr << "error: cannot write manifest beside " << out_path << "\n";
        std::exit(4);
    }
    out << manifest.dump(2) << "\n";
}

std::string join(const std::vector<uint32_t> &v) {
    std::string s;
    for (size_t i = 0; i < v.size(); i++) {
        s += std::to_string(v[i]);
        if (i + 1 < v.size()) {
            s += ",";
        }
    }
    return s;
}

std::string join(const std::vector<double> &v) {
    std::string s;
    for (size_t i = 0; i < v.size(); i++) {
        s += fmt(v[i]);
        if (i + 1 < v.size()) {
            s += ",";
        }
    }
    return s;
}

// ---- build-lut ----

struct BuildLutArgs {
    uint32_t n = 32, k = 16, t = 3;
    double p = 0.01;
    uint32_t gates = 0;
    uint64_t seed = 1;
    uint32_t workers = 1;
    uint64_t mem_budget_mb = 2048;
    bool resume = false;
    std::string out = "table.lut";
};

int run_build_lut(const BuildLutArgs &args) {
    std::string out = resolve_out(args.out);
    uint32_t gates = args.gates;
    if (gates == 0) {
        check(pgrand_default_gate_count(args.n, &gates), "default gate count");
    }
    RunParams params;
    params.set("n", uint64_t{args.n});
    params.set("k", uint64_t{args.k});
    params.set("t", uint64_t{args.t});
    params.set("p", args.p);
    params.set("gates", uint64_t{gates});
    params.set("seed", args.seed);
    params.set("workers", uint64_t{args.workers});
    params.set("mem_budget_mb", args.mem_budget_mb);

    pgrand_circuit *circuit = nullptr;
    check(pgrand_circuit_sample(args.n, gates, args.seed, &circuit), "sampling encoder");
    pgrand_lut *lut = nullptr;
    std::string ckpt = out + ".ckpt";
    check(
        pgrand_lut_build(
            circuit, args.k, args.t, args.p, args.mem_budget_mb << 20, args.workers,
            args.resume ? ckpt.c_str() : nullptr, &lut),
        "building lookup table");
    check(pgrand_lut_save(lut, out.c_str()), "saving lookup table");
    check(pgrand_circuit_save(circuit, (out + ".circuit.txt").c_str()), "saving circuit");
    write_manifest(out, "build-lut", params);

    uint64_t entries = 0;
    pgrand_lut_entry_count(lut, &entries);
    std::cout << "wrote " << out << " (" << entries << " entries) and " << out << ".circuit.txt\n";
    for (uint32_t w = 0; w <= args.t; w++) {
        uint64_t seen = 0, stored = 0;
        pgrand_lut_stats(lut, w, &seen, &stored);
        double frac = 0;
        pgrand_lut_correctable_fraction(lut, w, &frac);
        std::cout << "  weight " << w << ": seen " << seen << ", stored " << stored << ", fraction " << fmt(frac)
                  << "\n";
    }
    pgrand_lut_free(lut);
    pgrand_circuit_free(circuit);
    return 0;
}

// ---- simulate ----

struct SimulateArgs {
    uint32_t n = 32;
    std::vector<uint32_t> k = {16};
    uint32_t t = 4;
    std::vector<double> p = {0.01};
    uint32_t gates = 0;
    uint32_t trials = 1000;  // shots per encoder
    uint32_t encoders = 20;
    uint64_t seed = 1;
    uint32_t workers = 1;
    uint64_t mem_budget_mb = 2048;
    bool logical = false;
    bool explicit_mask = false;
    std::string out = "simulate.csv";
};

int run_simulate(const SimulateArgs &args) {
    std::string out = resolve_out(args.out);
    RunParams params;
    params.set("n", uint64_t{args.n});
    params.set("k", join(args.k));
    params.set("t", uint64_t{args.t});
    params.set("p", join(args.p));
    params.set("gates", uint64_t{args.gates});
    params.set("trials", uint64_t{args.trials});
    params.set("encoders", uint64_t{args.encoders});
    params.set("seed", args.seed);
    params.set("workers", uint64_t{args.workers});
    params.set("mem_budget_mb", args.mem_budget_mb);
    params.set("criterion", args.logical ? "logical-equivalence" : "exact-identification");
    params.set("explicit_mask", args.explicit_mask ? 1 : 0);

    CsvWriter csv(out, "simulate", params,
                  {"n", "k", "t", "p", "num_gates", "trials", "pe_hat", "stderr", "fidelity_lb", "yield"});
    for (double p : args.p) {
        for (uint32_t k : args.k) {
            pgrand_sim_config config{};
            config.n = args.n;
            config.k = k;
            config.t = args.t;
            config.p = p;
            config.num_gates = args.gates;
            config.num_encoders = args.encoders;
            config.shots_per_encoder = args.trials;
            config.seed = args.seed;
            config.logical_equivalence = args.logical ? 1 : 0;
            config.explicit_measurement_mask = args.explicit_mask ? 1 : 0;
            config.workers = args.workers;
            config.memory_budget_bytes = args.mem_budget_mb << 20;
            pgrand_sim_result result{};
            check(pgrand_simulate(&config, &result), "simulate");
            csv.row({std::to_string(args.n), std::to_string(k), std::to_string(args.t), fmt(p),
                     std::to_string(result.num_gates), std::to_string(result.trials), fmt(result.pe_hat),
                     fmt(result.stderr_), fmt(result.fidelity_lower_bound), fmt(result.yield)});
        }
    }
    write_manifest(out, "simulate", params);
    std::cout << "wrote " << out << "\n";
    return 0;
}

// ---- analytic ----

struct AnalyticArgs {
    int fig = 2;
    uint32_t n = 32;
    std::vector<uint32_t> n_list;
    std::vector<uint32_t> t_list;
    std::vector<double> p_list;
    std::vector<double> f_list;
    std::vector<double> pe_targets;
    std::vector<double> delta_list;
    std::string out;
};

int run_analytic(AnalyticArgs args) {
    if (args.out.empty()) {
        args.out = "fig" + std::to_string(args.fig) + ".csv";
    }
    std::string out = resolve_out(args.out);
    RunParams params;
    params.set("fig", args.fig);

    switch (args.fig) {
        case 2: {
            // Error probability vs yield at fixed n, p, per weight cap.
            if (args.t_list.empty()) {
                args.t_list = {0, 1, 2, 3, 4, 5};
            }
            if (args.p_list.empty()) {
                args.p_list = {0.01};
            }
            params.set("n", uint64_t{args.n});
            params.set("t", join(args.t_list));
            params.set("p", join(args.p_list));
            CsvWriter csv(out, "analytic", params, {"n", "p", "t", "k", "yield", "pe"});
            for (double p : args.p_list) {
                for (uint32_t t : args.t_list) {
                    for (uint32_t k = 1; k < args.n; k++) {
                        double pe = 0;
                        check(pgrand_error_probability(args.n, k, p, t, &pe), "error probability");
                        csv.row({std::to_string(args.n), fmt(p), std::to_string(t), std::to_string(k),
                                 fmt(static_cast<double>(k) / args.n), fmt(pe)});
                    }
                }
            }
            break;
        }
        case 3: {
            // Maximum yield meeting a target error probability, vs n.
            if (args.f_list.empty()) {
                args.f_list = {0.90, 0.95, 0.975, 0.99};
            }
            if (args.pe_targets.empty()) {
                args.pe_targets = {0.01, 0.001, 0.0001};
            }
            if (args.n_list.empty()) {
                for (uint32_t n = 8; n <= 1024; n = n < 64 ? n + 8 : n + n / 4) {
                    args.n_list.push_back(n);
                }
            }
            params.set("F", join(args.f_list));
            params.set("pe_target", join(args.pe_targets));
            params.set("n", join(args.n_list));
            CsvWriter csv(out, "analytic", params, {"F", "pe_target", "n", "max_k", "max_yield", "hamming_bound"});
            for (double f : args.f_list) {
                double bound = 0;
                check(pgrand_hamming_bound_yield(1.0 - f, &bound), "hamming bound");
                for (double target : args.pe_targets) {
                    for (uint32_t n : args.n_list) {
                        uint32_t k = 0;
                        double yield = 0;
                        check(pgrand_max_yield(n, f, target, &k, &yield), "max yield");
                        csv.row({fmt(f), fmt(target), std::to_string(n), std::to_string(k), fmt(yield), fmt(bound)});
                    }
                }
            }
            break;
        }
        case 4: {
            // Minimum initial fidelity vs n per weight cap.
            if (args.t_list.empty()) {
                args.t_list = {3, 5, 7, 9, 12};
            }
            if (args.n_list.empty()) {
                for (uint32_t n = 4; n <= 150; n += 2) {
                    args.n_list.push_back(n);
                }
            }
            params.set("t", join(args.t_list));
            params.set("n", join(args.n_list));
            CsvWriter csv(out, "analytic", params, {"t", "n", "attainable", "F_min"});
            for (uint32_t t : args.t_list) {
                for (uint32_t n : args.n_list) {
                    if (t > n || n < 2) {
                        continue;
                    }
                    double f = 0;
                    pgrand_status st = pgrand_min_fidelity(n, t, &f);
                    if (st == PGRAND_ERR_UNATTAINABLE) {
                        csv.row({std::to_string(t), std::to_string(n), "0", ""});
                        continue;
                    }
                    check(st, "min fidelity");
                    csv.row({std::to_string(t), std::to_string(n), "1", fmt(f)});
                }
            }
            break;
        }
        case 6: {
            // log10 of the number of patterns with weight <= t.
            if (args.n_list.empty()) {
                for (uint32_t n = 4; n <= 512; n += 4) {
                    args.n_list.push_back(n);
                }
            }
            if (args.t_list.empty()) {
                for (uint32_t t = 1; t <= 32; t++) {
                    args.t_list.push_back(t);
                }
            }
            params.set("n", join(args.n_list));
            params.set("t", join(args.t_list));
            CsvWriter csv(out, "analytic", params, {"n", "t", "log10_patterns"});
            const double LOG10_2 = std::log10(2.0);
            for (uint32_t n : args.n_list) {
                for (uint32_t t : args.t_list) {
                    if (t > n) {
                        continue;
                    }
                    double l2 = 0;
                    check(pgrand_count_patterns_log2(n, t, nullptr, &l2), "pattern count");
                    csv.row({std::to_string(n), std::to_string(t), fmt(l2 * LOG10_2)});
                }
            }
            break;
        }
        case 12: {
            // Error probability vs yield grids across n and p.
            if (args.n_list.empty()) {
                args.n_list = {32, 64, 128, 256};
            }
            if (args.p_list.empty()) {
                args.p_list = {0.10, 0.05, 0.025, 0.01};
            }
            if (args.t_list.empty()) {
                args.t_list = {2, 3, 4, 5, 6};
            }
            params.set("n", join(args.n_list));
            params.set("p", join(args.p_list));
            params.set("t", join(args.t_list));
            CsvWriter csv(out, "analytic", params, {"n", "p", "t", "k", "yield", "pe"});
            for (uint32_t n : args.n_list) {
                for (double p : args.p_list) {
                    for (uint32_t t : args.t_list) {
                        for (uint32_t k = 1; k < n; k++) {
                            double pe = 0;
                            check(pgrand_error_probability(n, k, p, t, &pe), "error probability");
                            csv.row({std::to_string(n), fmt(p), std::to_string(t), std::to_string(k),
                                     fmt(static_cast<double>(k) / n), fmt(pe)});
                        }
                    }
                }
            }
            break;
        }
        case 13: {
            // Typical-set membership and mass per weight class.
            if (args.p_list.empty()) {
                args.p_list = {0.10};
            }
            if (args.delta_list.empty()) {
                args.delta_list = {0.05, 0.10, 0.20};
            }
            double f = 1.0 - args.p_list[0];
            params.set("n", uint64_t{args.n});
            params.set("F", f);
            params.set("delta", join(args.delta_list));
            CsvWriter csv(out, "analytic", params,
                          {"delta", "w", "log2_pattern_prob", "log2_num_patterns", "weight_mass", "in_typical_set",
                           "mass_inside", "mass_outside"});
            std::vector<double> lp(args.n + 1), lc(args.n + 1), mass(args.n + 1);
            std::vector<int> inc(args.n + 1);
            for (double delta : args.delta_list) {
                double inside = 0, outside = 0;
                check(
                    pgrand_typical_set_profile(
                        args.n, f, delta, lp.data(), lc.data(), mass.data(), inc.data(), &inside, &outside),
                    "typical set profile");
                for (uint32_t w = 0; w <= args.n; w++) {
                    csv.row({fmt(delta), std::to_string(w), fmt(lp[w]), fmt(lc[w]), fmt(mass[w]),
                             std::to_string(inc[w]), fmt(inside), fmt(outside)});
                }
            }
            break;
        }
        default:
            std::cerr << "error: analytic --fig must be one of 2, 3, 4, 6, 12, 13\n";
            return 2;
    }
    write_manifest(out, "analytic", params);
    std::cout << "wrote " << out << "\n";
    return 0;
}

// ---- hashing ----

struct HashingArgs {
    int fig = 8;
    std::vector<uint32_t> n_list;
    std::vector<double> f_list;
    bool printed_final_term = false;
    std::string out;
};

int run_hashing(HashingArgs args) {
    if (args.out.empty()) {
        args.out = "fig" + std::to_string(args.fig) + ".csv";
    }
    std::string out = resolve_out(args.out);
    RunParams params;
    params.set("fig", args.fig);
    params.set("printed_final_term", args.printed_final_term ? 1 : 0);

    switch (args.fig) {
        case 5: {
            // Output fidelity vs yield: unconstrained decoder vs the hashing
            // bound under both delta strategies.
            if (args.n_list.empty()) {
                args.n_list = {128, 256};
            }
            if (args.f_list.empty()) {
                args.f_list = {0.95};
            }
            params.set("n", join(args.n_list));
            params.set("F", join(args.f_list));
            CsvWriter csv(out, "hashing", params,
                          {"n", "F", "k", "yield", "fa_pgrand", "fa_hashing_delta_ref", "fa_hashing_delta_opt"});
            for (uint32_t n : args.n_list) {
                for (double f : args.f_list) {
                    for (uint32_t k = 1; k < n; k++) {
                        double pe = 0;
                        check(pgrand_error_probability(n, k, 1.0 - f, n, &pe), "error probability");
                        double ref_delta = 0, fa_ref = 0, fa_opt = 0, d_opt = 0;
                        check(pgrand_delta_reference(n, f, &ref_delta), "delta reference");
                        if (ref_delta > 0) {
                            check(
                                pgrand_hashing_fidelity_bound(n, k, f, ref_delta, args.printed_final_term, &fa_ref),
                                "hashing bound");
                        }
                        pgrand_status st =
                            pgrand_delta_optimal(n, k, f, args.printed_final_term, &d_opt, &fa_opt);
                        if (st != PGRAND_OK && st != PGRAND_ERR_UNATTAINABLE) {
                            check(st, "delta optimal");
                        }
                        csv.row({std::to_string(n), fmt(f), std::to_string(k), fmt(static_cast<double>(k) / n),
                                 fmt(1.0 - pe), ref_delta > 0 ? fmt(fa_ref) : "", st == PGRAND_OK ? fmt(fa_opt) : ""});
                    }
                }
            }
            break;
        }
        case 8: {
            // Minimum ensemble size for purification vs initial fidelity.
            if (args.f_list.empty()) {
                for (double f = 0.83; f < 0.9951; f += 0.005) {
                    args.f_list.push_back(f);
                }
            }
            params.set("F", join(args.f_list));
            CsvWriter csv(out, "hashing", params, {"F", "n_min_pgrand", "n_min_hashing_opt", "n_min_hashing_ref"});
            for (double f : args.f_list) {
                auto cell = [&](pgrand_status st, uint32_t n) {
                    if (st == PGRAND_ERR_UNATTAINABLE) {
                        return std::string("");
                    }
                    check(st, "minimum pairs");
                    return std::to_string(n);
                };
                uint32_t n1 = 0, n2 = 0, n3 = 0;
                pgrand_status s1 = pgrand_min_pairs(f, -1, 0, &n1);
                pgrand_status s2 = pgrand_hashing_min_pairs(f, 1, 0, args.printed_final_term, 0, &n2);
                pgrand_status s3 = pgrand_hashing_min_pairs(f, 1, 1, args.printed_final_term, 0, &n3);
                csv.row({fmt(f), cell(s1, n1), cell(s2, n2), cell(s3, n3)});
            }
            break;
        }
        default:
            std::cerr << "error: hashing --fig must be 5 or 8\n";
            return 2;
    }
    write_manifest(out, "hashing", params);
    std::cout << "wrote " << out << "\n";
    return 0;
}

// ---- compare ----

struct CompareArgs {
    std::string mode = "recurrence";  // recurrence | effective-yield | mb-contour
    uint32_t n = 64;
    uint32_t rounds = 2;
    std::vector<double> f_list;
    std::vector<double> q_list;
    std::vector<std::string> protocol_tables;  // name=path
    std::string out;
};

struct LoadedProtocol {
    std::string name;
    pgrand_protocol_table *table;
};

std::vector<LoadedProtocol> load_protocol_tables(const std::vector<std::string> &specs) {
    std::vector<LoadedProtocol> out;
    for (const std::string &spec : specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --protocol-table expects name=path.csv\n";
            std::exit(2);
        }
        std::string name = spec.substr(0, eq);
        std::string path = spec.substr(eq + 1);
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot open protocol table " << path << "\n";
            std::exit(4);
        }
        std::vector<double> f, p, fo, y;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) {
                continue;  // comments and a header row
            }
            double a, b, c, d;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c, &d) != 4) {
                std::cerr << "error: malformed row in " << path << ": " << line << "\n";
                std::exit(2);
            }
            f.push_back(a);
            p.push_back(b);
            fo.push_back(c);
            y.push_back(d);
        }
        pgrand_protocol_table *table = nullptr;
        check(
            pgrand_protocol_table_create(name.c_str(), f.data(), p.data(), fo.data(), y.data(), f.size(), &table),
            "registering protocol table " + name);
        out.push_back({name, table});
    }
    return out;
}

// Best effective yield of the syndrome-decoding protocol over k at fixed n.
double pgrand_best_effective_yield(uint32_t n, double f_in, double q) {
    double best = 0.0;
    for (uint32_t k = 1; k < n; k++) {
        double pe = 0;
        double p = 1.0 - f_in;
        double f_i_eff = f_in, f_a_eff;
        if (q > 0) {
            // Resource noise enters once per coupling side before decoding.
            double dressed = p;
            for (int side = 0; side < 2; side++) {
                dressed = dressed + q - (4.0 / 3.0) * dressed * q;
            }
            if (dressed >= 0.75) {
                continue;
            }
            check(pgrand_error_probability(n, k, dressed, n, &pe), "error probability");
            check(pgrand_mb_input_fidelity(p, q, &f_i_eff), "input transfer");
            check(pgrand_mb_output_fidelity(pe, q, &f_a_eff), "output transfer");
        } else {
            if (p >= 0.75) {
                continue;
            }
            check(pgrand_error_probability(n, k, p, n, &pe), "error probability");
            f_a_eff = 1.0 - pe;
        }
        pgrand_protocol_outcome outcome{1.0, f_i_eff, f_a_eff, static_cast<double>(n), static_cast<double>(k)};
        double ye = 0;
        check(pgrand_effective_yield(&outcome, &ye), "effective yield");
        best = std::max(best, ye);
    }
    return best;
}

int run_compare(CompareArgs args) {
    if (args.out.empty()) {
        args.out = "compare_" + args.mode + ".csv";
    }
    std::string out = resolve_out(args.out);
    RunParams params;
    params.set("mode", args.mode);
    params.set("n", uint64_t{args.n});
    params.set("rounds", uint64_t{args.rounds});
    auto protocols = load_protocol_tables(args.protocol_tables);
    std::string names = "oxford";
    for (const auto &p : protocols) {
        names += "," + p.name;
    }
    params.set("protocols", names);

    if (args.mode == "recurrence") {
        // Success probability and output fidelity per round count.
        if (args.f_list.empty()) {
            for (double f = 0.55; f < 0.9951; f += 0.005) {
                args.f_list.push_back(f);
            }
        }
        params.set("F", join(args.f_list));
        CsvWriter csv(out, "compare", params, {"protocol", "rounds", "F_in", "P_suc", "F_out"});
        for (uint32_t r = 1; r <= args.rounds; r++) {
            for (double f : args.f_list) {
                pgrand_protocol_outcome o{};
                int conv = 0;
                check(pgrand_oxford_protocol(f, r, &o, &conv), "oxford protocol");
                csv.row({"oxford", std::to_string(r), fmt(f), fmt(o.p_suc), fmt(o.f_out)});
            }
        }
        for (const auto &p : protocols) {
            for (double f : args.f_list) {
                pgrand_protocol_outcome o{};
                check(pgrand_protocol_table_eval(p.table, f, &o), "protocol eval");
                csv.row({p.name, "1", fmt(f), fmt(o.p_suc), fmt(o.f_out)});
            }
        }
    } else if (args.mode == "effective-yield") {
        if (args.f_list.empty()) {
            for (double f = 0.55; f < 0.9951; f += 0.005) {
                args.f_list.push_back(f);
            }
        }
        params.set("F", join(args.f_list));
        CsvWriter csv(out, "compare", params, {"protocol", "F_in", "effective_yield"});
        for (double f : args.f_list) {
            for (uint32_t r = 1; r <= args.rounds; r++) {
                pgrand_protocol_outcome o{};
                int conv = 0;
                check(pgrand_oxford_protocol(f, r, &o, &conv), "oxford protocol");
                double ye = 0;
                check(pgrand_effective_yield(&o, &ye), "effective yield");
                csv.row({"oxford_r" + std::to_string(r), fmt(f), fmt(ye)});
            }
            if (f > 0.8107) {
                csv.row({"pgrand_n" + std::to_string(args.n), fmt(f),
                         fmt(pgrand_best_effective_yield(args.n, f, 0.0))});
            }
            for (const auto &p : protocols) {
                pgrand_protocol_outcome o{};
                check(pgrand_protocol_table_eval(p.table, f, &o), "protocol eval");
                double ye = 0;
                check(pgrand_effective_yield(&o, &ye), "effective yield");
                csv.row({p.name, fmt(f), fmt(ye)});
            }
        }
    } else if (args.mode == "mb-contour") {
        // Effective yield over the (F_i, q) plane with noisy resource states.
        if (args.f_list.empty()) {
            for (double f = 0.60; f < 0.9951; f += 0.01) {
                args.f_list.push_back(f);
            }
        }
        if (args.q_list.empty()) {
            for (double q = 0.0; q < 0.0501; q += 0.002) {
                args.q_list.push_back(q);
            }
        }
        params.set("F", join(args.f_list));
        params.set("q", join(args.q_list));
        CsvWriter csv(out, "compare", params, {"protocol", "F_in", "q", "effective_yield"});
        for (double q : args.q_list) {
            for (double f : args.f_list) {
                for (uint32_t r = 1; r <= args.rounds; r++) {
                    // Transfer resource noise onto the protocol's input and
                    // output pairs, then run the noiseless recurrence map.
                    double f_in_eff = 0;
                    check(pgrand_mb_input_fidelity(1.0 - f, q, &f_in_eff), "input transfer");
                    std::string name = "oxford_r" + std::to_string(r);
                    if (f_in_eff <= 0.25) {
                        csv.row({name, fmt(f), fmt(q), "0"});
                        continue;
                    }
                    pgrand_protocol_outcome o{};
                    int conv = 0;
                    check(pgrand_oxford_protocol(f_in_eff, r, &o, &conv), "oxford protocol");
                    double f_out_eff = 0;
                    check(pgrand_mb_output_fidelity(1.0 - o.f_out, q, &f_out_eff), "output transfer");
                    o.f_in = f_in_eff;
                    o.f_out = f_out_eff;
                    double ye = 0;
                    check(pgrand_effective_yield(&o, &ye), "effective yield");
                    csv.row({name, fmt(f), fmt(q), fmt(ye)});
                }
                csv.row({"pgrand_n" + std::to_string(args.n), fmt(f), fmt(q),
                         fmt(pgrand_best_effective_yield(args.n, f, q))});
            }
        }
    } else {
        std::cerr << "error: compare --mode must be recurrence, effective-yield, or mb-contour\n";
        return 2;
    }
    for (auto &p : protocols) {
        pgrand_protocol_table_free(p.table);
    }
    write_manifest(out, "compare", params);
    std::cout << "wrote " << out << "\n";
    return 0;
}

// ---- mb-range ----

struct MbRangeArgs {
    std::vector<uint32_t> n_list = {16, 32, 64, 128, 256};
    std::vector<double> q_list;
    int64_t t_cap = -1;
    uint32_t k = 1;
    bool threshold_search = false;
    std::string out = "mb_range.csv";
};

int run_mb_range(MbRangeArgs args) {
    std::string out = resolve_out(args.out);
    RunParams params;
    params.set("n", join(args.n_list));
    params.set("k", uint64_t{args.k});
    params.set("t_cap", std::to_string(args.t_cap));
    params.set("threshold_search", args.threshold_search ? 1 : 0);

    if (args.threshold_search) {
        CsvWriter csv(out, "mb-range", params, {"n", "q_threshold"});
        for (uint32_t n : args.n_list) {
            double q = 0;
            check(pgrand_mb_threshold_search(n, args.t_cap, args.k, &q), "threshold search");
            csv.row({std::to_string(n), fmt(q)});
        }
        write_manifest(out, "mb-range", params);
        std::cout << "wrote " << out << "\n";
        return 0;
    }

    if (args.q_list.empty()) {
        for (double q = 0.0025; q < 0.0701; q += 0.0025) {
            args.q_list.push_back(q);
        }
    }
    params.set("q", join(args.q_list));
    CsvWriter csv(out, "mb-range", params, {"n", "q", "attainable", "F_min_eff", "F_max_eff", "p_low", "p_high"});
    for (uint32_t n : args.n_list) {
        for (double q : args.q_list) {
            double fmin = 0, fmax = 0, plo = 0, phi = 0;
            pgrand_status st = pgrand_mb_purification_range(n, q, args.t_cap, args.k, &fmin, &fmax, &plo, &phi);
            if (st == PGRAND_ERR_UNATTAINABLE) {
                csv.row({std::to_string(n), fmt(q), "0", "", "", "", ""});
                continue;
            }
            check(st, "purification range");
            csv.row({std::to_string(n), fmt(q), "1", fmt(fmin), fmt(fmax), fmt(plo), fmt(phi)});
        }
    }
    write_manifest(out, "mb-range", params);
    std::cout << "wrote " << out << "\n";
    return 0;
}

// ---- tables ----

struct TablesArgs {
    int which = 1;
    std::string out;
};

int run_tables(TablesArgs args) {
    if (args.out.empty()) {
        args.out = "table" + std::to_string(args.which) + ".csv";
    }
    std::string out = resolve_out(args.out);
    RunParams params;
    params.set("which", args.which);

    switch (args.which) {
        case 1: {
            const std::pair<uint32_t, uint32_t> points[] = {{6, 30}, {7, 35}, {8, 40}, {9, 45},
                                                            {10, 50}, {11, 56}, {12, 61}};
            CsvWriter csv(out, "tables", params, {"t", "n", "F_min"});
            for (auto [t, n] : points) {
                double f = 0;
                check(pgrand_min_fidelity(n, t, &f), "min fidelity");
                csv.row({std::to_string(t), std::to_string(n), fmt(f)});
            }
            break;
        }
        case 2: {
            const double fidelities[] = {0.83, 0.85, 0.90, 0.95, 0.99};
            CsvWriter csv(out, "tables", params, {"F", "n_min_pgrand", "n_min_hashing_opt", "n_min_hashing_ref"});
            for (double f : fidelities) {
                uint32_t np = 0, no = 0, nr = 0;
                check(pgrand_min_pairs(f, -1, 0, &np), "min pairs");
                check(pgrand_hashing_min_pairs(f, 1, 0, 0, 0, &no), "hashing min pairs");
                check(pgrand_hashing_min_pairs(f, 1, 1, 0, 0, &nr), "hashing min pairs");
                csv.row({fmt(f), std::to_string(np), std::to_string(no), std::to_string(nr)});
            }
            break;
        }
        case 3: {
            CsvWriter csv(out, "tables", params, {"n", "q_threshold_percent"});
            for (uint32_t n : {16u, 32u, 64u, 128u, 256u}) {
                double q = 0;
                check(pgrand_mb_threshold_search(n, -1, 1, &q), "threshold search");
                csv.row({std::to_string(n), fmt(100.0 * q)});
            }
            break;
        }
        case 4:
        case 5:
        case 6: {
            std::vector<std::string> columns = {"n", "q"};
            if (args.which == 4) {
                columns.insert(columns.end(), {"attainable", "p_low", "p_high"});
            } else {
                columns.push_back(args.which == 5 ? "F_min" : "F_max");
            }
            CsvWriter csv(out, "tables", params, columns);
            for (uint32_t n : {16u, 32u, 64u, 128u, 256u}) {
                for (int qpct = 1; qpct <= 6; qpct++) {
                    double q = qpct / 100.0;
                    double fmin = 0, fmax = 0, plo = 0, phi = 0;
                    pgrand_status st = pgrand_mb_purification_range(n, q, -1, 1, &fmin, &fmax, &plo, &phi);
                    if (st == PGRAND_ERR_UNATTAINABLE) {
                        if (args.which == 4) {
                            csv.row({std::to_string(n), fmt(q), "0", "", ""});
                        } else {
                            csv.row({std::to_string(n), fmt(q), "n/a"});
                        }
                        continue;
                    }
                    check(st, "purification range");
                    if (args.which == 4) {
                        csv.row({std::to_string(n), fmt(q), "1", fmt(plo), fmt(phi)});
                    } else {
                        csv.row({std::to_string(n), fmt(q), fmt(args.which == 5 ? fmin : fmax)});
                    }
                }
            }
            break;
        }
        default:
            std::cerr << "error: tables --which must lie in 1..6\n";
            return 2;
    }
    write_manifest(out, "tables", params);
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{
        "pgrand: noise-guessing entanglement purification toolkit.\n"
        "Builds syndrome lookup tables over random Clifford encodings, runs\n"
        "Monte Carlo protocol estimates, and evaluates the closed-form\n"
        "performance models. Outputs are deterministic CSV files with a\n"
        "config-hash comment header plus a JSON run manifest; relative output\n"
        "paths are resolved under $PGRAND_OUT_DIR when it is set."};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file with one [subcommand] section of option=value lines");

    BuildLutArgs lut;
    CLI::App *cmd_lut = app.add_subcommand("build-lut", "Build and persist a syndrome lookup table");
    cmd_lut->add_option("--n", lut.n, "Number of Bell pairs")->check(CLI::Range(2u, 100000u));
    cmd_lut->add_option("--k", lut.k, "Kept pairs (the last n-k are measured)");
    cmd_lut->add_option("--t", lut.t, "Maximum error weight to precompute");
    cmd_lut->add_option("--p", lut.p, "Depolarization probability the table targets");
    cmd_lut->add_option("--gates", lut.gates, "Encoder gate count (0: 0.14 n log2(n)^2)");
    cmd_lut->add_option("--seed", lut.seed, "Encoder seed");
    cmd_lut->add_option("--workers", lut.workers, "Worker threads");
    cmd_lut->add_option("--mem-budget", lut.mem_budget_mb, "Memory budget in MiB");
    cmd_lut->add_flag("--resume", lut.resume, "Checkpoint per weight class and resume interrupted builds");
    cmd_lut->add_option("--out", lut.out, "Output LUT path");

    SimulateArgs sim;
    CLI::App *cmd_sim = app.add_subcommand("simulate", "Monte Carlo estimate of the protocol error probability");
    cmd_sim->add_option("--n", sim.n, "Number of Bell pairs");
    cmd_sim->add_option("--k", sim.k, "Kept pairs (repeatable or comma list)")->delimiter(',');
    cmd_sim->add_option("--t", sim.t, "Maximum precomputed error weight");
    cmd_sim->add_option("--p", sim.p, "Depolarization probability (repeatable or comma list)")->delimiter(',');
    cmd_sim->add_option("--gates", sim.gates, "Encoder gate count (0: default budget)");
    cmd_sim->add_option("--trials", sim.trials, "Shots per encoder seed");
    cmd_sim->add_option("--encoders", sim.encoders, "Independent encoder seeds to average");
    cmd_sim->add_option("--seed", sim.seed, "Master seed");
    cmd_sim->add_option("--workers", sim.workers, "Worker threads");
    cmd_sim->add_option("--mem-budget", sim.mem_budget_mb, "Memory budget in MiB");
    cmd_sim->add_flag("--logical", sim.logical, "Score logical equivalence instead of exact identification");
    cmd_sim->add_flag("--explicit-mask", sim.explicit_mask, "Simulate the measurement-word XOR explicitly");
    cmd_sim->add_option("--out", sim.out, "Output CSV path");

    AnalyticArgs ana;
    CLI::App *cmd_ana = app.add_subcommand("analytic", "Closed-form sweeps backing the figures");
    cmd_ana->add_option("--fig", ana.fig, "Figure family: 2, 3, 4, 6, 12, or 13")->required();
    cmd_ana->add_option("--n", ana.n, "Pair count for single-n figures");
    cmd_ana->add_option("--n-list", ana.n_list, "Pair-count grid")->delimiter(',');
    cmd_ana->add_option("--t", ana.t_list, "Weight caps")->delimiter(',');
    cmd_ana->add_option("--p", ana.p_list, "Depolarization probabilities")->delimiter(',');
    cmd_ana->add_option("--F", ana.f_list, "Initial fidelities")->delimiter(',');
    cmd_ana->add_option("--pe-target", ana.pe_targets, "Error-probability targets")->delimiter(',');
    cmd_ana->add_option("--delta", ana.delta_list, "Typical-set slacks")->delimiter(',');
    cmd_ana->add_option("--out", ana.out, "Output CSV path");

    HashingArgs hash;
    CLI::App *cmd_hash = app.add_subcommand("hashing", "Hashing-bound comparisons");
    cmd_hash->add_option("--fig", hash.fig, "Figure family: 5 or 8")->required();
    cmd_hash->add_option("--n-list", hash.n_list, "Pair-count grid")->delimiter(',');
    cmd_hash->add_option("--F", hash.f_list, "Initial fidelities")->delimiter(',');
    cmd_hash->add_flag(
        "--printed-final-term", hash.printed_final_term,
        "Use the literal printed exponent of the bound's counting term");
    cmd_hash->add_option("--out", hash.out, "Output CSV path");

    CompareArgs cmp;
    CLI::App *cmd_cmp = app.add_subcommand("compare", "Recurrence baselines and effective-yield sweeps");
    cmd_cmp->add_option("--mode", cmp.mode, "recurrence | effective-yield | mb-contour");
    cmd_cmp->add_option("--n", cmp.n, "Pair count for the decoding protocol's curves");
    cmd_cmp->add_option("--rounds", cmp.rounds, "Maximum recurrence rounds");
    cmd_cmp->add_option("--F", cmp.f_list, "Initial fidelities")->delimiter(',');
    cmd_cmp->add_option("--q", cmp.q_list, "Resource-state noise grid (mb-contour)")->delimiter(',');
    cmd_cmp->add_option("--protocol-table", cmp.protocol_tables,
                        "External protocol outcome table, name=path.csv with F_in,P_suc,F_out,yield rows");
    cmd_cmp->add_option("--out", cmp.out, "Output CSV path");

    MbRangeArgs mbr;
    CLI::App *cmd_mbr = app.add_subcommand("mb-range", "Measurement-based purification windows and thresholds");
    cmd_mbr->add_option("--n", mbr.n_list, "Pair counts")->delimiter(',');
    cmd_mbr->add_option("--q", mbr.q_list, "Resource-state noise grid")->delimiter(',');
    cmd_mbr->add_option("--t", mbr.t_cap, "Weight cap (-1: unrestricted)");
    cmd_mbr->add_option("--k", mbr.k, "Kept pairs");
    cmd_mbr->add_flag("--threshold", mbr.threshold_search, "Search the largest workable q per n");
    cmd_mbr->add_option("--out", mbr.out, "Output CSV path");

    TablesArgs tab;
    CLI::App *cmd_tab = app.add_subcommand("tables", "Reproduce the summary tables");
    cmd_tab->add_option("--which", tab.which, "Table number, 1..6")->required();
    cmd_tab->add_option("--out", tab.out, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    if (cmd_lut->parsed()) {
        return run_build_lut(lut);
    }
    if (cmd_sim->parsed()) {
        return run_simulate(sim);
    }
    if (cmd_ana->parsed()) {
        return run_analytic(ana);
    }
    if (cmd_hash->parsed()) {
        return run_hashing(hash);
    }
    if (cmd_cmp->parsed()) {
        return run_compare(cmp);
    }
    if (cmd_mbr->parsed()) {
        return run_mb_range(mbr);
    }
    if (cmd_tab->parsed()) {
        return run_tables(tab);
    }
    return 0;
}
