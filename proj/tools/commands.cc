// Copyright 2026 The spskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <CLI11/CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "spskit/basis.h"
#include "spskit/editmap.h"
#include "spskit/io.h"
#include "spskit/metrics.h"
#include "spskit/models.h"
#include "spskit/oracle.h"
#include "spskit/parallel.h"
#include "spskit/pathfind.h"
#include "spskit/sim.h"
#include "spskit/sps.h"

namespace spskit::cli {

namespace {

using nlohmann::json;

struct ModelOpts {
    std::string model = "heis";
    int n = 0;
    double theta = kDefaultTheta;
    double tol = kDefaultBitTol;
    std::string circuit;
};

void add_model_opts(CLI::App *sub, ModelOpts &o) {
    sub->add_option("--model", o.model, "hop, heis, t6 or f4")->check(CLI::IsMember({"hop", "heis", "t6", "f4"}));
    sub->add_option("--n", o.n, "qubit count");
    sub->add_option("--theta", o.theta, "gate angle (hop, heis)");
    sub->add_option("--tol", o.tol, "bitize tolerance");
    sub->add_option("--circuit", o.circuit, "custom circuit JSON instead of --model");
}

json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

Model make_model(const ModelOpts &o, std::ostream &err) {
    Model m;
    if (!o.circuit.empty()) {
        m = model_from_json(read_json_file(o.circuit), o.tol);
    } else {
        if (o.n < 1 || o.n > kMaxQubits) {
            throw ValidationError("--n must be in [1, 64]");
        }
        m = build_model(o.model, o.n, o.theta, o.tol);
    }
    for (const auto &w : m.warnings) {
        err << "warning: " << w << "\n";
    }
    return m;
}

json model_config(const ModelOpts &o, const Model &m) {
    json c = {{"n", m.n}, {"tol", o.tol}};
    if (!o.circuit.empty()) {
        c["circuit"] = o.circuit;
        c["model"] = m.name;
    } else {
        c["model"] = o.model;
        if (o.model == "hop" || o.model == "heis") {
            c["theta"] = o.theta;
        }
    }
    return c;
}

std::vector<std::string> header_lines(const json &config) {
    return {std::string("spskit ") + version(), "config: " + config.dump()};
}

void write_header(std::ostream &out, const json &config) {
    for (const auto &h : header_lines(config)) {
        out << "# " << h << "\n";
    }
}

/// Runs f on the file at `path`, or on `fallback` when path is empty.
void with_output(const std::string &path, std::ostream &fallback, const std::function<void(std::ostream &)> &f) {
    if (path.empty()) {
        f(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw ValidationError("cannot write '" + path + "'");
    }
    f(file);
}

double parse_floor(const std::string &s, std::uint64_t shots) {
    if (s == "auto") {
        return default_floor(shots);
    }
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size() || !(v > 0)) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw ValidationError("--floor must be 'auto' or a positive number");
    }
}

std::string join_sizes(const std::vector<SubspaceSize> &sizes) {
    std::string s;
    for (const auto &x : sizes) {
        if (!s.empty()) {
            s += ",";
        }
        s += std::to_string(x.size);
    }
    return s;
}

bool any_nan(const std::vector<CurveRow> &rows) {
    for (const auto &r : rows) {
        for (double f : r.f_ps) {
            if (std::isnan(f)) {
                return true;
            }
        }
        if (std::isnan(r.f_ps_exact)) {
            return true;
        }
    }
    return false;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Symmetry-protected subspace toolkit", "spskit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("spskit ") + version());
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: SPSKIT_THREADS or all cores)");

    std::function<int()> action;
    ModelOpts mo;
    std::string out_path;

    // editmap build
    auto *editmap = app.add_subcommand("editmap", "local edit maps")->require_subcommand(1);
    auto *em_build = editmap->add_subcommand("build", "edit map of a unitary file or of every model gate");
    std::string unitary_path;
    em_build->add_option("--unitary", unitary_path, "LocalUnitary JSON file");
    add_model_opts(em_build, mo);
    em_build->add_option("--out", out_path);
    em_build->callback([&] {
        action = [&] {
            json result;
            if (!unitary_path.empty()) {
                LocalUnitary u = unitary_from_json(read_json_file(unitary_path));
                int near = near_threshold_entries(u, mo.tol);
                if (near > 0) {
                    err << "warning: " << near << " entries lie within a factor of 10 of the tolerance\n";
                }
                result = editmap_to_json(build_edit_map(u, mo.tol));
            } else {
                Model m = make_model(mo, err);
                result = json::array();
                for (const auto &e : m.maps.maps()) {
                    result.push_back(editmap_to_json(e));
                }
            }
            with_output(out_path, out, [&](std::ostream &o) { o << result.dump(2) << "\n"; });
            return 0;
        };
    });

    // sps enum | partition
    auto *sps = app.add_subcommand("sps", "symmetry-protected subspaces")->require_subcommand(1);
    auto *sps_enum = sps->add_subcommand("enum", "enumerate the subspace of one state");
    std::string init;
    std::uint64_t cap = kDefaultSubspaceCap;
    add_model_opts(sps_enum, mo);
    sps_enum->add_option("--init", init, "initial ket")->required();
    sps_enum->add_option("--cap", cap, "maximum subspace size");
    sps_enum->add_option("--out", out_path);
    sps_enum->callback([&] {
        action = [&] {
            Model m = make_model(mo, err);
            BasisState b = parse_ket(init, m.n);
            json cfg = model_config(mo, m);
            cfg["init"] = init;
            Subspace g = enumerate_sps(m.maps, b, cap);
            with_output(out_path, out, [&](std::ostream &o) { write_subspace(o, g, header_lines(cfg)); });
            return 0;
        };
    });
    auto *sps_part = sps->add_subcommand("partition", "partition the whole Hilbert space");
    bool sizes_only = false;
    add_model_opts(sps_part, mo);
    sps_part->add_flag("--sizes-only", sizes_only, "emit seed,size only");
    sps_part->add_option("--out", out_path);
    sps_part->callback([&] {
        action = [&] {
            Model m = make_model(mo, err);
            json cfg = model_config(mo, m);
            auto labels = partition_labels(m.maps);
            with_output(out_path, out, [&](std::ostream &o) {
                write_header(o, cfg);
                if (sizes_only) {
                    o << "seed,size\n";
                    for (const auto &s : sizes_from_labels(labels)) {
                        o << format_ket(s.seed, m.n) << "," << s.size << "\n";
                    }
                    return;
                }
                o << "seed,size,members\n";
                for (const auto &g : subspaces_from_labels(labels, m.n)) {
                    o << format_ket(g.min_element()) << "," << g.size() << ",";
                    bool first = true;
                    for (auto b : g.sorted_members()) {
                        o << (first ? "" : " ") << format_ket(b, m.n);
                        first = false;
                    }
                    o << "\n";
                }
            });
            return 0;
        };
    });

    // path min | failrate | depth | verdict
    auto *path = app.add_subcommand("path", "greedy minimum search")->require_subcommand(1);
    std::string state;
    int mu = 1;
    std::vector<int> mus;
    SweepOptions sweep;
    auto *p_min = path->add_subcommand("min", "descend from one state");
    add_model_opts(p_min, mo);
    p_min->add_option("--state", state, "start ket")->required();
    p_min->add_option("--mu", mu, "search radius");
    p_min->callback([&] {
        action = [&] {
            Model m = make_model(mo, err);
            BasisState b = parse_ket(state, m.n);
            json cfg = model_config(mo, m);
            cfg["state"] = state;
            cfg["mu"] = mu;
            SearchResult r = chi(m.maps, b, mu);
            write_header(out, cfg);
            out << "state,minimum,depth,nodes_expanded,mu\n";
            out << state << "," << format_ket(r.minimum) << "," << r.depth << "," << r.nodes_expanded << "," << mu
                << "\n";
            return 0;
        };
    });
    auto *p_fail = path->add_subcommand("failrate", "fraction of searches missing the true minimum");
    add_model_opts(p_fail, mo);
    p_fail->add_option("--mu", mus, "search radii")->delimiter(',')->required();
    p_fail->add_option("--sample", sweep.sample, "random states instead of all 2^n (0 = all)");
    p_fail->add_option("--seed", sweep.seed, "sampling seed");
    p_fail->add_option("--out", out_path);
    p_fail->callback([&] {
        action = [&] {
            Model m = make_model(mo, err);
            json cfg = model_config(mo, m);
            cfg["mu"] = mus;
            cfg["sample"] = sweep.sample;
            cfg["seed"] = sweep.seed;
            with_output(out_path, out, [&](std::ostream &o) {
                write_header(o, cfg);
                o << "n,mu,failures,total,rate,ci_low,ci_high\n";
                for (int u : mus) {
                    FailureStats s = failure_rate(m.maps, u, sweep);
                    auto [lo, hi] = s.confidence_interval();
                    o << s.n << "," << s.mu << "," << s.failures << "," << s.total << "," << format_double(s.rate())
                      << "," << format_double(lo) << "," << format_double(hi) << "\n";
                }
            });
            return 0;
        };
    });
    auto *p_depth = path->add_subcommand("depth", "longest greedy descent");
    add_model_opts(p_depth, mo);
    p_depth->add_option("--mu", mus, "search radii")->delimiter(',')->required();
    p_depth->add_option("--sample", sweep.sample, "random states instead of all 2^n (0 = all)");
    p_depth->add_option("--seed", sweep.seed, "sampling seed");
    p_depth->add_option("--out", out_path);
    p_depth->callback([&] {
        action = [&] {
            Model m = make_model(mo, err);
            json cfg = model_config(mo, m);
            cfg["mu"] = mus;
            cfg["sample"] = sweep.sample;
            cfg["seed"] = sweep.seed;
            with_output(out_path, out, [&](std::ostream &o) {
                write_header(o, cfg);
                o << "n,mu,max_depth,argmax,total\n";
                for (int u : mus) {
                    DepthStats s = max_depth(m.maps, u, sweep);
                    o << s.n << "," << s.mu << "," << s.max_depth << "," << format_ket(s.argmax) << "," << s.total
                      << "\n";
                }
            });
            return 0;
        };
    });
    auto *p_verdict = path->add_subcommand("verdict", "accept or reject a measured state");
    add_model_opts(p_verdict, mo);
    p_verdict->add_option("--init", init, "initial ket")->required();
    p_verdict->add_option("--state", state, "measured ket")->required();
    p_verdict->add_option("--mu", mu, "search radius");
    p_verdict->callback([&] {
        action = [&] {
            Model m = make_model(mo, err);
            Verdict v = verdict(m.maps, parse_ket(init, m.n), parse_ket(state, m.n), mu);
            out << (v == Verdict::kAccept ? "accept" : "reject") << "\n";
            return 0;
        };
    });

    // sim run
    auto *sim = app.add_subcommand("sim", "noisy circuit sampling")->require_subcommand(1);
    auto *sim_run = sim->add_subcommand("run", "sample every depth 0..steps");
    std::uint64_t steps = 0, shots = 1000, seed = 1;
    double eps3 = 0;
    add_model_opts(sim_run, mo);
    sim_run->add_option("--init", init, "initial ket")->required();
    sim_run->add_option("--steps", steps, "largest depth p")->required();
    sim_run->add_option("--shots", shots, "shots per depth");
    sim_run->add_option("--eps3", eps3, "probability of each of X, Y, Z per qubit per step");
    sim_run->add_option("--seed", seed, "RNG base seed");
    sim_run->add_option("--out", out_path, "JSONL output (stdout if omitted)");
    sim_run->callback([&] {
        action = [&] {
            Model m = make_model(mo, err);
            BasisState b = parse_ket(init, m.n);
            NoiseSpec noise{eps3, seed};
            noise.validate();
            if (shots < 1) {
                throw ValidationError("--shots must be at least 1");
            }
            json cfg = model_config(mo, m);
            cfg["init"] = init;
            cfg["steps"] = steps;
            json header = {{"model", cfg["model"]}, {"n", m.n},       {"theta", m.theta},
                           {"eps", 3 * eps3},     {"eps_over_3", eps3}, {"M", shots},       {"base_seed", seed},
                           {"init", init},        {"steps", steps},   {"version", version()},
                           {"config", cfg}};
            CompiledCircuit cc(m.circuit);
            std::vector<MeasurementRecord> records;
            for (std::uint64_t p = 0; p <= steps; p++) {
                records.push_back(sample_measurements(cc, b, p, shots, noise));
            }
            with_output(out_path, out, [&](std::ostream &o) { write_records(o, header, records); });
            return 0;
        };
    });

    // metrics curve
    auto *metrics = app.add_subcommand("metrics", "fidelity analysis")->require_subcommand(1);
    auto *curve = metrics->add_subcommand("curve", "fidelity per depth from a measurement file");
    std::string record_path, floor_text = "auto", gnuplot_path;
    curve->add_option("--record", record_path, "JSONL from sim run")->required();
    curve->add_option("--mu", mus, "search radii")->delimiter(',')->required();
    curve->add_option("--floor", floor_text, "KL floor: auto (1/(10 M)) or a number");
    curve->add_option("--circuit", mo.circuit, "custom circuit JSON used for the record");
    curve->add_option("--out", out_path);
    curve->add_option("--emit-gnuplot", gnuplot_path, "also write whitespace-separated columns");
    curve->callback([&] {
        action = [&] {
            std::ifstream in(record_path);
            if (!in) {
                throw ValidationError("cannot open '" + record_path + "'");
            }
            RecordFile f = read_records(in);
            if (f.records.empty()) {
                throw ValidationError("measurement file has no shots");
            }
            const auto &h = f.header;
            const json &rc = h.contains("config") ? h["config"] : h;
            mo.model = rc.value("model", std::string("heis"));
            mo.n = h.at("n").get<int>();
            mo.theta = rc.value("theta", kDefaultTheta);
            mo.tol = rc.value("tol", kDefaultBitTol);
            if (mo.circuit.empty() && rc.contains("circuit")) {
                mo.circuit = rc["circuit"].get<std::string>();
            }
            Model m = make_model(mo, err);
            BasisState b = parse_ket(h.at("init").get<std::string>(), m.n);
            const double floor = parse_floor(floor_text, f.records.front().shots.size());
            auto rows = fidelity_curve(m, b, f.records, mus, floor);
            json cfg = {{"record", h}, {"mu", mus}, {"floor", floor_text}};
            auto header = header_lines(cfg);
            header.push_back("floor: " + format_double(floor));
            with_output(out_path, out, [&](std::ostream &o) { write_curve_csv(o, rows, mus, header); });
            if (!gnuplot_path.empty()) {
                with_output(gnuplot_path, out, [&](std::ostream &o) { write_curve_gnuplot(o, rows, mus, header); });
            }
            if (any_nan(rows)) {
                err << "error: post-selection kept no shots at some depth (nan in output)\n";
                return 2;
            }
            return 0;
        };
    });

    // oracle verify
    auto *oracle = app.add_subcommand("oracle", "dense brute-force checks")->require_subcommand(1);
    auto *o_verify = oracle->add_subcommand("verify", "compare against the dense step unitary");
    int trials = 20;
    add_model_opts(o_verify, mo);
    o_verify->add_option("--trials", trials, "random (state, depth) pairs");
    o_verify->add_option("--seed", seed, "RNG seed");
    o_verify->callback([&] {
        action = [&] {
            Model m = make_model(mo, err);
            OracleReport r = verify_model(m, trials, seed);
            write_header(out, model_config(mo, m));
            out << "partition_matches," << (r.partition_matches ? "true" : "false") << "\n";
            out << "components," << r.components << "\n";
            out << "unitarity_residual," << format_double(r.unitarity_residual) << "\n";
            out << "max_off_subspace_amplitude," << format_double(r.theorem1_max) << "\n";
            out << "max_cross_component_amplitude," << format_double(r.lemma1_max) << "\n";
            out << "component_commutator," << format_double(r.component_residual_max) << "\n";
            out << "union_commutator," << format_double(r.union_residual_max) << "\n";
            out << "split_commutator," << format_double(r.split_residual) << "\n";
            out << (r.passed() ? "PASS" : "FAIL") << "\n";
            return r.passed() ? 0 : 2;
        };
    });

    // repro
    auto *repro = app.add_subcommand("repro", "reproduce the reference experiments")->require_subcommand(1);
    bool full = false;
    auto add_repro = [&](const char *name, const char *desc) {
        auto *s = repro->add_subcommand(name, desc);
        s->add_flag("--full", full, "reference-scale sizes (slow)");
        s->add_option("--out", out_path);
        return s;
    };
    auto *fig1 = add_repro("fig1", "hopping chain partition, n = 4");
    fig1->callback([&] {
        action = [&] {
            Model m = build_hopping(4);
            auto sizes = partition_sizes(m.maps);
            auto oracle_sizes = sizes_from_labels(oracle_labels(compose_step_variants(m.circuit)));
            bool same = join_sizes(sizes) == join_sizes(oracle_sizes);
            with_output(out_path, out, [&](std::ostream &o) {
                write_header(o, json{{"model", "hop"}, {"n", 4}, {"theta", m.theta}});
                o << "partition sizes: " << join_sizes(sizes) << "\n";
                o << "oracle sizes:    " << join_sizes(oracle_sizes) << "\n";
                o << "seed,size\n";
                for (const auto &s : sizes) {
                    o << format_ket(s.seed, 4) << "," << s.size << "\n";
                }
            });
            return same ? 0 : 2;
        };
    });
    auto *fig3 = add_repro("fig3", "subspace sizes for every model");
    fig3->callback([&] {
        action = [&] {
            const int n_max = full ? 17 : 12;
            with_output(out_path, out, [&](std::ostream &o) {
                write_header(o, json{{"experiment", "fig3"}, {"n_max", n_max}});
                o << "model,n,seed,size\n";
                for (const char *name : {"heis", "t6", "f4"}) {
                    const int n_min = std::string(name) == "f4" ? 5 : (std::string(name) == "t6" ? 3 : 2);
                    for (int n = n_min; n <= n_max; n++) {
                        Model m = build_model(name, n);
                        for (const auto &s : partition_sizes(m.maps)) {
                            o << name << "," << n << "," << format_ket(s.seed, n) << "," << s.size << "\n";
                        }
                    }
                }
            });
            return 0;
        };
    });
    auto *fig4 = add_repro("fig4", "search failure rates for T6 and F4");
    fig4->callback([&] {
        action = [&] {
            const int n_max = full ? 17 : 12;
            with_output(out_path, out, [&](std::ostream &o) {
                write_header(o, json{{"experiment", "fig4"}, {"n_max", n_max}});
                o << "model,n,mu,failures,total,rate\n";
                for (int n = 3; n <= n_max; n++) {
                    Model m = build_t6(n);
                    for (int u : {1, 2}) {
                        auto s = failure_rate(m.maps, u);
                        o << "t6," << n << "," << u << "," << s.failures << "," << s.total << ","
                          << format_double(s.rate()) << "\n";
                    }
                }
                for (int n = 5; n <= n_max; n++) {
                    Model m = build_f4(n);
                    for (int u : {1, 3, 5, 7, 9}) {
                        auto s = failure_rate(m.maps, u);
                        o << "f4," << n << "," << u << "," << s.failures << "," << s.total << ","
                          << format_double(s.rate()) << "\n";
                    }
                }
            });
            return 0;
        };
    });
    auto *fig5 = add_repro("fig5", "post-selected fidelity curves");
    std::uint64_t repro_shots = 0;
    fig5->add_option("--shots", repro_shots, "shots per depth (default 10000)");
    fig5->add_option("--seed", seed, "RNG base seed");
    fig5->callback([&] {
        action = [&] {
            const int n = full ? 15 : 11;
            const std::uint64_t m_shots = repro_shots ? repro_shots : 10000;
            const std::vector<int> fig_mus{1, 2};
            bool empty = false;
            with_output(out_path, out, [&](std::ostream &o) {
                for (const char *name : {"heis", "t6", "f4"}) {
                    for (double e3 : {0.0, 0.02}) {
                        Model m = build_model(name, n);
                        CurveConfig cfg{m.default_init, static_cast<std::uint64_t>(2 * n), m_shots, e3, seed, fig_mus, 0};
                        auto rows = fidelity_curve(m, cfg);
                        empty = empty || any_nan(rows);
                        json c = {{"model", name},         {"n", n},         {"init", format_ket(m.default_init)},
                                  {"eps_over_3", e3},      {"M", m_shots},   {"base_seed", seed},
                                  {"steps", 2 * n},        {"mu", fig_mus},  {"floor", "auto"}};
                        write_curve_csv(o, rows, fig_mus, header_lines(c));
                        o << "\n";
                    }
                }
            });
            return empty ? 2 : 0;
        };
    });
    auto *fig6 = add_repro("fig6", "post-selection in F4 subspaces with false minima, n = 15");
    fig6->add_option("--shots", repro_shots, "shots per depth (default 1000, 5000 with --full)");
    fig6->add_option("--seed", seed, "RNG base seed");
    fig6->callback([&] {
        action = [&] {
            auto inits = rocky_initial_states();
            if (!full) {
                inits.resize(3);
            }
            const std::uint64_t m_shots = repro_shots ? repro_shots : (full ? 5000 : 1000);
            const std::vector<int> fig_mus{5, 7, 9};
            Model m = build_f4(15);
            with_output(out_path, out, [&](std::ostream &o) {
                for (const auto &b : inits) {
                    for (double e3 : {0.0, 0.02}) {
                        CurveConfig cfg{b, 29, m_shots, e3, seed, fig_mus, 0};
                        auto rows = fidelity_curve(m, cfg);
                        json c = {{"model", "f4"}, {"n", 15},          {"init", format_ket(b)}, {"eps_over_3", e3},
                                  {"M", m_shots},  {"base_seed", seed}, {"steps", 29},           {"mu", fig_mus},
                                  {"floor", "auto"}};
                        write_curve_csv(o, rows, fig_mus, header_lines(c));
                        o << "\n";
                    }
                }
            });
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    try {
        const int previous = requested_threads();
        if (threads > 0) {
            set_num_threads(threads);
        }
        struct Restore {
            int v;
            ~Restore() {
                set_num_threads(v);
            }
        } restore{previous};
        return action ? action() : 1;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ComputeError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace spskit::cli
