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

#include "spskit/metrics.h"

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "spskit/models.h"
#include "spskit/parallel.h"
#include "spskit/sim.h"
#include "spskit/sps.h"

using namespace spskit;

namespace {

Distribution point_mass(int n, std::uint64_t b) {
    Distribution d;
    d.n = n;
    d.weights[b] = 1.0;
    return d;
}

Distribution mixture(const Distribution &a, const Distribution &b, double wa) {
    Distribution d;
    d.n = a.n;
    for (const auto &[k, w] : a.weights) {
        d.weights[k] += wa * w;
    }
    for (const auto &[k, w] : b.weights) {
        d.weights[k] += (1 - wa) * w;
    }
    return d;
}

}  // namespace

TEST(metrics, distribution_from_shots) {
    std::vector<std::uint64_t> shots{3, 3, 1, 0};
    Distribution d = Distribution::from_shots(2, shots);
    ASSERT_DOUBLE_EQ(d.at(3), 0.5);
    ASSERT_DOUBLE_EQ(d.at(1), 0.25);
    ASSERT_DOUBLE_EQ(d.at(2), 0.0);
    ASSERT_EQ(d.support_size(), 3u);
    ASSERT_DOUBLE_EQ(d.total(), 1.0);
    Distribution e;
    e.normalize();
    ASSERT_EQ(e.support_size(), 0u);
}

TEST(metrics, kl_examples) {
    Distribution pm = point_mass(4, 5);
    ASSERT_DOUBLE_EQ(kl_divergence(pm, pm, 1e-6), 0.0);
    Distribution two;
    two.n = 4;
    two.weights = {{1, 0.5}, {2, 0.5}};
    ASSERT_DOUBLE_EQ(kl_divergence(two, two, 1e-6), 0.0);
    ASSERT_NEAR(kl_divergence(pm, p_irn(4), 1e-6), std::log(16.0), 1e-12);
    ASSERT_NEAR(kl_divergence(pm, p_irn(4), 1e-6), 2.7726, 1e-4);
    ASSERT_THROW(kl_divergence(pm, pm, 0.0), ValidationError);
    ASSERT_THROW(kl_divergence(pm, p_irn(3), 1e-6), ValidationError);
}

TEST(metrics, kl_floor_applies_to_missing_bins) {
    Distribution p = point_mass(3, 1);
    Distribution q = point_mass(3, 2);
    ASSERT_NEAR(kl_divergence(p, q, 1e-4), std::log(1e4), 1e-12);
}

TEST(metrics, kl_nonnegative) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 100; t++) {
        Distribution p, q;
        p.n = q.n = 4;
        for (std::uint64_t b = 0; b < 16; b++) {
            if (u(rng) < 0.6) {
                p.weights[b] = u(rng);
            }
            q.weights[b] = u(rng) + 1e-3;
        }
        p.normalize();
        q.normalize();
        ASSERT_GE(kl_divergence(p, q, 1e-6), -1e-12);
    }
}

TEST(metrics, kl_from_uniform_matches_dense) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (int n : {1, 3, 6, 9}) {
        for (double floor : {1e-5, 1e-3}) {
            Distribution q;
            q.n = n;
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); b++) {
                if (u(rng) < 0.3) {
                    q.weights[b] = u(rng);
                }
            }
            q.weights[0] = 0.5;
            q.normalize();
            ASSERT_NEAR(kl_from_uniform(q, n, floor), kl_divergence(p_irn(n), q, floor), 1e-10) << n;
        }
    }
}

TEST(metrics, fidelity_endpoints) {
    Model hop = build_hopping(4);
    Distribution ideal = ideal_distribution(hop.circuit, parse_ket("1100"), 3);
    const double floor = 1e-5;
    ASSERT_DOUBLE_EQ(fidelity(ideal, ideal, 4, floor), 1.0);
    ASSERT_NEAR(fidelity(p_irn(4), ideal, 4, floor), 0.0, 1e-12);
    double mid = fidelity(mixture(ideal, p_irn(4), 0.5), ideal, 4, floor);
    ASSERT_GT(mid, 0.0);
    ASSERT_LT(mid, 1.0);
}

TEST(metrics, fidelity_degenerate_denominator) {
    ASSERT_THROW(fidelity(p_irn(3), p_irn(3), 3, 1e-4), ComputeError);
}

TEST(metrics, fidelity_monotone_in_divergence) {
    Model heis = build_heisenberg(5);
    Distribution ideal = ideal_distribution(heis.circuit, parse_ket("10100"), 4);
    double prev = 2;
    for (double w : {1.0, 0.8, 0.5, 0.2, 0.0}) {
        Distribution sim = mixture(ideal, p_irn(5), w);
        double f = fidelity(sim, ideal, 5, 1e-5);
        ASSERT_LT(f, prev);
        prev = f;
    }
}

TEST(metrics, reference_distributions) {
    Distribution u2 = p_irn(2);
    ASSERT_EQ(u2.support_size(), 4u);
    for (std::uint64_t b = 0; b < 4; b++) {
        ASSERT_DOUBLE_EQ(u2.at(b), 0.25);
    }
    ASSERT_DOUBLE_EQ(p_irn(4).at(7), 1.0 / 16);
    ASSERT_NEAR(p_irn(10).total(), 1.0, 1e-12);
    ASSERT_THROW(p_irn(kMaxDenseDistributionQubits + 1), ValidationError);

    Model hop = build_hopping(4);
    Distribution g2 = p_isps(enumerate_sps(hop.maps, parse_ket("1100")));
    ASSERT_EQ(g2.support_size(), 6u);
    ASSERT_DOUBLE_EQ(g2.at(parse_ket("0101").code), 1.0 / 6);
    ASSERT_DOUBLE_EQ(g2.at(parse_ket("1110").code), 0.0);
    Distribution g0 = p_isps(enumerate_sps(hop.maps, parse_ket("0000")));
    ASSERT_EQ(g0.support_size(), 1u);
    ASSERT_DOUBLE_EQ(g0.at(0), 1.0);
}

TEST(metrics, postselect_removes_off_sector) {
    Model heis = build_heisenberg(4);
    BasisState psi0 = parse_ket("1100");
    Subspace g = enumerate_sps(heis.maps, psi0);
    MeasurementRecord rec{4, 3, 1, 0.0, {parse_ket("1010").code, parse_ket("0011").code, parse_ket("1110").code}};
    auto r = postselect(rec, [&](std::uint64_t b) { return g.contains_code(b); });
    ASSERT_EQ(r.kept, 2u);
    ASSERT_EQ(r.total, 3u);
    ASSERT_DOUBLE_EQ(r.dist.at(parse_ket("1110").code), 0.0);
    ASSERT_DOUBLE_EQ(r.dist.at(parse_ket("1010").code), 0.5);
    auto none = postselect(rec, [](std::uint64_t) { return false; });
    ASSERT_TRUE(none.empty());
    MeasurementRecord empty{4, 0, 1, 0.0, {}};
    ASSERT_THROW(postselect(empty, [](std::uint64_t) { return true; }), ValidationError);
}

TEST(metrics, exact_postselect_is_sound_noiseless) {
    for (const char *name : {"heis", "t6", "f4"}) {
        Model m = build_model(name, 9);
        CompiledCircuit cc(m.circuit);
        Subspace g = enumerate_sps(m.maps, m.default_init);
        for (std::uint64_t p : {1, 5, 10}) {
            auto rec = sample_measurements(cc, m.default_init, p, 2000, NoiseSpec{0.0, p});
            auto r = postselect(rec, [&](std::uint64_t b) { return g.contains_code(b); });
            ASSERT_EQ(r.kept, r.total) << name;
        }
    }
}

TEST(metrics, curve_noiseless_heisenberg) {
    Model heis = build_heisenberg(8);
    CurveConfig cfg;
    cfg.init = heis.default_init;
    cfg.max_steps = 6;
    cfg.shots = 4000;
    cfg.seed = 3;
    cfg.mus = {1};
    auto rows = fidelity_curve(heis, cfg);
    ASSERT_EQ(rows.size(), 7u);
    ASSERT_DOUBLE_EQ(rows[0].f_raw, 1.0);
    for (const auto &r : rows) {
        ASSERT_EQ(r.kept[0], r.shots);
        ASSERT_EQ(r.kept_exact, r.shots);
        ASSERT_NEAR(r.f_ps[0], r.f_raw, 1e-12);
        ASSERT_NEAR(r.f_ps_exact, r.f_raw, 1e-12);
    }
}

TEST(metrics, curve_noisy_postselection_helps) {
    Model t6 = build_t6(9);
    CurveConfig cfg;
    cfg.init = t6.default_init;
    cfg.max_steps = 18;
    cfg.shots = 4000;
    cfg.eps_over_3 = 0.02;
    cfg.seed = 7;
    cfg.mus = {1, 2};
    auto rows = fidelity_curve(t6, cfg);
    for (const auto &r : rows) {
        ASSERT_LE(r.kept[0], r.kept_exact);  // mu=1 may falsely reject
        ASSERT_EQ(r.kept[1], r.kept_exact);  // mu=2 is exact for T6
        ASSERT_GE(r.f_ps[1], r.f_raw - 0.02) << r.p;
    }
    ASSERT_LT(rows.back().f_raw, 0.5);
    ASSERT_GT(rows.back().f_ps[1], rows.back().f_raw);
}

TEST(metrics, curve_from_records_matches_direct) {
    Model f4 = build_f4(8);
    CurveConfig cfg;
    cfg.init = f4.default_init;
    cfg.max_steps = 4;
    cfg.shots = 500;
    cfg.eps_over_3 = 0.01;
    cfg.seed = 2;
    cfg.mus = {3};
    auto direct = fidelity_curve(f4, cfg);
    CompiledCircuit cc(f4.circuit);
    std::vector<MeasurementRecord> recs;
    for (std::uint64_t p = 0; p <= 4; p++) {
        recs.push_back(sample_measurements(cc, cfg.init, p, 500, NoiseSpec{0.01, 2}));
    }
    auto scored = fidelity_curve(f4, cfg.init, recs, {3}, 0.0);
    ASSERT_EQ(direct.size(), scored.size());
    for (size_t i = 0; i < direct.size(); i++) {
        ASSERT_NEAR(direct[i].f_raw, scored[i].f_raw, 1e-12);
        ASSERT_EQ(direct[i].kept, scored[i].kept);
        ASSERT_NEAR(direct[i].f_isps, scored[i].f_isps, 1e-12);
    }
}

TEST(metrics, curve_thread_invariant_output) {
    Model t6 = build_t6(8);
    CurveConfig cfg;
    cfg.init = t6.default_init;
    cfg.max_steps = 5;
    cfg.shots = 800;
    cfg.eps_over_3 = 0.02;
    cfg.mus = {1, 2};
    auto render = [&] {
        std::ostringstream os;
        write_curve_csv(os, fidelity_curve(t6, cfg), cfg.mus, {"run"});
        return os.str();
    };
    set_num_threads(1);
    std::string one = render();
    set_num_threads(3);
    std::string three = render();
    set_num_threads(0);
    ASSERT_EQ(one, three);
}

TEST(metrics, csv_layout) {
    CurveRow r;
    r.p = 2;
    r.f_raw = 0.5;
    r.f_ps = {0.75, std::nan("")};
    r.f_ps_exact = 0.8;
    r.f_isps = 0.25;
    r.kept = {10, 0};
    r.kept_exact = 12;
    r.shots = 20;
    std::ostringstream os;
    write_curve_csv(os, {r}, {1, 2}, {"model=t6"});
    ASSERT_EQ(os.str(),
              "# model=t6\n"
              "p,F_raw,F_ps_mu1,F_ps_mu2,F_ps_exact,F_isps,M_kept_mu1,M_kept_mu2,M_kept_exact,M\n"
              "2,0.5,0.75,nan,0.8,0.25,10,0,12,20\n");
    std::ostringstream gp;
    write_curve_gnuplot(gp, {r}, {1, 2}, {});
    ASSERT_EQ(gp.str(),
              "# p F_raw F_ps_mu1 F_ps_mu2 F_ps_exact F_isps M_kept_mu1 M_kept_mu2 M_kept_exact M\n"
              "2 0.5 0.75 nan 0.8 0.25 10 0 12 20\n");
}

TEST(metrics, format_double_round_trips) {
    ASSERT_EQ(format_double(0.1), "0.1");
    ASSERT_EQ(format_double(1.0), "1");
    ASSERT_EQ(format_double(std::nan("")), "nan");
    double x = 0.123456789012345678;
    ASSERT_EQ(std::stod(format_double(x)), x);
}

TEST(metrics, default_floor) {
    ASSERT_DOUBLE_EQ(default_floor(10000), 1e-5);
}
