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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>

#include "spskit/parallel.h"

namespace spskit {

double Distribution::total() const {
    double acc = 0;
    for (const auto &[code, w] : weights) {
        acc += w;
    }
    return acc;
}

void Distribution::normalize() {
    double t = total();
    if (t <= 0) {
        return;
    }
    for (auto &[code, w] : weights) {
        w /= t;
    }
}

Distribution Distribution::from_shots(int n, std::span<const std::uint64_t> shots) {
    Distribution d;
    d.n = n;
    for (auto s : shots) {
        d.weights[s] += 1.0;
    }
    d.normalize();
    return d;
}

namespace {

void check_floor(double floor) {
    if (!(floor > 0)) {
        throw ValidationError("KL floor must be positive");
    }
}

}  // namespace

double kl_divergence(const Distribution &p, const Distribution &q, double floor) {
    check_floor(floor);
    if (p.n != q.n) {
        throw ValidationError("distributions have different qubit counts");
    }
    double acc = 0;
    for (const auto &[code, w] : p.weights) {
        if (w <= 0) {
            continue;
        }
        acc += w * std::log(std::max(w, floor) / std::max(q.at(code), floor));
    }
    return acc;
}

double kl_from_uniform(const Distribution &q, int n, double floor) {
    check_floor(floor);
    if (q.n != n) {
        throw ValidationError("distributions have different qubit counts");
    }
    const double d = std::ldexp(1.0, n);
    double log_sum = 0;
    double covered = 0;
    for (const auto &[code, w] : q.weights) {
        log_sum += std::log(std::max(w, floor));
        covered += 1;
    }
    log_sum += (d - covered) * std::log(floor);
    return std::log(std::max(1.0 / d, floor)) - log_sum / d;
}

double fidelity(const Distribution &sim, const Distribution &ideal, int n, double floor) {
    double den = kl_from_uniform(ideal, n, floor);
    if (std::abs(den) < 1e-12) {
        throw ComputeError("fidelity undefined: ideal distribution is indistinguishable from uniform");
    }
    return 1.0 - kl_divergence(sim, ideal, floor) / den;
}

Distribution p_irn(int n) {
    if (n < 1 || n > kMaxDenseDistributionQubits) {
        throw ValidationError("p_irn materializes 2^n states; n must be in [1, " +
                              std::to_string(kMaxDenseDistributionQubits) + "]");
    }
    Distribution d;
    d.n = n;
    const std::uint64_t dim = std::uint64_t{1} << n;
    const double w = 1.0 / static_cast<double>(dim);
    for (std::uint64_t b = 0; b < dim; b++) {
        d.weights.emplace_hint(d.weights.end(), b, w);
    }
    return d;
}

Distribution p_isps(const Subspace &g) {
    Distribution d;
    d.n = g.n();
    const double w = 1.0 / static_cast<double>(g.size());
    for (auto b : g.members()) {
        d.weights[b] = w;
    }
    return d;
}

PostselectResult postselect(const MeasurementRecord &rec, const ShotPredicate &accept) {
    if (rec.shots.empty()) {
        throw ValidationError("cannot post-select an empty record");
    }
    PostselectResult r;
    r.dist.n = rec.n;
    r.total = rec.shots.size();
    for (auto s : rec.shots) {
        if (accept(s)) {
            r.dist.weights[s] += 1.0;
            r.kept++;
        }
    }
    r.dist.normalize();
    return r;
}

CurveRow curve_row(const MeasurementRecord &rec, const Distribution &ideal, const Subspace &sps,
                   const std::vector<const PathVerifier *> &verifiers, double floor) {
    const int n = rec.n;
    CurveRow row;
    row.p = rec.p;
    row.shots = rec.shots.size();
    row.f_raw = fidelity(Distribution::from_shots(n, rec.shots), ideal, n, floor);
    row.f_isps = fidelity(p_isps(sps), ideal, n, floor);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    // Each distinct shot is judged once.
    std::vector<std::uint64_t> distinct(rec.shots);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto *v : verifiers) {
        std::vector<char> flag(distinct.size());
        const auto count = static_cast<std::int64_t>(distinct.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(num_threads())
        for (std::int64_t i = 0; i < count; i++) {
            flag[i] = v->accepts(distinct[i]);
        }
        std::vector<std::uint64_t> accepted;
        for (size_t i = 0; i < distinct.size(); i++) {
            if (flag[i]) {
                accepted.push_back(distinct[i]);
            }
        }
        auto ps = postselect(rec, [&](std::uint64_t b) {
            return std::binary_search(accepted.begin(), accepted.end(), b);
        });
        row.kept.push_back(ps.kept);
        row.f_ps.push_back(ps.empty() ? nan : fidelity(ps.dist, ideal, n, floor));
    }
    auto exact = postselect(rec, [&](std::uint64_t b) { return sps.contains_code(b); });
    row.kept_exact = exact.kept;
    row.f_ps_exact = exact.empty() ? nan : fidelity(exact.dist, ideal, n, floor);
    return row;
}

std::vector<CurveRow> fidelity_curve(const Model &m, const CurveConfig &cfg) {
    NoiseSpec noise{cfg.eps_over_3, cfg.seed};
    noise.validate();
    const double floor = cfg.floor > 0 ? cfg.floor : default_floor(cfg.shots);
    CompiledCircuit cc(m.circuit);
    Subspace sps = enumerate_sps(m.maps, cfg.init);
    std::vector<std::unique_ptr<PathVerifier>> owned;
    std::vector<const PathVerifier *> verifiers;
    for (int mu : cfg.mus) {
        owned.push_back(std::make_unique<PathVerifier>(m.maps, cfg.init, mu));
        verifiers.push_back(owned.back().get());
    }
    std::vector<CurveRow> rows;
    Statevector psi = Statevector::basis(cfg.init);
    for (std::uint64_t p = 0; p <= cfg.max_steps; p++) {
        if (p > 0) {
            apply_step(psi, cc, p);
        }
        Distribution ideal;
        ideal.n = m.n;
        const auto &amps = psi.amplitudes();
        for (std::uint64_t j = 0; j < amps.size(); j++) {
            double w = std::norm(amps[j]);
            if (w > 0) {
                ideal.weights.emplace_hint(ideal.weights.end(), j, w);
            }
        }
        ideal.normalize();
        auto rec = sample_measurements(cc, cfg.init, p, cfg.shots, noise);
        rows.push_back(curve_row(rec, ideal, sps, verifiers, floor));
    }
    return rows;
}

std::vector<CurveRow> fidelity_curve(const Model &m, BasisState init, const std::vector<MeasurementRecord> &records,
                                     const std::vector<int> &mus, double floor) {
    CompiledCircuit cc(m.circuit);
    Subspace sps = enumerate_sps(m.maps, init);
    std::vector<std::unique_ptr<PathVerifier>> owned;
    std::vector<const PathVerifier *> verifiers;
    for (int mu : mus) {
        owned.push_back(std::make_unique<PathVerifier>(m.maps, init, mu));
        verifiers.push_back(owned.back().get());
    }
    std::vector<CurveRow> rows;
    for (const auto &rec : records) {
        if (rec.n != m.n) {
            throw ValidationError("record qubit count does not match the model");
        }
        double f = floor > 0 ? floor : default_floor(rec.shots.size());
        rows.push_back(curve_row(rec, ideal_distribution(cc, init, rec.p), sps, verifiers, f));
    }
    return rows;
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

void write_rows(std::ostream &out, const std::vector<CurveRow> &rows, const std::vector<int> &mus,
                const std::vector<std::string> &header, char sep) {
    for (const auto &h : header) {
        out << "# " << h << "\n";
    }
    if (sep != ',') {
        out << "# ";
    }
    out << "p" << sep << "F_raw";
    for (int mu : mus) {
        out << sep << "F_ps_mu" << mu;
    }
    out << sep << "F_ps_exact" << sep << "F_isps";
    for (int mu : mus) {
        out << sep << "M_kept_mu" << mu;
    }
    out << sep << "M_kept_exact" << sep << "M\n";
    for (const auto &r : rows) {
        out << r.p << sep << format_double(r.f_raw);
        for (double f : r.f_ps) {
            out << sep << format_double(f);
        }
        out << sep << format_double(r.f_ps_exact) << sep << format_double(r.f_isps);
        for (auto k : r.kept) {
            out << sep << k;
        }
        out << sep << r.kept_exact << sep << r.shots << "\n";
    }
}

}  // namespace

void write_curve_csv(std::ostream &out, const std::vector<CurveRow> &rows, const std::vector<int> &mus,
                     const std::vector<std::string> &header) {
    write_rows(out, rows, mus, header, ',');
}

void write_curve_gnuplot(std::ostream &out, const std::vector<CurveRow> &rows, const std::vector<int> &mus,
                         const std::vector<std::string> &header) {
    write_rows(out, rows, mus, header, ' ');
}

}  // namespace spskit
