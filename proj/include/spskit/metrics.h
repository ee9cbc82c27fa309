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

#ifndef SPSKIT_METRICS_H
#define SPSKIT_METRICS_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "spskit/distribution.h"
#include "spskit/models.h"
#include "spskit/pathfind.h"
#include "spskit/sim.h"
#include "spskit/sps.h"

namespace spskit {

/// Largest n for which p_irn materializes every state.
constexpr int kMaxDenseDistributionQubits = 24;

/// sum_b P(b) ln(max(P(b), floor) / max(Q(b), floor)). Flooring both sides
/// keeps D(P, P) = 0 when P has bins below the floor.
double kl_divergence(const Distribution &p, const Distribution &q, double floor);

/// D(uniform over 2^n, q) with the same floor, without enumerating 2^n states.
double kl_from_uniform(const Distribution &q, int n, double floor);

/// 1 - D(sim, ideal) / D(uniform, ideal). Throws ComputeError when the
/// denominator vanishes (ideal is itself uniform).
double fidelity(const Distribution &sim, const Distribution &ideal, int n, double floor);

Distribution p_irn(int n);
Distribution p_isps(const Subspace &g);

/// Default floor for M shots.
inline double default_floor(std::uint64_t shots) {
    return 1.0 / (10.0 * static_cast<double>(shots));
}

struct PostselectResult {
    Distribution dist;
    std::uint64_t kept = 0;
    std::uint64_t total = 0;
    bool empty() const {
        return kept == 0;
    }
};

using ShotPredicate = std::function<bool(std::uint64_t)>;

/// Keeps accepted shots and renormalizes. Never replaces rejected shots.
PostselectResult postselect(const MeasurementRecord &rec, const ShotPredicate &accept);

struct CurveRow {
    std::uint64_t p = 0;
    double f_raw = 0;
    std::vector<double> f_ps;  // one per mu; NaN if nothing kept
    double f_ps_exact = 0;     // exact subspace membership filter
    double f_isps = 0;
    std::vector<std::uint64_t> kept;  // one per mu
    std::uint64_t kept_exact = 0;
    std::uint64_t shots = 0;
};

/// Scores one depth. `verifiers` are bound to the record's initial state.
CurveRow curve_row(const MeasurementRecord &rec, const Distribution &ideal, const Subspace &sps,
                   const std::vector<const PathVerifier *> &verifiers, double floor);

struct CurveConfig {
    BasisState init;
    std::uint64_t max_steps = 0;
    std::uint64_t shots = 1000;
    double eps_over_3 = 0;
    std::uint64_t seed = 1;
    std::vector<int> mus;
    double floor = 0;  // <= 0 means default_floor(shots)
};

/// Samples, filters and scores every depth p in [0, max_steps].
std::vector<CurveRow> fidelity_curve(const Model &m, const CurveConfig &cfg);

/// Scores previously recorded shots, one record per depth.
std::vector<CurveRow> fidelity_curve(const Model &m, BasisState init, const std::vector<MeasurementRecord> &records,
                                     const std::vector<int> &mus, double floor);

/// CSV with '#'-prefixed header lines.
void write_curve_csv(std::ostream &out, const std::vector<CurveRow> &rows, const std::vector<int> &mus,
                     const std::vector<std::string> &header);

/// Whitespace-separated columns for gnuplot.
void write_curve_gnuplot(std::ostream &out, const std::vector<CurveRow> &rows, const std::vector<int> &mus,
                         const std::vector<std::string> &header);

/// Shortest round-trip decimal form of x; "nan" for NaN.
std::string format_double(double x);

}  // namespace spskit

#endif
