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

#include "spskit/sim.h"

#include <omp.h>

#include <algorithm>
#include <cmath>

#include "spskit/distribution.h"
#include "spskit/parallel.h"

namespace spskit {

Statevector::Statevector(int n) : n_(n) {
    if (n < 1 || n > kMaxStatevectorQubits) {
        throw ValidationError("statevector size must be in [1, " + std::to_string(kMaxStatevectorQubits) +
                              "] qubits, got " + std::to_string(n));
    }
    amps_.assign(size_t{1} << n, Complex(0, 0));
}

Statevector Statevector::basis(BasisState b) {
    Statevector s(b.n);
    s.amps_[b.code] = 1;
    return s;
}

double Statevector::norm_squared() const {
    double acc = 0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

CompiledGate::CompiledGate(const LocalUnitary &u, double tol) : source_(&u), mask_(u.window.mask()) {
    sorted_window_ = u.window.indices();
    std::sort(sorted_window_.begin(), sorted_window_.end());
    EditMap classes = build_edit_map(u, tol);
    for (const auto &cls : classes.classes()) {
        if (cls.size() == 1) {
            Complex z = u.at(cls[0], cls[0]);
            if (z != Complex(1, 0)) {
                phases_.push_back({scatter_bits(cls[0], u.window.indices()), z});
            }
            continue;
        }
        Block b;
        for (auto p : cls) {
            b.offsets.push_back(scatter_bits(p, u.window.indices()));
        }
        for (auto r : cls) {
            for (auto c : cls) {
                b.matrix.push_back(u.at(r, c));
            }
        }
        blocks_.push_back(std::move(b));
    }
    for (const auto &b : blocks_) {
        block_sizes_.push_back(static_cast<std::uint32_t>(b.offsets.size()));
        flat_offsets_.insert(flat_offsets_.end(), b.offsets.begin(), b.offsets.end());
        flat_matrices_.insert(flat_matrices_.end(), b.matrix.begin(), b.matrix.end());
    }
}

CompiledCircuit::CompiledCircuit(const Circuit &c, double tol) : n_(c.n()) {
    auto gates = c.distinct_gates();
    gates_.reserve(gates.size());
    std::vector<const LocalUnitary *> sources;
    for (const auto &g : gates) {
        gates_.emplace_back(*g, tol);
        sources.push_back(g.get());
    }
    for (const auto &variant : c.step_variants()) {
        std::vector<const CompiledGate *> seq;
        for (const auto &layer : variant) {
            for (const auto &g : layer) {
                auto it = std::find(sources.begin(), sources.end(), g.get());
                seq.push_back(&gates_[it - sources.begin()]);
            }
        }
        steps_.push_back(std::move(seq));
    }
}

namespace {

/// Inserts a zero bit at each (ascending) position of `sorted_positions`.
inline std::uint64_t deposit_zeros(std::uint64_t i, const std::vector<int> &sorted_positions) {
    for (int w : sorted_positions) {
        std::uint64_t low = i & ((std::uint64_t{1} << w) - 1);
        i = ((i >> w) << (w + 1)) | low;
    }
    return i;
}

// Plain product; std::complex operator* goes through the NaN-recovering
// library call.
inline Complex cmul(const Complex &a, const Complex &b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

struct GateView {
    const std::pair<std::uint64_t, Complex> *phases;
    size_t n_phases;
    const std::uint32_t *sizes;
    size_t n_blocks;
    const std::uint64_t *offsets;
    const Complex *matrices;

    explicit GateView(const CompiledGate &g)
        : phases(g.phases().data()),
          n_phases(g.phases().size()),
          sizes(g.block_sizes().data()),
          n_blocks(g.block_sizes().size()),
          offsets(g.flat_offsets().data()),
          matrices(g.flat_matrices().data()) {
    }
};

inline void apply_gate_block(Complex *amps, const GateView &g, std::uint64_t base) {
    for (size_t k = 0; k < g.n_phases; k++) {
        Complex &a = amps[base | g.phases[k].first];
        a = cmul(a, g.phases[k].second);
    }
    const std::uint64_t *off = g.offsets;
    const Complex *mat = g.matrices;
    for (size_t k = 0; k < g.n_blocks; k++) {
        const size_t m = g.sizes[k];
        if (m == 2) {
            Complex &a0 = amps[base | off[0]];
            Complex &a1 = amps[base | off[1]];
            Complex x0 = a0, x1 = a1;
            a0 = cmul(mat[0], x0) + cmul(mat[1], x1);
            a1 = cmul(mat[2], x0) + cmul(mat[3], x1);
        } else if (m <= 64) {
            Complex in[64];
            for (size_t r = 0; r < m; r++) {
                in[r] = amps[base | off[r]];
            }
            for (size_t r = 0; r < m; r++) {
                Complex acc = 0;
                for (size_t c = 0; c < m; c++) {
                    acc += cmul(mat[r * m + c], in[c]);
                }
                amps[base | off[r]] = acc;
            }
        } else {
            // Only possible for windows wider than 6 qubits.
            std::vector<Complex> in(m);
            for (size_t r = 0; r < m; r++) {
                in[r] = amps[base | off[r]];
            }
            for (size_t r = 0; r < m; r++) {
                Complex acc = 0;
                for (size_t c = 0; c < m; c++) {
                    acc += cmul(mat[r * m + c], in[c]);
                }
                amps[base | off[r]] = acc;
            }
        }
        off += m;
        mat += m * m;
    }
}

constexpr std::int64_t kParallelBlockThreshold = std::int64_t{1} << 12;

}  // namespace

void apply_gate(Statevector &psi, const CompiledGate &g) {
    if (g.mask() >> psi.n()) {
        throw ValidationError("gate window does not fit the statevector");
    }
    auto &amps = psi.amplitudes();
    const std::int64_t blocks = std::int64_t{1} << (psi.n() - g.n_window());
    const GateView view(g);
    Complex *data = amps.data();
    if (blocks < kParallelBlockThreshold || omp_in_parallel() || num_threads() == 1) {
        // Walk the bases with zeros under the window: (base | mask) + 1 carries
        // past the window bits.
        const std::uint64_t mask = g.mask();
        std::uint64_t base = 0;
        for (std::int64_t i = 0; i < blocks; i++) {
            apply_gate_block(data, view, base);
            base = ((base | mask) + 1) & ~mask;
        }
        return;
    }
#pragma omp parallel for schedule(static) num_threads(num_threads())
    for (std::int64_t i = 0; i < blocks; i++) {
        apply_gate_block(data, view, deposit_zeros(static_cast<std::uint64_t>(i), g.sorted_window()));
    }
}

void apply_step(Statevector &psi, const CompiledCircuit &c, std::uint64_t j) {
    for (const auto *g : c.step(j)) {
        apply_gate(psi, *g);
    }
}

void apply_circuit_steps(Statevector &psi, const CompiledCircuit &c, std::uint64_t p) {
    if (psi.n() != c.n()) {
        throw ValidationError("statevector and circuit qubit counts differ");
    }
    for (std::uint64_t j = 1; j <= p; j++) {
        apply_step(psi, c, j);
    }
}

Statevector apply_circuit_steps(Statevector psi, const Circuit &c, std::uint64_t p) {
    CompiledCircuit cc(c);
    apply_circuit_steps(psi, cc, p);
    return psi;
}

namespace serial {

void apply_gate(Statevector &psi, const LocalUnitary &u) {
    u.window.check_fits(psi.n());
    const auto &w = u.window.indices();
    const std::uint64_t mask = u.window.mask();
    const size_t d = u.dim();
    std::vector<Complex> in(d);
    auto &amps = psi.amplitudes();
    for (std::uint64_t base = 0; base < amps.size(); base++) {
        if (base & mask) {
            continue;
        }
        for (std::uint32_t c = 0; c < d; c++) {
            in[c] = amps[base | scatter_bits(c, w)];
        }
        for (std::uint32_t r = 0; r < d; r++) {
            Complex acc = 0;
            for (std::uint32_t c = 0; c < d; c++) {
                acc += u.at(r, c) * in[c];
            }
            amps[base | scatter_bits(r, w)] = acc;
        }
    }
}

void apply_circuit_steps(Statevector &psi, const Circuit &c, std::uint64_t p) {
    for (std::uint64_t j = 1; j <= p; j++) {
        for (const auto &layer : c.step(j)) {
            for (const auto &g : layer) {
                apply_gate(psi, *g);
            }
        }
    }
}

}  // namespace serial

void apply_pauli(Statevector &psi, int qubit, Pauli p) {
    if (p == Pauli::kI) {
        return;
    }
    if (qubit < 0 || qubit >= psi.n()) {
        throw ValidationError("Pauli target out of range");
    }
    auto &amps = psi.amplitudes();
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    for (std::uint64_t j = 0; j < amps.size(); j++) {
        if (j & bit) {
            continue;
        }
        Complex &a0 = amps[j];
        Complex &a1 = amps[j | bit];
        switch (p) {
            case Pauli::kX:
                std::swap(a0, a1);
                break;
            case Pauli::kY: {
                // Y|0> = i|1>, Y|1> = -i|0>
                Complex t0 = a0;
                a0 = Complex(a1.imag(), -a1.real());
                a1 = Complex(-t0.imag(), t0.real());
                break;
            }
            case Pauli::kZ:
                a1 = -a1;
                break;
            default:
                break;
        }
    }
}

void NoiseSpec::validate() const {
    if (!(eps_over_3 >= 0) || 3 * eps_over_3 > 1) {
        throw ValidationError("eps/3 must satisfy 0 <= 3*eps/3 <= 1, got " + std::to_string(eps_over_3));
    }
}

Pauli draw_pauli(Rng &rng, double eps_over_3) {
    double u = uniform01(rng);
    if (u < eps_over_3) {
        return Pauli::kX;
    }
    if (u < 2 * eps_over_3) {
        return Pauli::kY;
    }
    if (u < 3 * eps_over_3) {
        return Pauli::kZ;
    }
    return Pauli::kI;
}

Statevector noisy_trajectory_state(const CompiledCircuit &c, BasisState psi0, std::uint64_t p, double eps_over_3,
                                   Rng &rng) {
    if (psi0.n != c.n()) {
        throw ValidationError("initial state and circuit qubit counts differ");
    }
    Statevector psi = Statevector::basis(psi0);
    for (std::uint64_t j = 1; j <= p; j++) {
        apply_step(psi, c, j);
        if (eps_over_3 > 0) {
            for (int q = 0; q < c.n(); q++) {
                apply_pauli(psi, q, draw_pauli(rng, eps_over_3));
            }
        }
    }
    return psi;
}

std::uint64_t sample_basis(const Statevector &psi, Rng &rng) {
    const auto &amps = psi.amplitudes();
    double target = uniform01(rng) * psi.norm_squared();
    double acc = 0;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t j = 0; j < amps.size(); j++) {
        double w = std::norm(amps[j]);
        if (w == 0) {
            continue;
        }
        acc += w;
        last_nonzero = j;
        if (acc > target) {
            return j;
        }
    }
    return last_nonzero;
}

BasisState run_noisy_trajectory(const CompiledCircuit &c, BasisState psi0, std::uint64_t p, const NoiseSpec &noise,
                                Rng &rng) {
    noise.validate();
    Statevector psi = noisy_trajectory_state(c, psi0, p, noise.eps_over_3, rng);
    return BasisState{sample_basis(psi, rng), psi0.n};
}

Distribution ideal_distribution(const CompiledCircuit &c, BasisState psi0, std::uint64_t p) {
    Statevector psi = Statevector::basis(psi0);
    apply_circuit_steps(psi, c, p);
    Distribution d;
    d.n = psi0.n;
    const auto &amps = psi.amplitudes();
    for (std::uint64_t j = 0; j < amps.size(); j++) {
        double w = std::norm(amps[j]);
        if (w > 0) {
            d.weights.emplace_hint(d.weights.end(), j, w);
        }
    }
    d.normalize();
    return d;
}

Distribution ideal_distribution(const Circuit &c, BasisState psi0, std::uint64_t p) {
    return ideal_distribution(CompiledCircuit(c), psi0, p);
}

MeasurementRecord sample_measurements(const CompiledCircuit &c, BasisState psi0, std::uint64_t p, std::uint64_t shots,
                                      const NoiseSpec &noise) {
    noise.validate();
    if (shots < 1) {
        throw ValidationError("need at least one shot");
    }
    MeasurementRecord rec{c.n(), p, noise.rng_seed, noise.eps_over_3, std::vector<std::uint64_t>(shots)};
    const auto m = static_cast<std::int64_t>(shots);
    if (noise.noiseless()) {
        // Every trajectory is the same state; only the readout draw differs.
        Statevector psi = Statevector::basis(psi0);
        apply_circuit_steps(psi, c, p);
#pragma omp parallel for schedule(static) num_threads(num_threads())
        for (std::int64_t s = 0; s < m; s++) {
            Rng rng(shot_seed(noise.rng_seed, p, static_cast<std::uint64_t>(s)));
            rec.shots[s] = sample_basis(psi, rng);
        }
        return rec;
    }
#pragma omp parallel for schedule(dynamic, 16) num_threads(num_threads())
    for (std::int64_t s = 0; s < m; s++) {
        Rng rng(shot_seed(noise.rng_seed, p, static_cast<std::uint64_t>(s)));
        rec.shots[s] = run_noisy_trajectory(c, psi0, p, noise, rng).code;
    }
    return rec;
}

namespace serial {

MeasurementRecord sample_measurements(const CompiledCircuit &c, BasisState psi0, std::uint64_t p,
                                      std::uint64_t shots, const NoiseSpec &noise) {
    noise.validate();
    MeasurementRecord rec{c.n(), p, noise.rng_seed, noise.eps_over_3, std::vector<std::uint64_t>(shots)};
    for (std::uint64_t s = 0; s < shots; s++) {
        Rng rng(shot_seed(noise.rng_seed, p, s));
        rec.shots[s] = run_noisy_trajectory(c, psi0, p, noise, rng).code;
    }
    return rec;
}

}  // namespace serial

}  // namespace spskit
