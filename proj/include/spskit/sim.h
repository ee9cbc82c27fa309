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

#ifndef SPSKIT_SIM_H
#define SPSKIT_SIM_H

#include <cstdint>
#include <random>
#include <vector>

#include "spskit/basis.h"
#include "spskit/distribution.h"
#include "spskit/editmap.h"
#include "spskit/models.h"

namespace spskit {

constexpr int kMaxStatevectorQubits = 28;

class Statevector {
   public:
    Statevector() = default;
    explicit Statevector(int n);
    static Statevector basis(BasisState b);

    int n() const {
        return n_;
    }
    size_t dim() const {
        return amps_.size();
    }
    std::vector<Complex> &amplitudes() {
        return amps_;
    }
    const std::vector<Complex> &amplitudes() const {
        return amps_;
    }
    Complex &operator[](size_t j) {
        return amps_[j];
    }
    const Complex &operator[](size_t j) const {
        return amps_[j];
    }
    double norm_squared() const;

   private:
    int n_ = 0;
    std::vector<Complex> amps_;
};

/// A local gate preprocessed for application: the unitary is split into its
/// invariant pattern blocks (its edit-map classes). Identity singletons are
/// skipped; other singletons are phases; larger classes are small dense
/// blocks. Entries coupling different classes are below the bitize tolerance
/// and are dropped.
class CompiledGate {
   public:
    struct Block {
        std::vector<std::uint64_t> offsets;  // scattered class members
        std::vector<Complex> matrix;         // row-major, size^2
    };

    explicit CompiledGate(const LocalUnitary &u, double tol = kDefaultBitTol);

    int n_window() const {
        return static_cast<int>(sorted_window_.size());
    }
    std::uint64_t mask() const {
        return mask_;
    }
    const std::vector<int> &sorted_window() const {
        return sorted_window_;
    }
    const std::vector<Block> &blocks() const {
        return blocks_;
    }
    const std::vector<std::pair<std::uint64_t, Complex>> &phases() const {
        return phases_;
    }
    const LocalUnitary &source() const {
        return *source_;
    }

    // Flattened copies of blocks() for the inner loop.
    const std::vector<std::uint32_t> &block_sizes() const {
        return block_sizes_;
    }
    const std::vector<std::uint64_t> &flat_offsets() const {
        return flat_offsets_;
    }
    const std::vector<Complex> &flat_matrices() const {
        return flat_matrices_;
    }

   private:
    const LocalUnitary *source_;
    std::vector<std::uint32_t> block_sizes_;
    std::vector<std::uint64_t> flat_offsets_;
    std::vector<Complex> flat_matrices_;
    std::uint64_t mask_ = 0;
    std::vector<int> sorted_window_;
    std::vector<Block> blocks_;
    std::vector<std::pair<std::uint64_t, Complex>> phases_;
};

/// Circuit with every distinct gate compiled once.
class CompiledCircuit {
   public:
    explicit CompiledCircuit(const Circuit &c, double tol = kDefaultBitTol);

    int n() const {
        return n_;
    }
    /// Gates of step j (1-based), in application order.
    const std::vector<const CompiledGate *> &step(std::uint64_t j) const {
        return steps_[(j - 1) % steps_.size()];
    }

   private:
    int n_;
    std::vector<CompiledGate> gates_;
    std::vector<std::vector<const CompiledGate *>> steps_;
};

void apply_gate(Statevector &psi, const CompiledGate &g);
void apply_step(Statevector &psi, const CompiledCircuit &c, std::uint64_t j);

/// Applies steps 1..p.
void apply_circuit_steps(Statevector &psi, const CompiledCircuit &c, std::uint64_t p);
Statevector apply_circuit_steps(Statevector psi, const Circuit &c, std::uint64_t p);

namespace serial {

/// Reference: dense local matrix applied to every window block.
void apply_gate(Statevector &psi, const LocalUnitary &u);
void apply_circuit_steps(Statevector &psi, const Circuit &c, std::uint64_t p);

}  // namespace serial

enum class Pauli { kI, kX, kY, kZ };
void apply_pauli(Statevector &psi, int qubit, Pauli p);

struct NoiseSpec {
    double eps_over_3 = 0;
    std::uint64_t rng_seed = 0;

    void validate() const;
    bool noiseless() const {
        return eps_over_3 == 0;
    }
};

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from 53 random bits.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Draws the Pauli inserted on one qubit after a step.
Pauli draw_pauli(Rng &rng, double eps_over_3);

/// Evolves psi0 for p steps, inserting independent X, Y, Z errors (each with
/// probability eps/3) on every qubit after every step.
Statevector noisy_trajectory_state(const CompiledCircuit &c, BasisState psi0, std::uint64_t p, double eps_over_3,
                                   Rng &rng);

/// Samples one basis state from |amplitude|^2.
std::uint64_t sample_basis(const Statevector &psi, Rng &rng);

BasisState run_noisy_trajectory(const CompiledCircuit &c, BasisState psi0, std::uint64_t p, const NoiseSpec &noise,
                                Rng &rng);

/// Exact |<b|U^p|psi0>|^2 over every b with nonzero weight.
Distribution ideal_distribution(const CompiledCircuit &c, BasisState psi0, std::uint64_t p);
Distribution ideal_distribution(const Circuit &c, BasisState psi0, std::uint64_t p);

struct MeasurementRecord {
    int n = 0;
    std::uint64_t p = 0;
    std::uint64_t base_seed = 0;
    double eps_over_3 = 0;
    std::vector<std::uint64_t> shots;
};

/// M independent trajectories at depth p. Shot s uses the RNG seed
/// shot_seed(noise.rng_seed, p, s), so output is independent of the
/// worker count.
MeasurementRecord sample_measurements(const CompiledCircuit &c, BasisState psi0, std::uint64_t p, std::uint64_t shots,
                                      const NoiseSpec &noise);

namespace serial {

MeasurementRecord sample_measurements(const CompiledCircuit &c, BasisState psi0, std::uint64_t p,
                                      std::uint64_t shots, const NoiseSpec &noise);

}  // namespace serial

}  // namespace spskit

#endif
