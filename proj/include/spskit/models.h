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

#ifndef SPSKIT_MODELS_H
#define SPSKIT_MODELS_H

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "spskit/basis.h"
#include "spskit/editmap.h"

namespace spskit {

using GatePtr = std::shared_ptr<const LocalUnitary>;

/// Gates in one layer act on windows whose overlaps commute.
using Layer = std::vector<GatePtr>;

/// Layered k-local circuit. One discrete step is a list of layers applied in
/// order; circuits whose steps alternate (F4) carry several step variants and
/// step j (1-based) uses variant (j - 1) mod count.
class Circuit {
   public:
    Circuit() = default;
    Circuit(int n, std::vector<std::vector<Layer>> step_variants);

    int n() const {
        return n_;
    }
    const std::vector<std::vector<Layer>> &step_variants() const {
        return variants_;
    }
    const std::vector<Layer> &step(std::uint64_t j) const {
        return variants_[(j - 1) % variants_.size()];
    }
    /// Each distinct gate object once, in first-use order.
    std::vector<GatePtr> distinct_gates() const;
    std::uint64_t touched_mask() const;

   private:
    int n_ = 0;
    std::vector<std::vector<Layer>> variants_;
};

struct Model {
    std::string name;
    int n = 0;
    double theta = 0;
    Circuit circuit;
    EditMapSet maps;
    BasisState default_init;
    std::vector<std::string> warnings;
    bool degenerate_parameter = false;
};

constexpr double kDefaultTheta = 0.1;

// Local gates. Windows list qubits in ascending order.
LocalUnitary iswap_gate(double theta, LocalWindow window);
LocalUnitary zz_gate(double theta, LocalWindow window);
/// iSWAP(theta) * ZZ(theta): ZZ acts first.
LocalUnitary heisenberg_gate(double theta, LocalWindow window);
/// Hadamard on window[center] iff exactly `threshold` of the other window
/// qubits are |1>, identity otherwise. Missing neighbors of boundary windows
/// behave as frozen |0> qubits.
LocalUnitary goldilocks_gate(const LocalWindow &window, int center, int threshold, std::string label);

/// Sub-block of `u` with the local positions in `frozen` fixed to |0>.
/// Throws ValidationError if the block is not closed under u.
LocalUnitary restrict_frozen_zero(const LocalUnitary &u, const std::vector<int> &frozen, LocalWindow reduced_window);

/// Nearest-neighbor iSWAP(theta) chain applied right to left; one gate per
/// layer. n = 4 is the textbook Trotterized hopping example.
Model build_hopping(int n, double theta = kDefaultTheta, double tol = kDefaultBitTol);
Model build_heisenberg(int n, double theta = kDefaultTheta, double tol = kDefaultBitTol);
Model build_t6(int n, double tol = kDefaultBitTol);
Model build_f4(int n, double tol = kDefaultBitTol);

/// name is one of hop, heis, t6, f4.
Model build_model(std::string_view name, int n, double theta = kDefaultTheta, double tol = kDefaultBitTol);

/// Wraps an arbitrary circuit; edit maps come from its distinct gates.
Model model_from_circuit(std::string name, Circuit circuit, double tol = kDefaultBitTol);

/// F4 initial states whose subspaces have false minima at large mu (n = 15),
/// deduplicated, in listed order.
std::vector<BasisState> rocky_initial_states();

// Hand-written local edit-map tables, as ket-string classes.
std::vector<std::vector<std::string>> swap_table();
std::vector<std::vector<std::string>> t6_table();
std::vector<std::vector<std::string>> f4_table();

/// Converts ket-string classes into pattern classes (singletons fill gaps).
std::vector<std::vector<std::uint32_t>> table_classes(const std::vector<std::vector<std::string>> &table, int k);

/// T6 conserved quantity: number of adjacent unequal pairs with |0> boundary
/// qubits on both ends.
int domain_walls(BasisState b);

}  // namespace spskit

#endif
