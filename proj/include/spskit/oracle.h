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

#ifndef SPSKIT_ORACLE_H
#define SPSKIT_ORACLE_H

#include <cstdint>
#include <vector>

#include "spskit/editmap.h"
#include "spskit/models.h"
#include "spskit/sps.h"

namespace spskit {

constexpr int kDefaultOracleCap = 12;

/// Dense 2^n x 2^n complex matrix, row-major. Only for small-n checks.
class DenseMatrix {
   public:
    DenseMatrix() = default;
    explicit DenseMatrix(int n);
    static DenseMatrix identity(int n);

    int n() const {
        return n_;
    }
    size_t dim() const {
        return dim_;
    }
    Complex &operator()(size_t r, size_t c) {
        return data_[r * dim_ + c];
    }
    const Complex &operator()(size_t r, size_t c) const {
        return data_[r * dim_ + c];
    }

    DenseMatrix operator*(const DenseMatrix &o) const;
    std::vector<Complex> apply(const std::vector<Complex> &v) const;
    /// max |(U^dag U - I)_rc|
    double unitarity_residual() const;
    /// Left-multiplies by the local gate u embedded on its window.
    void left_apply(const LocalUnitary &u);

   private:
    int n_ = 0;
    size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Full unitary of step j (1-based) of the circuit.
DenseMatrix compose_step(const Circuit &c, std::uint64_t j = 1, int cap = kDefaultOracleCap);

/// Component labels (smallest member) of the symmetrized bitized graph of
/// the union of the given matrices.
std::vector<std::uint32_t> oracle_labels(const std::vector<DenseMatrix> &us, double tol = kDefaultBitTol);

/// Components, ordered by smallest member, members ascending.
std::vector<Subspace> oracle_partition(const DenseMatrix &u, double tol = kDefaultBitTol);
std::vector<Subspace> oracle_partition(const std::vector<DenseMatrix> &us, double tol = kDefaultBitTol);

/// One matrix per step variant.
std::vector<DenseMatrix> compose_step_variants(const Circuit &c, int cap = kDefaultOracleCap);

/// max |(P U - U P)_rc| for the projector onto `members`.
double verify_projector_commutation(const DenseMatrix &u, const std::vector<std::uint64_t> &members);

struct Theorem1Report {
    int trials = 0;
    double max_violation = 0;  // largest off-subspace amplitude
    BasisState worst_init;
    std::uint64_t worst_p = 0;
};

/// Random (psi0, p <= max_p) pairs; measures amplitudes outside the
/// enumerated subspace of psi0 after p exact steps.
Theorem1Report verify_theorem1(const Model &m, int trials, std::uint64_t seed, std::uint64_t max_p = 8,
                               int cap = 10);

/// max |<b|U^p|g>| over g, b in different components and p in [1, max_p].
double verify_lemma1(const Circuit &c, const std::vector<std::uint32_t> &labels, std::uint64_t max_p = 8,
                     int cap = kDefaultOracleCap);

struct OracleReport {
    int n = 0;
    bool partition_matches = false;
    size_t components = 0;
    double theorem1_max = 0;
    double lemma1_max = 0;
    double component_residual_max = 0;
    double union_residual_max = 0;
    double split_residual = 0;  // negative control; 0 if no splittable component
    double unitarity_residual = 0;

    bool passed(double tol = 1e-10) const {
        return partition_matches && theorem1_max < tol && lemma1_max < tol && component_residual_max < tol &&
               union_residual_max < tol && unitarity_residual < 1e-9 && (split_residual == 0 || split_residual > 1e-3);
    }
};

/// Every oracle check for one model.
OracleReport verify_model(const Model &m, int trials = 20, std::uint64_t seed = 1, int cap = 10);

}  // namespace spskit

#endif
