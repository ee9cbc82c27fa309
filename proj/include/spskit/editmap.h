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

#ifndef SPSKIT_EDITMAP_H
#define SPSKIT_EDITMAP_H

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spskit/basis.h"

namespace spskit {

using Complex = std::complex<double>;

constexpr double kDefaultBitTol = 1e-12;
constexpr double kDefaultUnitarityTol = 1e-9;

/// Dense k-qubit unitary. Entry (r, c) is <r|U|c> with r and c local patterns
/// in the window's bit order.
struct LocalUnitary {
    std::string label;
    LocalWindow window;
    std::vector<Complex> entries;  // row-major, dim x dim

    LocalUnitary() = default;
    LocalUnitary(std::string label, LocalWindow window, std::vector<Complex> entries);

    size_t dim() const {
        return size_t{1} << window.size();
    }
    const Complex &at(size_t r, size_t c) const {
        return entries[r * dim() + c];
    }
    /// max |(U^dagger U - I)_{rc}|
    double unitarity_residual() const;
};

class BoolMatrix {
   public:
    BoolMatrix() = default;
    explicit BoolMatrix(size_t dim) : dim_(dim), bits_(dim * dim, 0) {
    }

    size_t dim() const {
        return dim_;
    }
    bool operator()(size_t r, size_t c) const {
        return bits_[r * dim_ + c] != 0;
    }
    void set(size_t r, size_t c, bool v = true) {
        bits_[r * dim_ + c] = v ? 1 : 0;
    }
    /// bit[A * A]
    BoolMatrix squared() const;
    BoolMatrix operator|(const BoolMatrix &other) const;

    friend bool operator==(const BoolMatrix &, const BoolMatrix &) = default;

   private:
    size_t dim_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Symmetrized nonzero pattern of U: A[r][c] iff |U[r][c]| > tol or
/// |U[c][r]| > tol. The diagonal is always set.
BoolMatrix bitize(const LocalUnitary &u, double tol = kDefaultBitTol);

/// Number of entries whose magnitude is within a factor of 10 of `tol`.
/// A nonzero count means the nonzero pattern is fragile at this parameter.
int near_threshold_entries(const LocalUnitary &u, double tol = kDefaultBitTol);

/// Fixed point of A <- bit[A^2].
BoolMatrix boolean_closure(BoolMatrix a);

/// k-local string edit map. Local patterns are partitioned into equivalence
/// classes; a pattern maps to every member of its class (itself included).
class EditMap {
   public:
    EditMap() = default;
    EditMap(LocalWindow window, std::vector<std::vector<std::uint32_t>> classes, std::string label = {});

    const LocalWindow &window() const {
        return window_;
    }
    const std::string &label() const {
        return label_;
    }
    /// Classes sorted by smallest member; members sorted ascending.
    const std::vector<std::vector<std::uint32_t>> &classes() const {
        return classes_;
    }
    std::uint32_t class_of(std::uint32_t pattern) const {
        return class_of_[pattern];
    }
    /// Members of the class of `pattern`.
    const std::vector<std::uint32_t> &image(std::uint32_t pattern) const {
        return classes_[class_of_[pattern]];
    }

    /// Calls f(code') for every image of `code` other than `code` itself.
    template <typename F>
    void for_each_image(std::uint64_t code, F &&f) const {
        std::uint32_t pattern = extract_bits(code, window_.indices());
        std::uint32_t lo = flip_offsets_[pattern];
        std::uint32_t hi = flip_offsets_[pattern + 1];
        for (std::uint32_t j = lo; j < hi; j++) {
            f(code ^ flips_[j]);
        }
    }

    /// Sorted image set of b, always containing b.
    std::vector<BasisState> apply(BasisState b) const;

    friend bool operator==(const EditMap &a, const EditMap &b) {
        return a.window_ == b.window_ && a.classes_ == b.classes_;
    }

   private:
    LocalWindow window_;
    std::string label_;
    std::vector<std::vector<std::uint32_t>> classes_;
    std::vector<std::uint32_t> class_of_;
    std::vector<std::uint32_t> flip_offsets_;
    std::vector<std::uint64_t> flips_;
};

EditMap edit_map_from_closure(const LocalWindow &window, const BoolMatrix &closed, std::string label = {});

/// Bitize, close, and read off the classes. Throws ValidationError if U is
/// not unitary within `unitarity_tol`.
EditMap build_edit_map(const LocalUnitary &u, double tol = kDefaultBitTol,
                       double unitarity_tol = kDefaultUnitarityTol);

/// Edit map of the union of nonzero patterns of several parameterizations of
/// the same gate. All unitaries must share a window.
EditMap build_edit_map_union(std::span<const LocalUnitary> us, double tol = kDefaultBitTol,
                             double unitarity_tol = kDefaultUnitarityTol);

/// The collection of edit maps of every local operator of a circuit.
class EditMapSet {
   public:
    EditMapSet() = default;
    EditMapSet(int n, std::vector<EditMap> maps);

    int n() const {
        return n_;
    }
    const std::vector<EditMap> &maps() const {
        return maps_;
    }
    size_t size() const {
        return maps_.size();
    }
    /// Hash of windows and classes; used to key search caches.
    std::uint64_t fingerprint() const {
        return fingerprint_;
    }

    /// Calls f(code') for every single-map neighbor of `code` (may repeat).
    template <typename F>
    void for_each_neighbor(std::uint64_t code, F &&f) const {
        for (const auto &m : maps_) {
            m.for_each_image(code, f);
        }
    }

    /// Sorted, deduplicated union of all single-map images; contains b.
    std::vector<BasisState> apply(BasisState b) const;

    /// Throws ValidationError unless every qubit in `touched` lies in a window.
    void check_covers(std::uint64_t touched) const;

   private:
    int n_ = 0;
    std::vector<EditMap> maps_;
    std::uint64_t fingerprint_ = 0;
};

}  // namespace spskit

#endif
