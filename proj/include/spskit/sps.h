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

#ifndef SPSKIT_SPS_H
#define SPSKIT_SPS_H

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "spskit/basis.h"
#include "spskit/editmap.h"

namespace spskit {

constexpr size_t kDefaultSubspaceCap = size_t{1} << 28;

/// Largest qubit count accepted by full Hilbert-space sweeps.
constexpr int kMaxPartitionQubits = 30;

struct SubspaceTooLarge : ComputeError {
    using ComputeError::ComputeError;
};

/// An enumerated symmetry-protected subspace: a set of basis states closed
/// under an edit map set.
class Subspace {
   public:
    Subspace() = default;
    /// `members` in discovery order; must contain `seed`.
    Subspace(int n, BasisState seed, std::vector<std::uint64_t> members);

    int n() const {
        return n_;
    }
    BasisState seed() const {
        return seed_;
    }
    BasisState min_element() const {
        return {min_, n_};
    }
    size_t size() const {
        return members_.size();
    }
    /// Discovery (BFS) order.
    const std::vector<std::uint64_t> &members() const {
        return members_;
    }
    std::vector<std::uint64_t> sorted_members() const;

    bool contains(BasisState b) const {
        return b.n == n_ && index_.count(b.code) != 0;
    }
    bool contains_code(std::uint64_t code) const {
        return index_.count(code) != 0;
    }

   private:
    int n_ = 0;
    BasisState seed_;
    std::uint64_t min_ = 0;
    std::vector<std::uint64_t> members_;
    std::unordered_set<std::uint64_t> index_;
};

inline bool contains(const Subspace &g, BasisState b) {
    return g.contains(b);
}

/// Breadth-first closure of `seed` under the edit maps.
/// Throws SubspaceTooLarge once more than `cap` members are found.
Subspace enumerate_sps(const EditMapSet &maps, BasisState seed, size_t cap = kDefaultSubspaceCap);

/// Union of the subspaces of several seeds (a superposition initial state).
/// The recorded seed is the first entry.
Subspace enumerate_sps(const EditMapSet &maps, std::span<const BasisState> seeds, size_t cap = kDefaultSubspaceCap);

/// label[code] = smallest code in the subspace of `code`, for every code in
/// [0, 2^n). OpenMP union-find over all edit-map edges.
std::vector<std::uint32_t> partition_labels(const EditMapSet &maps);

struct SubspaceSize {
    std::uint64_t seed = 0;  // smallest member
    std::uint64_t size = 0;
};

/// Subspace sizes in ascending order of their smallest member.
std::vector<SubspaceSize> partition_sizes(const EditMapSet &maps);
std::vector<SubspaceSize> sizes_from_labels(std::span<const std::uint32_t> labels);

/// Disjoint subspaces covering all 2^n states, ordered by smallest member.
std::vector<Subspace> partition_hilbert(const EditMapSet &maps);
std::vector<Subspace> subspaces_from_labels(std::span<const std::uint32_t> labels, int n);

namespace serial {

/// Reference sweep: ascending codes, BFS from every unvisited code.
std::vector<std::uint32_t> partition_labels(const EditMapSet &maps);
std::vector<Subspace> partition_hilbert(const EditMapSet &maps);

}  // namespace serial

}  // namespace spskit

#endif
