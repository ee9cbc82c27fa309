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

#include "spskit/sps.h"

#include <algorithm>
#include <atomic>
#include <deque>
#include <numeric>

#include "spskit/parallel.h"

namespace spskit {

Subspace::Subspace(int n, BasisState seed, std::vector<std::uint64_t> members)
    : n_(n), seed_(seed), members_(std::move(members)) {
    index_.reserve(members_.size());
    index_.insert(members_.begin(), members_.end());
    if (!index_.count(seed.code)) {
        throw ValidationError("subspace does not contain its seed");
    }
    min_ = *std::min_element(members_.begin(), members_.end());
}

std::vector<std::uint64_t> Subspace::sorted_members() const {
    std::vector<std::uint64_t> out = members_;
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_state(const EditMapSet &maps, BasisState b) {
    if (b.n != maps.n()) {
        throw ValidationError("state has " + std::to_string(b.n) + " qubits, edit maps expect " +
                              std::to_string(maps.n()));
    }
    if (b.code & ~low_mask(b.n)) {
        throw ValidationError("basis code out of range");
    }
}

void check_partition_size(const EditMapSet &maps) {
    if (maps.n() > kMaxPartitionQubits) {
        throw ComputeError("Hilbert space sweep over " + std::to_string(maps.n()) + " qubits exceeds the " +
                           std::to_string(kMaxPartitionQubits) + "-qubit limit");
    }
}

}  // namespace

Subspace enumerate_sps(const EditMapSet &maps, std::span<const BasisState> seeds, size_t cap) {
    if (seeds.empty()) {
        throw ValidationError("no seed states given");
    }
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> members;
    std::deque<std::uint64_t> queue;
    auto visit = [&](std::uint64_t c) {
        if (seen.insert(c).second) {
            if (members.size() >= cap) {
                throw SubspaceTooLarge("subspace exceeds the cap of " + std::to_string(cap) + " states");
            }
            members.push_back(c);
            queue.push_back(c);
        }
    };
    for (const auto &s : seeds) {
        check_state(maps, s);
        visit(s.code);
    }
    while (!queue.empty()) {
        std::uint64_t b = queue.front();
        queue.pop_front();
        maps.for_each_neighbor(b, visit);
    }
    return Subspace(maps.n(), seeds[0], std::move(members));
}

Subspace enumerate_sps(const EditMapSet &maps, BasisState seed, size_t cap) {
    return enumerate_sps(maps, std::span<const BasisState>(&seed, 1), cap);
}

namespace {

std::uint32_t find_root(std::vector<std::uint32_t> &parent, std::uint32_t x) {
    while (true) {
        std::uint32_t p = std::atomic_ref<std::uint32_t>(parent[x]).load(std::memory_order_relaxed);
        if (p == x) {
            return x;
        }
        std::uint32_t gp = std::atomic_ref<std::uint32_t>(parent[p]).load(std::memory_order_relaxed);
        // Path halving. Parents only ever point to smaller codes, so any
        // ancestor is a valid replacement.
        if (gp != p) {
            std::atomic_ref<std::uint32_t>(parent[x]).compare_exchange_weak(p, gp, std::memory_order_relaxed);
        }
        x = gp;
    }
}

void unite(std::vector<std::uint32_t> &parent, std::uint32_t a, std::uint32_t b) {
    while (true) {
        a = find_root(parent, a);
        b = find_root(parent, b);
        if (a == b) {
            return;
        }
        if (a < b) {
            std::swap(a, b);
        }
        // Link the larger root under the smaller one so roots are minima.
        std::uint32_t expected = a;
        if (std::atomic_ref<std::uint32_t>(parent[a]).compare_exchange_strong(expected, b,
                                                                                std::memory_order_relaxed)) {
            return;
        }
    }
}

}  // namespace

std::vector<std::uint32_t> partition_labels(const EditMapSet &maps) {
    check_partition_size(maps);
    const std::int64_t d = std::int64_t{1} << maps.n();
    std::vector<std::uint32_t> parent(static_cast<size_t>(d));
    std::iota(parent.begin(), parent.end(), 0u);

#pragma omp parallel for schedule(dynamic, 4096) num_threads(num_threads())
    for (std::int64_t c = 0; c < d; c++) {
        auto code = static_cast<std::uint32_t>(c);
        maps.for_each_neighbor(code, [&](std::uint64_t other) {
            if (other < code) {
                unite(parent, code, static_cast<std::uint32_t>(other));
            }
        });
    }

#pragma omp parallel for schedule(static) num_threads(num_threads())
    for (std::int64_t c = 0; c < d; c++) {
        parent[c] = find_root(parent, static_cast<std::uint32_t>(c));
    }
    return parent;
}

std::vector<SubspaceSize> sizes_from_labels(std::span<const std::uint32_t> labels) {
    std::vector<std::uint64_t> counts(labels.size(), 0);
    for (auto l : labels) {
        counts[l]++;
    }
    std::vector<SubspaceSize> out;
    for (size_t c = 0; c < counts.size(); c++) {
        if (counts[c]) {
            out.push_back({c, counts[c]});
        }
    }
    return out;
}

std::vector<SubspaceSize> partition_sizes(const EditMapSet &maps) {
    return sizes_from_labels(partition_labels(maps));
}

std::vector<Subspace> subspaces_from_labels(std::span<const std::uint32_t> labels, int n) {
    std::vector<std::uint32_t> slot(labels.size(), UINT32_MAX);
    std::vector<std::vector<std::uint64_t>> groups;
    for (size_t c = 0; c < labels.size(); c++) {
        auto l = labels[c];
        if (slot[l] == UINT32_MAX) {
            slot[l] = static_cast<std::uint32_t>(groups.size());
            groups.emplace_back();
        }
        groups[slot[l]].push_back(c);
    }
    std::vector<Subspace> out;
    out.reserve(groups.size());
    for (auto &g : groups) {
        BasisState seed{g.front(), n};
        out.emplace_back(n, seed, std::move(g));
    }
    return out;
}

std::vector<Subspace> partition_hilbert(const EditMapSet &maps) {
    return subspaces_from_labels(partition_labels(maps), maps.n());
}

namespace serial {

std::vector<std::uint32_t> partition_labels(const EditMapSet &maps) {
    check_partition_size(maps);
    const std::uint64_t d = std::uint64_t{1} << maps.n();
    std::vector<std::uint32_t> label(d);
    std::vector<std::uint8_t> visited(d, 0);
    std::vector<std::uint32_t> queue;
    for (std::uint64_t seed = 0; seed < d; seed++) {
        if (visited[seed]) {
            continue;
        }
        queue.clear();
        queue.push_back(static_cast<std::uint32_t>(seed));
        visited[seed] = 1;
        for (size_t head = 0; head < queue.size(); head++) {
            std::uint32_t b = queue[head];
            label[b] = static_cast<std::uint32_t>(seed);
            maps.for_each_neighbor(b, [&](std::uint64_t c) {
                if (!visited[c]) {
                    visited[c] = 1;
                    queue.push_back(static_cast<std::uint32_t>(c));
                }
            });
        }
    }
    return label;
}

std::vector<Subspace> partition_hilbert(const EditMapSet &maps) {
    check_partition_size(maps);
    const std::uint64_t d = std::uint64_t{1} << maps.n();
    std::vector<std::uint8_t> visited(d, 0);
    std::vector<Subspace> out;
    for (std::uint64_t seed = 0; seed < d; seed++) {
        if (visited[seed]) {
            continue;
        }
        Subspace g = enumerate_sps(maps, BasisState{seed, maps.n()});
        for (auto c : g.members()) {
            visited[c] = 1;
        }
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace serial

}  // namespace spskit
