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

#ifndef SPSKIT_PATHFIND_H
#define SPSKIT_PATHFIND_H

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "spskit/basis.h"
#include "spskit/editmap.h"

namespace spskit {

struct SearchResult {
    BasisState start;
    BasisState minimum;
    std::uint64_t depth = 0;           // greedy descent steps
    std::uint64_t nodes_expanded = 0;  // states dequeued by the local searches
    int mu = 0;
};

/// Memo of resolved searches, keyed by (state, mu, edit map fingerprint).
/// Only states on a greedy descent path are stored: a fresh search from any
/// of them follows the rest of the same path, so lookups are transparent.
/// Safe for concurrent lookup and insert.
class SearchCache {
   public:
    struct Entry {
        std::uint64_t minimum = 0;
        std::uint64_t remaining_depth = 0;
    };

    std::optional<Entry> lookup(std::uint64_t fingerprint, int mu, std::uint64_t code) const;
    void insert(std::uint64_t fingerprint, int mu, std::uint64_t code, Entry e);
    size_t size() const;
    void clear();

   private:
    struct Key {
        std::uint64_t fingerprint;
        std::uint64_t code;
        int mu;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash {
        size_t operator()(const Key &k) const;
    };
    static constexpr size_t kShards = 64;
    struct Shard {
        mutable std::mutex mutex;
        std::unordered_map<Key, Entry, KeyHash> map;
    };
    std::array<Shard, kShards> shards_;
};

/// Every state within `mu` edit-map applications of b (b included), sorted.
std::vector<BasisState> mu_ball(const EditMapSet &maps, BasisState b, int mu);

/// Greedy descent: b <- min(mu_ball(b)) until b is its own ball minimum.
SearchResult chi(const EditMapSet &maps, BasisState b0, int mu, SearchCache *cache = nullptr);

enum class Verdict { kAccept, kReject };

/// Accept iff chi(psi0) and chi(bf) reach the same state. Accept is always
/// correct; Reject can be wrong when a search stops at a false minimum.
Verdict verdict(const EditMapSet &maps, BasisState psi0, BasisState bf, int mu, SearchCache *cache = nullptr);

/// Post-selection predicate bound to one initial state. Thread-safe.
class PathVerifier {
   public:
    PathVerifier(const EditMapSet &maps, BasisState psi0, int mu);
    bool accepts(std::uint64_t code) const;
    int mu() const {
        return mu_;
    }

   private:
    const EditMapSet &maps_;
    int mu_;
    std::uint64_t target_;
    mutable SearchCache cache_;
};

struct SweepOptions {
    std::uint64_t sample = 0;  // 0 = exhaustive over all 2^n states
    std::uint64_t seed = 1;
};

struct FailureStats {
    int n = 0;
    int mu = 0;
    std::uint64_t failures = 0;
    std::uint64_t total = 0;
    bool sampled = false;
    std::uint64_t seed = 0;
    double rate() const {
        return total ? static_cast<double>(failures) / static_cast<double>(total) : 0.0;
    }
    /// 95% Wilson score interval.
    std::pair<double, double> confidence_interval() const;
};

/// Fraction of states whose search does not reach the true subspace minimum.
FailureStats failure_rate(const EditMapSet &maps, int mu, const SweepOptions &opts = {});

struct DepthStats {
    int n = 0;
    int mu = 0;
    std::uint64_t max_depth = 0;
    BasisState argmax;  // smallest state attaining max_depth
    std::uint64_t total = 0;
};

/// Longest greedy descent over all (or sampled) states.
DepthStats max_depth(const EditMapSet &maps, int mu, const SweepOptions &opts = {});

namespace serial {

/// Single-threaded, cache-free reference versions of the sweeps.
FailureStats failure_rate(const EditMapSet &maps, int mu, const SweepOptions &opts = {});
DepthStats max_depth(const EditMapSet &maps, int mu, const SweepOptions &opts = {});

}  // namespace serial

}  // namespace spskit

#endif
