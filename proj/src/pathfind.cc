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

#include "spskit/pathfind.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "spskit/parallel.h"
#include "spskit/sps.h"

namespace spskit {

size_t SearchCache::KeyHash::operator()(const Key &k) const {
    return static_cast<size_t>(splitmix64(k.fingerprint ^ splitmix64(k.code ^ (std::uint64_t(k.mu) << 58))));
}

std::optional<SearchCache::Entry> SearchCache::lookup(std::uint64_t fingerprint, int mu, std::uint64_t code) const {
    Key key{fingerprint, code, mu};
    const Shard &s = shards_[KeyHash{}(key) % kShards];
    std::lock_guard lock(s.mutex);
    auto it = s.map.find(key);
    if (it == s.map.end()) {
        return std::nullopt;
    }
    return it->second;
}

void SearchCache::insert(std::uint64_t fingerprint, int mu, std::uint64_t code, Entry e) {
    Key key{fingerprint, code, mu};
    Shard &s = shards_[KeyHash{}(key) % kShards];
    std::lock_guard lock(s.mutex);
    s.map[key] = e;
}

size_t SearchCache::size() const {
    size_t total = 0;
    for (const auto &s : shards_) {
        std::lock_guard lock(s.mutex);
        total += s.map.size();
    }
    return total;
}

void SearchCache::clear() {
    for (auto &s : shards_) {
        std::lock_guard lock(s.mutex);
        s.map.clear();
    }
}

namespace {

constexpr int kMaxStampedQubits = 22;

/// Visited set for the local searches. Small systems use a generation-stamped
/// array indexed by code; larger ones fall back to a hash set.
class BallScratch {
   public:
    void reset(int n) {
        if (n <= kMaxStampedQubits) {
            size_t d = size_t{1} << n;
            if (stamps_.size() != d) {
                stamps_.assign(d, 0);
                generation_ = 0;
            }
            if (++generation_ == 0) {
                std::fill(stamps_.begin(), stamps_.end(), 0);
                generation_ = 1;
            }
            stamped_ = true;
        } else {
            set_.clear();
            stamped_ = false;
        }
        queue_.clear();
    }

    bool insert(std::uint64_t code) {
        if (stamped_) {
            auto &s = stamps_[code];
            if (s == generation_) {
                return false;
            }
            s = generation_;
            return true;
        }
        return set_.insert(code).second;
    }

    std::vector<std::pair<std::uint64_t, int>> &queue() {
        return queue_;
    }

   private:
    bool stamped_ = true;
    std::vector<std::uint32_t> stamps_;
    std::uint32_t generation_ = 0;
    std::unordered_set<std::uint64_t> set_;
    std::vector<std::pair<std::uint64_t, int>> queue_;
};

BallScratch &local_scratch() {
    thread_local BallScratch scratch;
    return scratch;
}

/// Smallest code within `mu` steps of `center`, via a depth-limited BFS.
/// If `members` is given, every visited code is appended to it.
std::uint64_t ball_minimum(const EditMapSet &maps, std::uint64_t center, int mu, std::uint64_t &expanded,
                           std::vector<std::uint64_t> *members = nullptr) {
    BallScratch &scratch = local_scratch();
    scratch.reset(maps.n());
    auto &queue = scratch.queue();
    scratch.insert(center);
    queue.push_back({center, 0});
    std::uint64_t best = center;
    if (members) {
        members->push_back(center);
    }
    for (size_t head = 0; head < queue.size(); head++) {
        auto [b, eta] = queue[head];
        expanded++;
        if (eta == mu) {
            // FIFO order: everything left in the queue is at depth mu too.
            break;
        }
        maps.for_each_neighbor(b, [&](std::uint64_t c) {
            if (scratch.insert(c)) {
                queue.push_back({c, eta + 1});
                best = std::min(best, c);
                if (members) {
                    members->push_back(c);
                }
            }
        });
    }
    return best;
}

void check_search_args(const EditMapSet &maps, BasisState b, int mu) {
    if (mu < 1) {
        throw ValidationError("search depth mu must be >= 1, got " + std::to_string(mu));
    }
    if (b.n != maps.n()) {
        throw ValidationError("state has " + std::to_string(b.n) + " qubits, edit maps expect " +
                              std::to_string(maps.n()));
    }
    if (b.code & ~low_mask(b.n)) {
        throw ValidationError("basis code out of range");
    }
}

}  // namespace

std::vector<BasisState> mu_ball(const EditMapSet &maps, BasisState b, int mu) {
    check_search_args(maps, b, mu);
    std::vector<std::uint64_t> members;
    std::uint64_t expanded = 0;
    ball_minimum(maps, b.code, mu, expanded, &members);
    std::vector<BasisState> out;
    out.reserve(members.size());
    for (auto c : members) {
        out.push_back({c, b.n});
    }
    std::sort(out.begin(), out.end());
    return out;
}

SearchResult chi(const EditMapSet &maps, BasisState b0, int mu, SearchCache *cache) {
    check_search_args(maps, b0, mu);
    SearchResult r;
    r.start = b0;
    r.mu = mu;
    const std::uint64_t fp = maps.fingerprint();

    std::vector<std::uint64_t> path{b0.code};
    std::uint64_t current = b0.code;
    std::uint64_t minimum = 0;
    std::uint64_t depth = 0;
    bool from_cache = false;
    while (true) {
        if (cache) {
            if (auto hit = cache->lookup(fp, mu, current)) {
                minimum = hit->minimum;
                depth += hit->remaining_depth;
                from_cache = true;
                break;
            }
        }
        std::uint64_t next = ball_minimum(maps, current, mu, r.nodes_expanded);
        if (next == current) {
            minimum = current;
            break;
        }
        current = next;
        depth++;
        path.push_back(current);
    }
    if (cache) {
        // path[j] is j steps into the descent; the last entry is already
        // cached when the loop ended on a hit.
        size_t stored = from_cache ? path.size() - 1 : path.size();
        for (size_t j = 0; j < stored; j++) {
            cache->insert(fp, mu, path[j], {minimum, depth - j});
        }
    }
    r.minimum = {minimum, b0.n};
    r.depth = depth;
    return r;
}

Verdict verdict(const EditMapSet &maps, BasisState psi0, BasisState bf, int mu, SearchCache *cache) {
    if (psi0.n != bf.n) {
        throw ValidationError("initial and measured states differ in qubit count");
    }
    if (psi0 == bf) {
        return Verdict::kAccept;
    }
    auto a = chi(maps, psi0, mu, cache);
    auto b = chi(maps, bf, mu, cache);
    return a.minimum == b.minimum ? Verdict::kAccept : Verdict::kReject;
}

PathVerifier::PathVerifier(const EditMapSet &maps, BasisState psi0, int mu) : maps_(maps), mu_(mu) {
    target_ = chi(maps_, psi0, mu_, &cache_).minimum.code;
}

bool PathVerifier::accepts(std::uint64_t code) const {
    return chi(maps_, BasisState{code, maps_.n()}, mu_, &cache_).minimum.code == target_;
}

std::pair<double, double> FailureStats::confidence_interval() const {
    if (total == 0) {
        return {0.0, 1.0};
    }
    const double z = 1.96;
    double nn = static_cast<double>(total);
    double p = rate();
    double denom = 1 + z * z / nn;
    double center = (p + z * z / (2 * nn)) / denom;
    double half = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct SweepPlan {
    std::vector<std::uint64_t> states;  // empty = exhaustive
    std::uint64_t total = 0;
};

SweepPlan plan_sweep(const EditMapSet &maps, int mu, const SweepOptions &opts) {
    if (mu < 1) {
        throw ValidationError("search depth mu must be >= 1, got " + std::to_string(mu));
    }
    SweepPlan plan;
    if (opts.sample == 0) {
        if (maps.n() > kMaxPartitionQubits) {
            throw ValidationError("exhaustive sweep over " + std::to_string(maps.n()) +
                                  " qubits is not feasible; pass a sample size");
        }
        plan.total = std::uint64_t{1} << maps.n();
        return plan;
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, low_mask(maps.n()));
    plan.states.resize(opts.sample);
    for (auto &s : plan.states) {
        s = pick(rng);
    }
    plan.total = opts.sample;
    return plan;
}

/// True subspace minimum for each state in the plan, or all labels when
/// exhaustive.
std::vector<std::uint64_t> true_minima(const EditMapSet &maps, const SweepPlan &plan, bool parallel) {
    std::vector<std::uint64_t> out;
    if (plan.states.empty()) {
        auto labels = parallel ? partition_labels(maps) : serial::partition_labels(maps);
        out.assign(labels.begin(), labels.end());
        return out;
    }
    out.resize(plan.states.size());
    for (size_t j = 0; j < plan.states.size(); j++) {
        out[j] = enumerate_sps(maps, BasisState{plan.states[j], maps.n()}).min_element().code;
    }
    return out;
}

std::uint64_t state_at(const SweepPlan &plan, std::uint64_t j) {
    return plan.states.empty() ? j : plan.states[j];
}

}  // namespace

FailureStats failure_rate(const EditMapSet &maps, int mu, const SweepOptions &opts) {
    SweepPlan plan = plan_sweep(maps, mu, opts);
    auto minima = true_minima(maps, plan, true);
    SearchCache cache;
    std::uint64_t failures = 0;
    const auto total = static_cast<std::int64_t>(plan.total);
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : failures) num_threads(num_threads())
    for (std::int64_t j = 0; j < total; j++) {
        auto code = state_at(plan, static_cast<std::uint64_t>(j));
        auto r = chi(maps, BasisState{code, maps.n()}, mu, &cache);
        if (r.minimum.code != minima[j]) {
            failures++;
        }
    }
    return FailureStats{maps.n(), mu, failures, plan.total, opts.sample != 0, opts.seed};
}

DepthStats max_depth(const EditMapSet &maps, int mu, const SweepOptions &opts) {
    SweepPlan plan = plan_sweep(maps, mu, opts);
    SearchCache cache;
    const auto total = static_cast<std::int64_t>(plan.total);
    std::uint64_t best_depth = 0;
    std::uint64_t best_state = UINT64_MAX;
#pragma omp parallel num_threads(num_threads())
    {
        std::uint64_t local_depth = 0;
        std::uint64_t local_state = UINT64_MAX;
#pragma omp for schedule(dynamic, 256) nowait
        for (std::int64_t j = 0; j < total; j++) {
            auto code = state_at(plan, static_cast<std::uint64_t>(j));
            auto r = chi(maps, BasisState{code, maps.n()}, mu, &cache);
            if (r.depth > local_depth || (r.depth == local_depth && code < local_state)) {
                local_depth = r.depth;
                local_state = code;
            }
        }
#pragma omp critical
        {
            if (local_state != UINT64_MAX &&
                (local_depth > best_depth || (local_depth == best_depth && local_state < best_state))) {
                best_depth = local_depth;
                best_state = local_state;
            }
        }
    }
    return DepthStats{maps.n(), mu, best_depth, BasisState{best_state, maps.n()}, plan.total};
}

namespace serial {

FailureStats failure_rate(const EditMapSet &maps, int mu, const SweepOptions &opts) {
    SweepPlan plan = plan_sweep(maps, mu, opts);
    auto minima = true_minima(maps, plan, false);
    std::uint64_t failures = 0;
    for (std::uint64_t j = 0; j < plan.total; j++) {
        auto r = chi(maps, BasisState{state_at(plan, j), maps.n()}, mu);
        if (r.minimum.code != minima[j]) {
            failures++;
        }
    }
    return FailureStats{maps.n(), mu, failures, plan.total, opts.sample != 0, opts.seed};
}

DepthStats max_depth(const EditMapSet &maps, int mu, const SweepOptions &opts) {
    SweepPlan plan = plan_sweep(maps, mu, opts);
    DepthStats out{maps.n(), mu, 0, BasisState{UINT64_MAX, maps.n()}, plan.total};
    for (std::uint64_t j = 0; j < plan.total; j++) {
        auto code = state_at(plan, j);
        auto r = chi(maps, BasisState{code, maps.n()}, mu);
        if (r.depth > out.max_depth || (r.depth == out.max_depth && code < out.argmax.code)) {
            out.max_depth = r.depth;
            out.argmax = {code, maps.n()};
        }
    }
    return out;
}

}  // namespace serial

}  // namespace spskit
