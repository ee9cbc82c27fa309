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

#ifndef SPSKIT_DISTRIBUTION_H
#define SPSKIT_DISTRIBUTION_H

#include <cstdint>
#include <map>
#include <span>

namespace spskit {

/// Sparse probability distribution over n-qubit basis codes.
struct Distribution {
    int n = 0;
    std::map<std::uint64_t, double> weights;

    double at(std::uint64_t code) const {
        auto it = weights.find(code);
        return it == weights.end() ? 0.0 : it->second;
    }
    double total() const;
    size_t support_size() const {
        return weights.size();
    }
    /// Rescales to unit sum; no-op on an empty distribution.
    void normalize();

    /// Empirical distribution of a list of measured codes.
    static Distribution from_shots(int n, std::span<const std::uint64_t> shots);
};

}  // namespace spskit

#endif
