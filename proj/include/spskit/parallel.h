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

#ifndef SPSKIT_PARALLEL_H
#define SPSKIT_PARALLEL_H

#include <cstdint>

namespace spskit {

/// Worker count used by the OpenMP kernels. Defaults to the SPSKIT_THREADS
/// environment variable when set, else the OpenMP runtime default.
int num_threads();
void set_num_threads(int threads);
/// Current override (0 = none).
int requested_threads();

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Per-shot RNG seed. Depends only on (base, p, shot) so results do not
/// depend on how shots are scheduled across threads.
inline std::uint64_t shot_seed(std::uint64_t base, std::uint64_t p, std::uint64_t shot) {
    return splitmix64(splitmix64(splitmix64(base) ^ p) ^ shot);
}

}  // namespace spskit

#endif
