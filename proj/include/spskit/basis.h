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

#ifndef SPSKIT_BASIS_H
#define SPSKIT_BASIS_H

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spskit {

/// Bad input: malformed kets, out-of-range indices, inconsistent sizes.
/// The CLI maps this to exit code 1.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation that could not finish (memory guards, empty results).
/// The CLI maps this to exit code 2.
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr int kMaxQubits = 64;

/// Computational basis state of `n` qubits. Qubit i is the bit of weight 2^i,
/// which is also the i-th character (left to right) of the ket string.
struct BasisState {
    std::uint64_t code = 0;
    int n = 0;

    friend bool operator==(const BasisState &, const BasisState &) = default;
    friend auto operator<=>(const BasisState &a, const BasisState &b) {
        if (auto c = a.n <=> b.n; c != 0) {
            return c;
        }
        return a.code <=> b.code;
    }
};

/// Mask with the low `n` bits set.
constexpr std::uint64_t low_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

BasisState make_state(std::uint64_t code, int n);
BasisState parse_ket(std::string_view text, int n);
BasisState parse_ket(std::string_view text);
std::string format_ket(BasisState b);
std::string format_ket(std::uint64_t code, int n);

/// Ordered list of k distinct qubit indices a local operator acts on.
/// Local pattern bit j corresponds to qubit indices[j].
class LocalWindow {
   public:
    LocalWindow() = default;
    explicit LocalWindow(std::vector<int> indices);

    const std::vector<int> &indices() const {
        return indices_;
    }
    int size() const {
        return static_cast<int>(indices_.size());
    }
    int max_index() const;
    std::uint64_t mask() const {
        return mask_;
    }
    /// Throws ValidationError if any index is >= n.
    void check_fits(int n) const;

    friend bool operator==(const LocalWindow &a, const LocalWindow &b) {
        return a.indices_ == b.indices_;
    }

   private:
    std::vector<int> indices_;
    std::uint64_t mask_ = 0;
};

/// Bit j of the result is bit indices[j] of `code`.
inline std::uint32_t extract_bits(std::uint64_t code, std::span<const int> indices) {
    std::uint32_t out = 0;
    for (size_t j = 0; j < indices.size(); j++) {
        out |= static_cast<std::uint32_t>((code >> indices[j]) & 1u) << j;
    }
    return out;
}

/// Inverse of extract_bits: moves pattern bit j to position indices[j].
inline std::uint64_t scatter_bits(std::uint32_t pattern, std::span<const int> indices) {
    std::uint64_t out = 0;
    for (size_t j = 0; j < indices.size(); j++) {
        out |= static_cast<std::uint64_t>((pattern >> j) & 1u) << indices[j];
    }
    return out;
}

std::uint32_t extract_local(BasisState b, const LocalWindow &w);
BasisState replace_local(BasisState b, const LocalWindow &w, std::uint32_t pattern);

int popcount(BasisState b);

}  // namespace spskit

#endif
