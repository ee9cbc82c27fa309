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

#include "spskit/basis.h"

#include <algorithm>
#include <bit>

namespace spskit {

BasisState make_state(std::uint64_t code, int n) {
    if (n < 1 || n > kMaxQubits) {
        throw ValidationError("qubit count must be in [1, 64], got " + std::to_string(n));
    }
    if ((code & ~low_mask(n)) != 0) {
        throw ValidationError("basis code " + std::to_string(code) + " does not fit in " + std::to_string(n) +
                              " qubits");
    }
    return BasisState{code, n};
}

BasisState parse_ket(std::string_view text, int n) {
    if (n < 1 || n > kMaxQubits) {
        throw ValidationError("qubit count must be in [1, 64], got " + std::to_string(n));
    }
    if (static_cast<int>(text.size()) != n) {
        throw ValidationError("ket '" + std::string(text) + "' has length " + std::to_string(text.size()) +
                              ", expected " + std::to_string(n));
    }
    std::uint64_t code = 0;
    for (int j = 0; j < n; j++) {
        char c = text[j];
        if (c == '1') {
            code |= std::uint64_t{1} << j;
        } else if (c != '0') {
            throw ValidationError("ket '" + std::string(text) + "' contains non-binary character '" +
                                  std::string(1, c) + "'");
        }
    }
    return BasisState{code, n};
}

BasisState parse_ket(std::string_view text) {
    return parse_ket(text, static_cast<int>(text.size()));
}

std::string format_ket(std::uint64_t code, int n) {
    std::string out(n, '0');
    for (int j = 0; j < n; j++) {
        if ((code >> j) & 1u) {
            out[j] = '1';
        }
    }
    return out;
}

std::string format_ket(BasisState b) {
    return format_ket(b.code, b.n);
}

LocalWindow::LocalWindow(std::vector<int> indices) : indices_(std::move(indices)) {
    if (indices_.empty()) {
        throw ValidationError("local window must contain at least one qubit");
    }
    if (indices_.size() > 16) {
        throw ValidationError("local window of " + std::to_string(indices_.size()) + " qubits is too large");
    }
    for (int q : indices_) {
        if (q < 0 || q >= kMaxQubits) {
            throw ValidationError("window index " + std::to_string(q) + " out of range");
        }
        std::uint64_t bit = std::uint64_t{1} << q;
        if (mask_ & bit) {
            throw ValidationError("window index " + std::to_string(q) + " repeated");
        }
        mask_ |= bit;
    }
}

int LocalWindow::max_index() const {
    return indices_.empty() ? -1 : *std::max_element(indices_.begin(), indices_.end());
}

void LocalWindow::check_fits(int n) const {
    if (max_index() >= n) {
        throw ValidationError("window index " + std::to_string(max_index()) + " out of range for " +
                              std::to_string(n) + " qubits");
    }
}

std::uint32_t extract_local(BasisState b, const LocalWindow &w) {
    w.check_fits(b.n);
    return extract_bits(b.code, w.indices());
}

BasisState replace_local(BasisState b, const LocalWindow &w, std::uint32_t pattern) {
    w.check_fits(b.n);
    if (pattern >> w.size()) {
        throw ValidationError("pattern " + std::to_string(pattern) + " does not fit a window of " +
                              std::to_string(w.size()) + " qubits");
    }
    return BasisState{(b.code & ~w.mask()) | scatter_bits(pattern, w.indices()), b.n};
}

int popcount(BasisState b) {
    return std::popcount(b.code);
}

}  // namespace spskit
