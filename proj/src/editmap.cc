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

#include "spskit/editmap.h"

#include <algorithm>
#include <cmath>

#include "spskit/parallel.h"

namespace spskit {

LocalUnitary::LocalUnitary(std::string label_, LocalWindow window_, std::vector<Complex> entries_)
    : label(std::move(label_)), window(std::move(window_)), entries(std::move(entries_)) {
    if (entries.size() != dim() * dim()) {
        throw ValidationError("unitary '" + label + "' has " + std::to_string(entries.size()) +
                              " entries, expected " + std::to_string(dim() * dim()));
    }
}

double LocalUnitary::unitarity_residual() const {
    size_t d = dim();
    double worst = 0;
    for (size_t r = 0; r < d; r++) {
        for (size_t c = 0; c < d; c++) {
            Complex acc = 0;
            for (size_t k = 0; k < d; k++) {
                acc += std::conj(at(k, r)) * at(k, c);
            }
            if (r == c) {
                acc -= 1.0;
            }
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

BoolMatrix BoolMatrix::squared() const {
    BoolMatrix out(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t k = 0; k < dim_; k++) {
            if (!(*this)(r, k)) {
                continue;
            }
            for (size_t c = 0; c < dim_; c++) {
                if ((*this)(k, c)) {
                    out.set(r, c);
                }
            }
        }
    }
    return out;
}

BoolMatrix BoolMatrix::operator|(const BoolMatrix &other) const {
    if (other.dim_ != dim_) {
        throw ValidationError("boolean matrix dimension mismatch");
    }
    BoolMatrix out = *this;
    for (size_t j = 0; j < bits_.size(); j++) {
        out.bits_[j] |= other.bits_[j];
    }
    return out;
}

BoolMatrix bitize(const LocalUnitary &u, double tol) {
    size_t d = u.dim();
    BoolMatrix a(d);
    for (size_t r = 0; r < d; r++) {
        a.set(r, r);
        for (size_t c = 0; c < d; c++) {
            if (std::abs(u.at(r, c)) > tol || std::abs(u.at(c, r)) > tol) {
                a.set(r, c);
            }
        }
    }
    return a;
}

int near_threshold_entries(const LocalUnitary &u, double tol) {
    int count = 0;
    for (const auto &z : u.entries) {
        double m = std::abs(z);
        if (m > tol / 10 && m <= tol * 10) {
            count++;
        }
    }
    return count;
}

BoolMatrix boolean_closure(BoolMatrix a) {
    BoolMatrix next = a.squared();
    while (!(next == a)) {
        a = std::move(next);
        next = a.squared();
    }
    return a;
}

EditMap::EditMap(LocalWindow window, std::vector<std::vector<std::uint32_t>> classes, std::string label)
    : window_(std::move(window)), label_(std::move(label)), classes_(std::move(classes)) {
    size_t d = size_t{1} << window_.size();
    for (auto &c : classes_) {
        std::sort(c.begin(), c.end());
        if (c.empty()) {
            throw ValidationError("edit map class is empty");
        }
    }
    std::sort(classes_.begin(), classes_.end(), [](const auto &a, const auto &b) { return a.front() < b.front(); });

    class_of_.assign(d, UINT32_MAX);
    for (size_t k = 0; k < classes_.size(); k++) {
        for (auto p : classes_[k]) {
            if (p >= d) {
                throw ValidationError("edit map pattern " + std::to_string(p) + " out of range");
            }
            if (class_of_[p] != UINT32_MAX) {
                throw ValidationError("edit map classes overlap at pattern " + std::to_string(p));
            }
            class_of_[p] = static_cast<std::uint32_t>(k);
        }
    }
    for (size_t p = 0; p < d; p++) {
        if (class_of_[p] == UINT32_MAX) {
            throw ValidationError("edit map classes do not cover pattern " + std::to_string(p));
        }
    }

    flip_offsets_.assign(d + 1, 0);
    for (size_t p = 0; p < d; p++) {
        std::uint64_t here = scatter_bits(static_cast<std::uint32_t>(p), window_.indices());
        for (auto q : classes_[class_of_[p]]) {
            if (q != p) {
                flips_.push_back(here ^ scatter_bits(q, window_.indices()));
            }
        }
        flip_offsets_[p + 1] = static_cast<std::uint32_t>(flips_.size());
    }
}

std::vector<BasisState> EditMap::apply(BasisState b) const {
    window_.check_fits(b.n);
    std::vector<BasisState> out{b};
    for_each_image(b.code, [&](std::uint64_t c) { out.push_back({c, b.n}); });
    std::sort(out.begin(), out.end());
    return out;
}

EditMap edit_map_from_closure(const LocalWindow &window, const BoolMatrix &closed, std::string label) {
    size_t d = closed.dim();
    std::vector<std::vector<std::uint32_t>> classes;
    std::vector<bool> seen(d, false);
    for (size_t r = 0; r < d; r++) {
        if (seen[r]) {
            continue;
        }
        std::vector<std::uint32_t> cls;
        for (size_t c = 0; c < d; c++) {
            if (closed(r, c)) {
                cls.push_back(static_cast<std::uint32_t>(c));
                seen[c] = true;
            }
        }
        classes.push_back(std::move(cls));
    }
    return EditMap(window, std::move(classes), std::move(label));
}

namespace {

void check_unitary(const LocalUnitary &u, double unitarity_tol) {
    double res = u.unitarity_residual();
    if (!(res < unitarity_tol)) {
        throw ValidationError("operator '" + u.label + "' is not unitary (residual " + std::to_string(res) + ")");
    }
}

}  // namespace

EditMap build_edit_map(const LocalUnitary &u, double tol, double unitarity_tol) {
    check_unitary(u, unitarity_tol);
    return edit_map_from_closure(u.window, boolean_closure(bitize(u, tol)), u.label);
}

EditMap build_edit_map_union(std::span<const LocalUnitary> us, double tol, double unitarity_tol) {
    if (us.empty()) {
        throw ValidationError("no unitaries given");
    }
    BoolMatrix acc = bitize(us[0], tol);
    for (const auto &u : us) {
        check_unitary(u, unitarity_tol);
        if (!(u.window == us[0].window)) {
            throw ValidationError("unitaries in a union must share a window");
        }
        acc = acc | bitize(u, tol);
    }
    return edit_map_from_closure(us[0].window, boolean_closure(acc), us[0].label);
}

EditMapSet::EditMapSet(int n, std::vector<EditMap> maps) : n_(n), maps_(std::move(maps)) {
    if (n < 1 || n > kMaxQubits) {
        throw ValidationError("qubit count must be in [1, 64], got " + std::to_string(n));
    }
    std::uint64_t h = splitmix64(static_cast<std::uint64_t>(n));
    for (const auto &m : maps_) {
        m.window().check_fits(n);
        for (int q : m.window().indices()) {
            h = splitmix64(h ^ static_cast<std::uint64_t>(q + 1));
        }
        for (const auto &c : m.classes()) {
            h = splitmix64(h ^ 0xC1A55ull);
            for (auto p : c) {
                h = splitmix64(h ^ p);
            }
        }
    }
    fingerprint_ = h;
}

std::vector<BasisState> EditMapSet::apply(BasisState b) const {
    if (b.n != n_) {
        throw ValidationError("state has " + std::to_string(b.n) + " qubits, edit maps expect " + std::to_string(n_));
    }
    std::vector<BasisState> out{b};
    for_each_neighbor(b.code, [&](std::uint64_t c) { out.push_back({c, n_}); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void EditMapSet::check_covers(std::uint64_t touched) const {
    std::uint64_t covered = 0;
    for (const auto &m : maps_) {
        covered |= m.window().mask();
    }
    if (touched & ~covered) {
        throw ValidationError("edit map set does not cover every qubit touched by the circuit");
    }
}

}  // namespace spskit
