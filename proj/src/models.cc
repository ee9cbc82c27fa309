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

#include "spskit/models.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>

namespace spskit {

Circuit::Circuit(int n, std::vector<std::vector<Layer>> step_variants) : n_(n), variants_(std::move(step_variants)) {
    if (n < 1 || n > kMaxQubits) {
        throw ValidationError("qubit count must be in [1, 64], got " + std::to_string(n));
    }
    if (variants_.empty()) {
        throw ValidationError("circuit needs at least one step variant");
    }
    for (const auto &step : variants_) {
        for (const auto &layer : step) {
            for (const auto &g : layer) {
                if (!g) {
                    throw ValidationError("null gate in circuit");
                }
                g->window.check_fits(n);
            }
        }
    }
}

std::vector<GatePtr> Circuit::distinct_gates() const {
    std::vector<GatePtr> out;
    std::set<const LocalUnitary *> seen;
    for (const auto &step : variants_) {
        for (const auto &layer : step) {
            for (const auto &g : layer) {
                if (seen.insert(g.get()).second) {
                    out.push_back(g);
                }
            }
        }
    }
    return out;
}

std::uint64_t Circuit::touched_mask() const {
    std::uint64_t m = 0;
    for (const auto &g : distinct_gates()) {
        m |= g->window.mask();
    }
    return m;
}

LocalUnitary iswap_gate(double theta, LocalWindow window) {
    const Complex c = std::cos(theta);
    const Complex is = Complex(0, std::sin(theta));
    // Basis order 00, 10, 01, 11 in pattern encoding (bit 0 = first qubit).
    std::vector<Complex> e(16, 0.0);
    e[0 * 4 + 0] = 1;
    e[1 * 4 + 1] = c;
    e[1 * 4 + 2] = is;
    e[2 * 4 + 1] = is;
    e[2 * 4 + 2] = c;
    e[3 * 4 + 3] = 1;
    return LocalUnitary("iSWAP", std::move(window), std::move(e));
}

LocalUnitary zz_gate(double theta, LocalWindow window) {
    const Complex same = std::polar(1.0, -theta / 2);
    const Complex diff = std::polar(1.0, theta / 2);
    std::vector<Complex> e(16, 0.0);
    e[0] = same;
    e[5] = diff;
    e[10] = diff;
    e[15] = same;
    return LocalUnitary("ZZ", std::move(window), std::move(e));
}

LocalUnitary heisenberg_gate(double theta, LocalWindow window) {
    auto a = iswap_gate(theta, window);
    auto b = zz_gate(theta, window);
    std::vector<Complex> e(16, 0.0);
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            for (size_t k = 0; k < 4; k++) {
                e[r * 4 + c] += a.at(r, k) * b.at(k, c);
            }
        }
    }
    return LocalUnitary("iSWAP*ZZ", std::move(window), std::move(e));
}

LocalUnitary goldilocks_gate(const LocalWindow &window, int center, int threshold, std::string label) {
    const int k = window.size();
    if (center < 0 || center >= k) {
        throw ValidationError("center position outside window");
    }
    const size_t d = size_t{1} << k;
    const std::uint32_t cbit = 1u << center;
    const double h = std::numbers::sqrt2 / 2;
    std::vector<Complex> e(d * d, 0.0);
    for (std::uint32_t col = 0; col < d; col++) {
        int active = std::popcount(col & ~cbit);
        if (active != threshold) {
            e[col * d + col] = 1;
            continue;
        }
        std::uint32_t zero = col & ~cbit;
        std::uint32_t one = col | cbit;
        bool col_one = (col & cbit) != 0;
        e[zero * d + col] = h;
        e[one * d + col] = col_one ? -h : h;
    }
    return LocalUnitary(std::move(label), window, std::move(e));
}

LocalUnitary restrict_frozen_zero(const LocalUnitary &u, const std::vector<int> &frozen, LocalWindow reduced_window) {
    const int k = u.window.size();
    std::uint32_t frozen_mask = 0;
    for (int f : frozen) {
        if (f < 0 || f >= k) {
            throw ValidationError("frozen position outside window");
        }
        frozen_mask |= 1u << f;
    }
    std::vector<int> kept;
    for (int j = 0; j < k; j++) {
        if (!(frozen_mask & (1u << j))) {
            kept.push_back(j);
        }
    }
    if (static_cast<int>(kept.size()) != reduced_window.size()) {
        throw ValidationError("reduced window size mismatch");
    }
    const size_t rd = size_t{1} << kept.size();
    std::vector<Complex> e(rd * rd);
    for (std::uint32_t r = 0; r < rd; r++) {
        for (std::uint32_t c = 0; c < rd; c++) {
            e[r * rd + c] = u.at(scatter_bits(r, kept), scatter_bits(c, kept));
        }
    }
    LocalUnitary out(u.label, std::move(reduced_window), std::move(e));
    if (out.unitarity_residual() > kDefaultUnitarityTol) {
        throw ValidationError("frozen-zero block of '" + u.label + "' is not invariant");
    }
    return out;
}

namespace {

LocalWindow contiguous(int lo, int hi) {
    std::vector<int> idx;
    for (int q = lo; q <= hi; q++) {
        idx.push_back(q);
    }
    return LocalWindow(std::move(idx));
}

/// Goldilocks gate centered at qubit i with the given reach, clipped to the
/// chain. Out-of-range neighbors are frozen |0>.
GatePtr clipped_goldilocks(int n, int i, int reach, int threshold, const std::string &name) {
    int lo = std::max(0, i - reach);
    int hi = std::min(n - 1, i + reach);
    return std::make_shared<LocalUnitary>(
        goldilocks_gate(contiguous(lo, hi), i - lo, threshold, name + "_" + std::to_string(i)));
}

void check_parameter(Model &m, const std::vector<GatePtr> &gates, double tol) {
    for (const auto &g : gates) {
        int near = near_threshold_entries(*g, tol);
        if (near > 0) {
            m.warnings.push_back("gate '" + g->label + "' has " + std::to_string(near) +
                                 " entries within 10x of the bitize tolerance; consider a union over a second angle");
        }
    }
}

EditMapSet maps_for(const Circuit &c, double tol) {
    std::vector<EditMap> maps;
    for (const auto &g : c.distinct_gates()) {
        maps.push_back(build_edit_map(*g, tol));
    }
    EditMapSet set(c.n(), std::move(maps));
    set.check_covers(c.touched_mask());
    return set;
}

BasisState single_flip(int n, std::vector<int> qubits) {
    std::uint64_t code = 0;
    for (int q : qubits) {
        code |= std::uint64_t{1} << q;
    }
    return BasisState{code, n};
}

bool degenerate_angle(double theta, double tol) {
    return std::abs(std::sin(theta)) <= 10 * tol || std::abs(std::cos(theta)) <= 10 * tol;
}

}  // namespace

Model model_from_circuit(std::string name, Circuit circuit, double tol) {
    Model m;
    m.name = std::move(name);
    m.n = circuit.n();
    m.maps = maps_for(circuit, tol);
    m.default_init = BasisState{0, circuit.n()};
    check_parameter(m, circuit.distinct_gates(), tol);
    m.circuit = std::move(circuit);
    return m;
}

Model build_hopping(int n, double theta, double tol) {
    if (n < 2) {
        throw ValidationError("hopping chain needs n >= 2");
    }
    std::vector<Layer> step;
    for (int i = n - 2; i >= 0; i--) {
        step.push_back({std::make_shared<LocalUnitary>(iswap_gate(theta, LocalWindow({i, i + 1})))});
    }
    Model m = model_from_circuit("hop", Circuit(n, {step}), tol);
    m.theta = theta;
    m.default_init = single_flip(n, {0, 1});
    if (degenerate_angle(theta, tol)) {
        m.degenerate_parameter = true;
        m.warnings.push_back("theta is a degenerate parameter: gate entries vanish and the edit maps change");
    }
    return m;
}

Model build_heisenberg(int n, double theta, double tol) {
    if (n < 2) {
        throw ValidationError("Heisenberg chain needs n >= 2");
    }
    Layer even, odd;
    for (int i = 0; i + 1 < n; i++) {
        auto g = std::make_shared<LocalUnitary>(heisenberg_gate(theta, LocalWindow({i, i + 1})));
        (i % 2 == 0 ? even : odd).push_back(g);
    }
    std::vector<Layer> step{even};
    if (!odd.empty()) {
        step.push_back(odd);
    }
    Model m = model_from_circuit("heis", Circuit(n, {step}), tol);
    m.theta = theta;
    std::vector<int> ups;
    for (int q = 0; q < n; q += 2) {
        ups.push_back(q);
    }
    m.default_init = single_flip(n, ups);
    if (degenerate_angle(theta, tol)) {
        m.degenerate_parameter = true;
        m.warnings.push_back("theta is a degenerate parameter: gate entries vanish and the edit maps change");
    }
    return m;
}

Model build_t6(int n, double tol) {
    if (n < 3) {
        throw ValidationError("T6 automaton needs n >= 3");
    }
    Layer even, odd;
    for (int i = 0; i < n; i++) {
        (i % 2 == 0 ? even : odd).push_back(clipped_goldilocks(n, i, 1, 1, "T6"));
    }
    Model m = model_from_circuit("t6", Circuit(n, {{even, odd}}), tol);
    m.default_init = single_flip(n, {n / 2});
    return m;
}

Model build_f4(int n, double tol) {
    if (n < 5) {
        throw ValidationError("F4 automaton needs n >= 5");
    }
    // Centers grouped by residue: class r holds centers i with i % 3 == r.
    std::vector<Layer> by_residue(3);
    for (int i = 0; i < n; i++) {
        by_residue[i % 3].push_back(clipped_goldilocks(n, i, 2, 2, "F4"));
    }
    const Layer &r0 = by_residue[0];  // 3, 6, 9, ...
    const Layer &r1 = by_residue[1];  // 4, 7, 10, ...
    const Layer &r2 = by_residue[2];  // 2, 5, 8, ...
    // Operator products act right to left. Odd steps: U(3,6,..) U(2,5,..)
    // U(4,7,..); even steps: U(2,5,..) U(3,6,..) U(4,7,..).
    std::vector<Layer> odd_step{r1, r2, r0};
    std::vector<Layer> even_step{r1, r0, r2};
    Model m = model_from_circuit("f4", Circuit(n, {odd_step, even_step}), tol);
    m.default_init = single_flip(n, {n / 2 - 1, n / 2 + 1});
    return m;
}

Model build_model(std::string_view name, int n, double theta, double tol) {
    if (name == "heis") {
        return build_heisenberg(n, theta, tol);
    }
    if (name == "hop") {
        return build_hopping(n, theta, tol);
    }
    if (name == "t6") {
        return build_t6(n, tol);
    }
    if (name == "f4") {
        return build_f4(n, tol);
    }
    throw ValidationError("unknown model '" + std::string(name) + "' (expected hop, heis, t6, f4)");
}

std::vector<BasisState> rocky_initial_states() {
    static const char *const kListed[] = {
        "001000011111111", "011100000001000", "011110101011111", "011110000010001", "011101000001000",
        "011000000101010", "001000011111111", "011100000001000", "011110101011111", "011110000010001",
        "011101000001000", "011000000101010", "111111101111100", "110111111110101", "111111101010111",
        "111100010111110", "110111111010001", "110101000000100",
    };
    std::vector<BasisState> out;
    for (const char *k : kListed) {
        BasisState b = parse_ket(k);
        if (std::find(out.begin(), out.end(), b) == out.end()) {
            out.push_back(b);
        }
    }
    return out;
}

std::vector<std::vector<std::string>> swap_table() {
    return {{"00"}, {"01", "10"}, {"11"}};
}

std::vector<std::vector<std::string>> t6_table() {
    return {{"000"}, {"001", "011"}, {"010"}, {"100", "110"}, {"101"}, {"111"}};
}

std::vector<std::vector<std::string>> f4_table() {
    return {
        {"00011", "00111"}, {"01001", "01101"}, {"01010", "01110"},
        {"11000", "11100"}, {"10010", "10110"}, {"10001", "10101"},
    };
}

std::vector<std::vector<std::uint32_t>> table_classes(const std::vector<std::vector<std::string>> &table, int k) {
    const std::uint32_t d = 1u << k;
    std::vector<bool> used(d, false);
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto &cls : table) {
        std::vector<std::uint32_t> pats;
        for (const auto &ket : cls) {
            auto p = static_cast<std::uint32_t>(parse_ket(ket, k).code);
            pats.push_back(p);
            used[p] = true;
        }
        out.push_back(std::move(pats));
    }
    for (std::uint32_t p = 0; p < d; p++) {
        if (!used[p]) {
            out.push_back({p});
        }
    }
    for (auto &c : out) {
        std::sort(c.begin(), c.end());
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.front() < b.front(); });
    return out;
}

int domain_walls(BasisState b) {
    auto bit = [&](int q) { return q < 0 || q >= b.n ? 0 : static_cast<int>((b.code >> q) & 1u); };
    int walls = 0;
    for (int q = -1; q < b.n; q++) {
        walls += bit(q) != bit(q + 1);
    }
    return walls;
}

}  // namespace spskit
