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
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "spskit/models.h"

using namespace spskit;

namespace {

LocalUnitary hadamard(int q) {
    double s = 1 / std::sqrt(2.0);
    return LocalUnitary("H", LocalWindow({q}), {s, s, s, -s});
}

LocalUnitary identity_gate(std::vector<int> window) {
    size_t d = size_t{1} << window.size();
    std::vector<Complex> e(d * d);
    for (size_t i = 0; i < d; i++) {
        e[i * d + i] = 1;
    }
    return LocalUnitary("I", LocalWindow(std::move(window)), std::move(e));
}

std::uint32_t pat(const char *ket) {
    return static_cast<std::uint32_t>(parse_ket(ket).code);
}

/// Independent check: components of an undirected graph via union-find.
std::vector<std::vector<std::uint32_t>> components(const BoolMatrix &a) {
    std::vector<std::uint32_t> parent(a.dim());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (size_t r = 0; r < a.dim(); r++) {
        for (size_t c = 0; c < a.dim(); c++) {
            if (a(r, c)) {
                parent[find(r)] = find(c);
            }
        }
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t p = 0; p < a.dim(); p++) {
        groups[find(p)].push_back(p);
    }
    std::vector<std::vector<std::uint32_t>> out;
    for (auto &[root, g] : groups) {
        out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<std::uint32_t>> sorted_classes(std::vector<std::vector<std::uint32_t>> c) {
    for (auto &x : c) {
        std::sort(x.begin(), x.end());
    }
    std::sort(c.begin(), c.end());
    return c;
}

std::set<std::string> kets(const std::vector<BasisState> &bs) {
    std::set<std::string> out;
    for (auto b : bs) {
        out.insert(format_ket(b));
    }
    return out;
}

}  // namespace

TEST(editmap, local_unitary_shape_checked) {
    ASSERT_THROW(LocalUnitary("bad", LocalWindow({0, 1}), std::vector<Complex>(9)), ValidationError);
    ASSERT_NEAR(hadamard(0).unitarity_residual(), 0, 1e-15);
}

TEST(editmap, bitize_iswap) {
    BoolMatrix a = bitize(iswap_gate(0.3, LocalWindow({0, 1})));
    ASSERT_TRUE(a(pat("01"), pat("10")));
    ASSERT_TRUE(a(pat("10"), pat("01")));
    ASSERT_FALSE(a(pat("00"), pat("01")));
    ASSERT_FALSE(a(pat("11"), pat("10")));
    for (size_t i = 0; i < 4; i++) {
        ASSERT_TRUE(a(i, i));
    }
}

TEST(editmap, bitize_identity_and_hadamard) {
    BoolMatrix id = bitize(identity_gate({0, 1, 2}));
    for (size_t r = 0; r < 8; r++) {
        for (size_t c = 0; c < 8; c++) {
            ASSERT_EQ(id(r, c), r == c);
        }
    }
    BoolMatrix h = bitize(hadamard(0));
    ASSERT_TRUE(h(0, 1) && h(1, 0) && h(0, 0) && h(1, 1));
}

TEST(editmap, bitize_symmetrizes) {
    // Upper-triangular pattern: |0><1| only in one direction.
    double s = 1 / std::sqrt(2.0);
    LocalUnitary u("tri", LocalWindow({0}), {s, s, 0, 1});  // not unitary, bitize only
    BoolMatrix a = bitize(u);
    ASSERT_TRUE(a(0, 1));
    ASSERT_TRUE(a(1, 0));
}

TEST(editmap, boolean_closure_chain) {
    BoolMatrix a(3);
    for (size_t i = 0; i < 3; i++) {
        a.set(i, i);
    }
    a.set(0, 1);
    a.set(1, 0);
    a.set(1, 2);
    a.set(2, 1);
    BoolMatrix c = boolean_closure(a);
    ASSERT_TRUE(c(0, 2));
    ASSERT_TRUE(c(2, 0));
    ASSERT_EQ(boolean_closure(c), c);
}

TEST(editmap, boolean_closure_fixed_points) {
    BoolMatrix a = bitize(iswap_gate(0.1, LocalWindow({0, 1})));
    ASSERT_EQ(boolean_closure(a), a);
    BoolMatrix direct = a.squared();
    ASSERT_EQ(direct, a);
}

TEST(editmap, closure_matches_union_find_on_random_graphs) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; t++) {
        size_t d = size_t{1} << (1 + rng() % 4);
        BoolMatrix a(d);
        for (size_t i = 0; i < d; i++) {
            a.set(i, i);
        }
        size_t edges = rng() % (d + 1);
        for (size_t e = 0; e < edges; e++) {
            size_t r = rng() % d, c = rng() % d;
            a.set(r, c);
            a.set(c, r);
        }
        BoolMatrix c = boolean_closure(a);
        ASSERT_EQ(boolean_closure(c), c);
        auto comps = components(a);
        std::vector<size_t> comp_of(d);
        for (size_t k = 0; k < comps.size(); k++) {
            for (auto p : comps[k]) {
                comp_of[p] = k;
            }
        }
        for (size_t r = 0; r < d; r++) {
            for (size_t col = 0; col < d; col++) {
                ASSERT_EQ(c(r, col), comp_of[r] == comp_of[col]);
            }
        }
    }
}

TEST(editmap, swap_classes) {
    auto expected = sorted_classes(table_classes(swap_table(), 2));
    ASSERT_EQ(expected, (std::vector<std::vector<std::uint32_t>>{{0}, {1, 2}, {3}}));
    ASSERT_EQ(sorted_classes(build_edit_map(iswap_gate(0.1, LocalWindow({0, 1}))).classes()), expected);
    ASSERT_EQ(sorted_classes(build_edit_map(heisenberg_gate(0.1, LocalWindow({0, 1}))).classes()), expected);
}

TEST(editmap, goldilocks_classes_match_tables) {
    LocalUnitary t6 = goldilocks_gate(LocalWindow({0, 1, 2}), 1, 1, "T6");
    ASSERT_EQ(sorted_classes(build_edit_map(t6).classes()), sorted_classes(table_classes(t6_table(), 3)));
    LocalUnitary f4 = goldilocks_gate(LocalWindow({0, 1, 2, 3, 4}), 2, 2, "F4");
    ASSERT_EQ(sorted_classes(build_edit_map(f4).classes()), sorted_classes(table_classes(f4_table(), 5)));
}

TEST(editmap, classes_are_bitize_components) {
    std::vector<LocalUnitary> gates{
        iswap_gate(0.7, LocalWindow({0, 1})),
        heisenberg_gate(1.1, LocalWindow({0, 1})),
        goldilocks_gate(LocalWindow({0, 1, 2}), 1, 1, "T6"),
        goldilocks_gate(LocalWindow({0, 1, 2, 3, 4}), 2, 2, "F4"),
        hadamard(0),
    };
    for (const auto &g : gates) {
        ASSERT_EQ(sorted_classes(build_edit_map(g).classes()), components(bitize(g))) << g.label;
    }
}

TEST(editmap, classes_independent_of_generic_angle) {
    auto ref = build_edit_map(heisenberg_gate(0.1, LocalWindow({0, 1}))).classes();
    for (double theta : {0.05, 0.3, 0.7, 1.2, 1.5}) {
        ASSERT_EQ(build_edit_map(heisenberg_gate(theta, LocalWindow({0, 1}))).classes(), ref) << theta;
        ASSERT_EQ(build_edit_map(iswap_gate(theta, LocalWindow({0, 1}))).classes(), ref) << theta;
    }
}

TEST(editmap, degenerate_angle_detected) {
    LocalUnitary u = iswap_gate(2e-12, LocalWindow({0, 1}));
    ASSERT_GT(near_threshold_entries(u), 0);
    ASSERT_EQ(near_threshold_entries(iswap_gate(0.1, LocalWindow({0, 1}))), 0);
    // At exactly zero the gate is the identity and the swap class splits.
    ASSERT_EQ(build_edit_map(iswap_gate(0.0, LocalWindow({0, 1}))).classes().size(), 4u);
}

TEST(editmap, union_over_angles) {
    std::vector<LocalUnitary> us{iswap_gate(0.0, LocalWindow({0, 1})), iswap_gate(0.4, LocalWindow({0, 1}))};
    EditMap m = build_edit_map_union(us);
    ASSERT_EQ(m.classes().size(), 3u);
    std::vector<LocalUnitary> mixed{iswap_gate(0.4, LocalWindow({0, 1})), iswap_gate(0.4, LocalWindow({1, 2}))};
    ASSERT_THROW(build_edit_map_union(mixed), ValidationError);
}

TEST(editmap, rejects_non_unitary) {
    LocalUnitary u("bad", LocalWindow({0}), {1, 1, 0, 1});
    ASSERT_THROW(build_edit_map(u), ValidationError);
}

TEST(editmap, constructor_validates_classes) {
    LocalWindow w({0, 1});
    ASSERT_THROW(EditMap(w, {{0, 1}, {1, 2}, {3}}), ValidationError);
    ASSERT_THROW(EditMap(w, {{0, 1}, {2}}), ValidationError);
    ASSERT_THROW(EditMap(w, {{0}, {1}, {2}, {3, 4}}), ValidationError);
    ASSERT_THROW(EditMap(w, {{0}, {}, {1, 2, 3}}), ValidationError);
}

TEST(editmap, apply_substring) {
    EditMap m = build_edit_map(iswap_gate(0.1, LocalWindow({1, 2})));
    ASSERT_EQ(kets(m.apply(parse_ket("0100"))), (std::set<std::string>{"0100", "0010"}));
    ASSERT_EQ(kets(m.apply(parse_ket("0110"))), (std::set<std::string>{"0110"}));
    ASSERT_EQ(kets(m.apply(parse_ket("1001"))), (std::set<std::string>{"1001"}));
}

TEST(editmap, apply_f4_window) {
    EditMap m(LocalWindow({0, 1, 2, 3, 4}), table_classes(f4_table(), 5));
    ASSERT_EQ(kets(m.apply(parse_ket("00011"))), (std::set<std::string>{"00011", "00111"}));
    ASSERT_EQ(kets(m.apply(parse_ket("00000"))), (std::set<std::string>{"00000"}));
    EditMap shifted(LocalWindow({2, 3, 4, 5, 6}), table_classes(f4_table(), 5));
    ASSERT_EQ(kets(shifted.apply(parse_ket("1101010"))), (std::set<std::string>{"1101010", "1101110"}));
}

TEST(editmap, for_each_image_excludes_self) {
    EditMap m = build_edit_map(iswap_gate(0.1, LocalWindow({0, 1})));
    std::vector<std::uint64_t> seen;
    m.for_each_image(parse_ket("10").code, [&](std::uint64_t c) { seen.push_back(c); });
    ASSERT_EQ(seen, (std::vector<std::uint64_t>{parse_ket("01").code}));
}

TEST(editmap, map_set_apply) {
    Model hop = build_hopping(4);
    ASSERT_EQ(kets(hop.maps.apply(parse_ket("1100"))), (std::set<std::string>{"1100", "1010"}));
    ASSERT_EQ(kets(hop.maps.apply(parse_ket("0110"))), (std::set<std::string>{"0110", "1010", "0101"}));
    ASSERT_EQ(kets(hop.maps.apply(parse_ket("0000"))), (std::set<std::string>{"0000"}));
    ASSERT_EQ(kets(hop.maps.apply(parse_ket("1111"))), (std::set<std::string>{"1111"}));
    ASSERT_THROW(hop.maps.apply(parse_ket("000")), ValidationError);
}

TEST(editmap, map_set_image_bound) {
    std::mt19937_64 rng(1);
    for (const char *name : {"heis", "t6", "f4"}) {
        Model m = build_model(name, 9);
        size_t bound = 1;
        for (const auto &e : m.maps.maps()) {
            bound += (size_t{1} << e.window().size()) - 1;
        }
        for (int t = 0; t < 100; t++) {
            BasisState b{rng() & low_mask(9), 9};
            auto img = m.maps.apply(b);
            ASSERT_LE(img.size(), bound);
            ASSERT_TRUE(std::binary_search(img.begin(), img.end(), b));
        }
    }
}

TEST(editmap, fingerprint_distinguishes_models) {
    ASSERT_EQ(build_t6(8).maps.fingerprint(), build_t6(8).maps.fingerprint());
    ASSERT_NE(build_t6(8).maps.fingerprint(), build_f4(8).maps.fingerprint());
    ASSERT_NE(build_heisenberg(8).maps.fingerprint(), build_heisenberg(9).maps.fingerprint());
}

TEST(editmap, check_covers) {
    EditMapSet s(4, {build_edit_map(iswap_gate(0.1, LocalWindow({0, 1})))});
    s.check_covers(0b0011);
    ASSERT_THROW(s.check_covers(0b0111), ValidationError);
}
