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

#include "spskit/oracle.h"

#include <algorithm>
#include <numeric>
#include <random>

namespace spskit {

DenseMatrix::DenseMatrix(int n) : n_(n), dim_(size_t{1} << n), data_(dim_ * dim_) {
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n);
    for (size_t i = 0; i < m.dim_; i++) {
        m(i, i) = 1;
    }
    return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix &o) const {
    DenseMatrix out(n_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t k = 0; k < dim_; k++) {
            Complex a = (*this)(r, k);
            if (a == Complex(0, 0)) {
                continue;
            }
            for (size_t c = 0; c < dim_; c++) {
                out(r, c) += a * o(k, c);
            }
        }
    }
    return out;
}

std::vector<Complex> DenseMatrix::apply(const std::vector<Complex> &v) const {
    std::vector<Complex> out(dim_);
    for (size_t r = 0; r < dim_; r++) {
        Complex acc = 0;
        for (size_t c = 0; c < dim_; c++) {
            acc += (*this)(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

double DenseMatrix::unitarity_residual() const {
    double worst = 0;
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            Complex acc = 0;
            for (size_t k = 0; k < dim_; k++) {
                acc += std::conj((*this)(k, r)) * (*this)(k, c);
            }
            worst = std::max(worst, std::abs(acc - Complex(r == c ? 1.0 : 0.0, 0)));
        }
    }
    return worst;
}

void DenseMatrix::left_apply(const LocalUnitary &u) {
    u.window.check_fits(n_);
    const auto &w = u.window.indices();
    const std::uint64_t mask = u.window.mask();
    std::vector<Complex> col(dim_);
    for (size_t c = 0; c < dim_; c++) {
        for (size_t r = 0; r < dim_; r++) {
            col[r] = (*this)(r, c);
        }
        for (size_t r = 0; r < dim_; r++) {
            const std::uint64_t rest = r & ~mask;
            const auto lr = static_cast<std::uint32_t>(extract_bits(r, w));
            Complex acc = 0;
            for (std::uint32_t lc = 0; lc < u.dim(); lc++) {
                acc += u.at(lr, lc) * col[rest | scatter_bits(lc, w)];
            }
            (*this)(r, c) = acc;
        }
    }
}

namespace {

void check_cap(int n, int cap) {
    if (n > cap) {
        throw ComputeError("dense oracle limited to n <= " + std::to_string(cap) + ", got n = " + std::to_string(n));
    }
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(size_t d) : parent(d) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

}  // namespace

DenseMatrix compose_step(const Circuit &c, std::uint64_t j, int cap) {
    check_cap(c.n(), cap);
    if (j < 1) {
        throw ValidationError("steps are numbered from 1");
    }
    DenseMatrix u = DenseMatrix::identity(c.n());
    for (const auto &layer : c.step(j)) {
        for (const auto &g : layer) {
            u.left_apply(*g);
        }
    }
    return u;
}

std::vector<DenseMatrix> compose_step_variants(const Circuit &c, int cap) {
    std::vector<DenseMatrix> out;
    for (size_t v = 0; v < c.step_variants().size(); v++) {
        out.push_back(compose_step(c, v + 1, cap));
    }
    return out;
}

std::vector<std::uint32_t> oracle_labels(const std::vector<DenseMatrix> &us, double tol) {
    if (us.empty()) {
        throw ValidationError("need at least one matrix");
    }
    const size_t d = us[0].dim();
    UnionFind uf(d);
    for (const auto &u : us) {
        if (u.dim() != d) {
            throw ValidationError("matrices differ in size");
        }
        for (size_t r = 0; r < d; r++) {
            for (size_t c = 0; c < d; c++) {
                if (std::abs(u(r, c)) > tol) {
                    uf.unite(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c));
                }
            }
        }
    }
    std::vector<std::uint32_t> labels(d);
    for (size_t b = 0; b < d; b++) {
        labels[b] = uf.find(static_cast<std::uint32_t>(b));
    }
    return labels;
}

std::vector<Subspace> oracle_partition(const std::vector<DenseMatrix> &us, double tol) {
    return subspaces_from_labels(oracle_labels(us, tol), us.at(0).n());
}

std::vector<Subspace> oracle_partition(const DenseMatrix &u, double tol) {
    return oracle_partition(std::vector<DenseMatrix>{u}, tol);
}

double verify_projector_commutation(const DenseMatrix &u, const std::vector<std::uint64_t> &members) {
    std::vector<char> in(u.dim(), 0);
    for (auto b : members) {
        if (b >= u.dim()) {
            throw ValidationError("projector member out of range");
        }
        in[b] = 1;
    }
    // (PU - UP)_rc = (in[r] - in[c]) U_rc
    double worst = 0;
    for (size_t r = 0; r < u.dim(); r++) {
        for (size_t c = 0; c < u.dim(); c++) {
            if (in[r] != in[c]) {
                worst = std::max(worst, std::abs(u(r, c)));
            }
        }
    }
    return worst;
}

Theorem1Report verify_theorem1(const Model &m, int trials, std::uint64_t seed, std::uint64_t max_p, int cap) {
    check_cap(m.n, cap);
    auto steps = compose_step_variants(m.circuit, cap);
    std::mt19937_64 rng(seed);
    Theorem1Report rep;
    rep.trials = trials;
    const std::uint64_t d = std::uint64_t{1} << m.n;
    for (int t = 0; t < trials; t++) {
        BasisState psi0{rng() % d, m.n};
        std::uint64_t p = rng() % (max_p + 1);
        std::vector<Complex> v(d);
        v[psi0.code] = 1;
        for (std::uint64_t j = 1; j <= p; j++) {
            v = steps[(j - 1) % steps.size()].apply(v);
        }
        Subspace g = enumerate_sps(m.maps, psi0);
        for (std::uint64_t b = 0; b < d; b++) {
            if (g.contains_code(b)) {
                continue;
            }
            double a = std::abs(v[b]);
            if (a > rep.max_violation) {
                rep.max_violation = a;
                rep.worst_init = psi0;
                rep.worst_p = p;
            }
        }
    }
    return rep;
}

double verify_lemma1(const Circuit &c, const std::vector<std::uint32_t> &labels, std::uint64_t max_p, int cap) {
    auto steps = compose_step_variants(c, cap);
    DenseMatrix u = DenseMatrix::identity(c.n());
    double worst = 0;
    for (std::uint64_t p = 1; p <= max_p; p++) {
        u = steps[(p - 1) % steps.size()] * u;
        for (size_t r = 0; r < u.dim(); r++) {
            for (size_t col = 0; col < u.dim(); col++) {
                if (labels[r] != labels[col]) {
                    worst = std::max(worst, std::abs(u(r, col)));
                }
            }
        }
    }
    return worst;
}

OracleReport verify_model(const Model &m, int trials, std::uint64_t seed, int cap) {
    check_cap(m.n, cap);
    OracleReport rep;
    rep.n = m.n;
    auto steps = compose_step_variants(m.circuit, cap);
    for (const auto &u : steps) {
        rep.unitarity_residual = std::max(rep.unitarity_residual, u.unitarity_residual());
    }
    auto oracle = oracle_labels(steps);
    auto fast = partition_labels(m.maps);
    rep.partition_matches = std::equal(oracle.begin(), oracle.end(), fast.begin(), fast.end());
    auto comps = subspaces_from_labels(fast, m.n);
    rep.components = comps.size();

    rep.theorem1_max = verify_theorem1(m, trials, seed, 8, cap).max_violation;
    rep.lemma1_max = verify_lemma1(m.circuit, fast, 8, cap);

    std::mt19937_64 rng(seed ^ 0x5eedULL);
    for (const auto &u : steps) {
        for (const auto &g : comps) {
            rep.component_residual_max = std::max(rep.component_residual_max, verify_projector_commutation(u, g.members()));
        }
        // All pairs when few, otherwise a fixed random sample of pairs.
        const size_t k = comps.size();
        auto check_pair = [&](size_t a, size_t b) {
            auto both = comps[a].members();
            both.insert(both.end(), comps[b].members().begin(), comps[b].members().end());
            rep.union_residual_max = std::max(rep.union_residual_max, verify_projector_commutation(u, both));
        };
        if (k * (k - 1) / 2 <= 256) {
            for (size_t a = 0; a < k; a++) {
                for (size_t b = a + 1; b < k; b++) {
                    check_pair(a, b);
                }
            }
        } else {
            for (int t = 0; t < 256; t++) {
                size_t a = rng() % k, b = rng() % k;
                if (a != b) {
                    check_pair(a, b);
                }
            }
        }
    }

    // Negative control: half of the largest component is not invariant.
    auto largest = std::max_element(comps.begin(), comps.end(),
                                    [](const Subspace &a, const Subspace &b) { return a.size() < b.size(); });
    if (largest != comps.end() && largest->size() > 1) {
        auto members = largest->sorted_members();
        members.resize(members.size() / 2);
        for (const auto &u : steps) {
            rep.split_residual = std::max(rep.split_residual, verify_projector_commutation(u, members));
        }
    }
    return rep;
}

}  // namespace spskit
