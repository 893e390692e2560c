// Copyright 2026 The parahsp Authors
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

// Exact-probability and brute-force checks for the hsp algorithms, shared
// by the unit tests and the acceptance binary.

#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "parahsp/hsp.hpp"
#include "support/brute.hpp"

namespace parahsp::testing {

/// Every matrix of GL_n(F_q) satisfying `keep`, by scanning Mat_n.
inline std::vector<Matrix> brute_group(const FieldPtr &ctx, std::size_t n,
                                       const std::function<bool(const Matrix &)> &keep) {
    std::vector<Matrix> out;
    for_each_matrix(ctx, n, [&](const Matrix &x) {
        if (x.invertible() && keep(x)) {
            out.push_back(x);
        }
    });
    return out;
}

inline bool fixes_pointwise(const Matrix &x, const Subspace &u) {
    for (const Vec &v : u.basis_vectors()) {
        if (x.apply(v) != v) {
            return false;
        }
    }
    return true;
}

inline bool image_inside(const Matrix &x, const Subspace &u) {
    const Matrix d = x - Matrix::identity(x.ctx(), x.rows());
    for (std::size_t j = 0; j < d.cols(); ++j) {
        if (!u.contains(d.column(j))) {
            return false;
        }
    }
    return true;
}

/// Sum of (X - I)V over H cap N, N = {X : (X-I)V <= U', (X-I)U' = 0}.
inline Subspace brute_image_sum_in_n(const Flag &fl, const Subspace &hyper) {
    const auto hn = brute_group(fl.ctx(), fl.ambient(), [&](const Matrix &x) {
        return fixes_pointwise(x, hyper) && image_inside(x, hyper) && stabilizes_flag(x, fl);
    });
    return sum_of_images(fl.ctx(), fl.ambient(), hn);
}

struct EquationCheck {
    bool applies[3] = {false, false, false};
    bool holds[3] = {false, false, false};
};

/// The three image-sum identities for one (flag, hyperplane) instance.
inline EquationCheck check_hyperplane_equations(const Flag &fl, const Subspace &hyper) {
    const FieldPtr &ctx = fl.ctx();
    const std::size_t n = fl.ambient();
    const std::size_t k = fl.length();
    const Subspace t = fl.member(k - 1);
    const auto hg = brute_group(ctx, n, [&](const Matrix &x) {
        return fixes_pointwise(x, hyper) && stabilizes_flag(x, fl);
    });
    std::vector<Matrix> hn;
    for (const Matrix &x : hg) {
        if (image_inside(x, hyper)) {
            hn.push_back(x);
        }
    }
    const Subspace sum_g = sum_of_images(ctx, n, hg);
    const Subspace sum_n = sum_of_images(ctx, n, hn);
    EquationCheck c;
    c.applies[0] = c.applies[1] = !hyper.contains(t);
    c.holds[0] = sum_g == t;
    c.holds[1] = sum_n == hyper.intersect(t);
    if (k >= 2 && t.dim() == 1) {
        const Subspace prev = fl.member(k - 2);
        c.applies[2] = hyper.contains(t) && !hyper.contains(prev);
        c.holds[2] = sum_n == hyper.intersect(prev);
    }
    return c;
}

/// Fraction of hyperplanes U' with T <= U' and U_{k-2} not <= U'.
inline double good_hyperplane_fraction(const Flag &fl) {
    const std::size_t k = fl.length();
    const Subspace t = fl.member(k - 1), prev = fl.member(k - 2);
    std::size_t good = 0, all = 0;
    for (const Subspace &h : enumerate_subspaces(fl.ctx(), fl.ambient(), fl.ambient() - 1)) {
        ++all;
        good += h.contains(t) && !h.contains(prev);
    }
    return double(good) / double(all);
}

/// Fraction of hyperplanes W' with W' cap U_{n-2} = U_{n-1}.
inline double unipotent_good_hyperplane_fraction(const Flag &fl) {
    const std::size_t n = fl.ambient();
    const Subspace last = fl.member(n - 1), prev = fl.member(n - 2);
    std::size_t good = 0, all = 0;
    for (const Subspace &h : enumerate_subspaces(fl.ctx(), n, n - 1)) {
        ++all;
        good += h.intersect(prev) == last;
    }
    return double(good) / double(all);
}

inline Verdict brute_verdict(const Flag &fl, const Subspace &w) {
    const Subspace t = fl.member(fl.length() - 1);
    if (!t.contains(w)) {
        return Verdict::NotContained;
    }
    return t == w ? Verdict::Equal : Verdict::ContainedProper;
}

inline Verdict brute_super_verdict(const Flag &fl, const Subspace &w) {
    const Subspace u1 = fl.member(1);
    if (!w.contains(u1)) {
        return Verdict::NotContained;
    }
    return u1 == w ? Verdict::Equal : Verdict::ContainedProper;
}

struct MaxParabolicMass {
    double left_perp = 0;          // mass on (AW)^perp
    double left_rank_correct = 0;  // mass on X in (AW)^perp with XV = U
    double right_kernel_correct = 0; // right cosets: mass on X with ker X = U
};

/// Exact per-iteration probabilities of one coset-state measurement, A uniform.
inline MaxParabolicMass max_parabolic_mass(const GroupView &view, const Subspace &u) {
    const FieldPtr &ctx = view.ctx();
    const std::size_t n = view.dim();
    std::vector<Matrix> perp_a; // {Y : YV <= U, YU = 0}
    for_each_matrix(ctx, n, [&](const Matrix &y) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!u.contains(y.column(j))) {
                return;
            }
        }
        for (const Vec &b : u.basis_vectors()) {
            for (Elem e : y.apply(b)) {
                if (e != 0) {
                    return;
                }
            }
        }
        perp_a.push_back(y);
    });
    MaxParabolicMass out;
    CosetSampler left = gl_sampler(view.with_side(Side::Left), 1e7);
    const StateSpace &space = left.space();
    std::vector<Matrix> gl;
    for_each_invertible(ctx, n, [&](const Matrix &x) { gl.push_back(x); });
    for (std::size_t c = 0; c < left.num_cosets(); ++c) {
        const double w = double(left.members(c).size()) / double(left.group_size());
        const Matrix ainv = gl[left.members(c).front()].inverse();
        const auto &dist = left.fourier_distribution(c);
        for (const Matrix &y : perp_a) {
            const double pr = dist[space.index_of(y * ainv)];
            out.left_perp += w * pr;
            if (y.image() == u) {
                out.left_rank_correct += w * pr;
            }
        }
    }
    CosetSampler right = gl_sampler(view.with_side(Side::Right), 1e7);
    for (std::size_t c = 0; c < right.num_cosets(); ++c) {
        const double w = double(right.members(c).size()) / double(right.group_size());
        const auto &dist = right.fourier_distribution(c);
        for (std::uint64_t i = 0; i < dist.size(); ++i) {
            if (dist[i] > 0 && space.matrix_of(i).kernel() == u) {
                out.right_kernel_correct += w * dist[i];
            }
        }
    }
    return out;
}

/// Exact probability that n-1 independent coset-state samples span W^perp,
/// W = <(1, v)>.
inline double complement_basis_rate(const GroupView &view, const Vec &v) {
    const FieldPtr &ctx = view.ctx();
    const std::size_t n = view.dim();
    CosetSampler s = affine_sampler(view, 1e7);
    std::vector<double> p(s.space().dim(), 0.0);
    for (std::size_t c = 0; c < s.num_cosets(); ++c) {
        const double w = double(s.members(c).size()) / double(s.group_size());
        const auto &d = s.fourier_distribution(c);
        for (std::size_t i = 0; i < d.size(); ++i) {
            p[i] += w * d[i];
        }
    }
    Vec wv(n);
    wv[0] = 1;
    std::copy(v.begin(), v.end(), wv.begin() + 1);
    const Subspace perp = brute_perp(Subspace::span(ctx, n, {wv}), BilinearForm::Standard);
    const std::vector<Vec> elems = elements_of(perp);
    double rate = 0;
    std::vector<std::size_t> pick(n - 1, 0);
    while (true) {
        std::vector<Vec> vs;
        double pr = 1;
        for (std::size_t i : pick) {
            vs.push_back(elems[i]);
            pr *= p[s.space().index_of(elems[i])];
        }
        if (Subspace::span(ctx, n, vs).dim() == n - 1) {
            rate += pr;
        }
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == elems.size()) {
            pick[k++] = 0;
        }
        if (k == pick.size()) {
            break;
        }
    }
    return rate;
}

/// {X : f(X) = f(I)} equals the spec's elements, over all of GL_n when
/// |GL_n| <= 20160 and over 1000 random elements otherwise.
inline bool partition_matches(const HidingOracle &oracle, const SubgroupSpec &spec, Rng &rng) {
    const std::size_t n = oracle.ambient();
    const Label id = oracle.superposition_label(Matrix::identity(oracle.ctx(), n));
    auto agrees = [&](const Matrix &x) { return (oracle.superposition_label(x) == id) == membership(x, spec); };
    if (gl_order(unsigned(n), oracle.ctx()->q()) <= 20160) {
        bool ok = true;
        for_each_invertible(oracle.ctx(), n, [&](const Matrix &x) { ok = ok && agrees(x); });
        return ok;
    }
    for (int t = 0; t < 1000; ++t) {
        if (!agrees(random_invertible(oracle.ctx(), n, rng))) {
            return false;
        }
    }
    return true;
}

inline bool same_group_by_closure(const SubgroupSpec &a, const SubgroupSpec &b) {
    return closure(a.ctx(), a.ambient(), generators(a)) == closure(b.ctx(), b.ambient(), generators(b));
}

} // namespace parahsp::testing
