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

#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "parahsp/errors.hpp"
#include "parahsp/kernels.hpp"
#include "parahsp/qsim.hpp"
#include "support/brute.hpp"

using namespace parahsp;
using parahsp::testing::elements_of;
using parahsp::testing::for_each_vector;

namespace {

StateVector random_state(const StateSpace &space, Rng &rng) {
    StateVector s(space);
    double n = 0;
    for (auto &a : s.amplitudes()) {
        a = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
        n += std::norm(a);
    }
    for (auto &a : s.amplitudes()) {
        a /= std::sqrt(n);
    }
    return s;
}

std::vector<kernels::Isa> isas() {
    std::vector<kernels::Isa> out{kernels::Isa::Scalar};
    if (kernels::isa_available(kernels::Isa::Avx2)) {
        out.push_back(kernels::Isa::Avx2);
    }
    return out;
}

struct IsaGuard {
    kernels::Isa saved = kernels::active_isa();
    ~IsaGuard() { kernels::set_isa(saved); }
};

std::vector<std::uint64_t> indices_of(const StateSpace &space, const std::vector<Vec> &pts, const Vec &off) {
    const FieldCtx &f = *space.ctx();
    std::vector<std::uint64_t> out;
    for (const Vec &p : pts) {
        Vec v = p;
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = f.add(v[i], off[i]);
        }
        out.push_back(space.index_of(v));
    }
    return out;
}

Vec random_vec(const FieldPtr &ctx, std::size_t m, Rng &rng) {
    Vec v(m);
    for (auto &x : v) {
        x = Elem(rng.below(ctx->q()));
    }
    return v;
}

} // namespace

TEST(qsim, index_round_trip) {
    auto f = FieldCtx::make(3, 1);
    auto space = StateSpace::matrices(f, 2);
    EXPECT_EQ(space.dim(), 81u);
    Matrix m = Matrix::from_rows(f, {{1, 2}, {0, 1}});
    EXPECT_EQ(space.index_of(m), 1u * 27 + 2u * 9 + 0u * 3 + 1u);
    EXPECT_EQ(space.matrix_of(space.index_of(m)), m);
    for (std::uint64_t i = 0; i < space.dim(); ++i) {
        EXPECT_EQ(space.index_of(space.coords_of(i)), i);
    }
}

TEST(qsim, subset_state_examples) {
    auto f = FieldCtx::make(2, 1);
    auto space = StateSpace::matrices(f, 2);
    std::vector<std::uint64_t> zero{0};
    StateVector s = subset_state(space, zero);
    EXPECT_EQ(s[0], Complex(1, 0));
    EXPECT_NEAR(s.norm_sq(), 1.0, 1e-12);

    std::vector<std::uint64_t> all;
    for (std::uint64_t i = 0; i < 16; ++i) {
        all.push_back(i);
    }
    StateVector u = subset_state(space, all);
    for (std::uint64_t i = 0; i < 16; ++i) {
        EXPECT_NEAR(u[i].real(), 0.25, 1e-15);
    }
    EXPECT_THROW(subset_state(space, std::vector<std::uint64_t>{}), EmptySet);
    EXPECT_THROW(StateVector(StateSpace::matrices(f, 6)), BudgetExceeded);

    // Offset form: {X - I : X in the Borel subgroup}.
    std::vector<Matrix> borel{Matrix::from_rows(f, {{1, 0}, {0, 1}}), Matrix::from_rows(f, {{1, 0}, {1, 1}})};
    Matrix minus_i = Matrix::identity(f, 2);
    StateVector b = subset_state(space, borel, &minus_i);
    EXPECT_NEAR(b[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(b[space.index_of(Matrix::from_rows(f, {{0, 0}, {1, 0}}))].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(qsim, fast_transform_matches_naive) {
    IsaGuard guard;
    Rng rng(21);
    struct Case {
        unsigned p, r;
        std::size_t m;
        bool matrix;
    };
    const Case cases[] = {{2, 1, 6, false}, {3, 1, 4, false}, {2, 2, 3, false}, {5, 1, 2, false},
                          {2, 3, 2, false}, {2, 1, 2, true},  {3, 1, 2, true},  {2, 2, 2, true}};
    for (auto isa : isas()) {
        kernels::set_isa(isa);
        for (const Case &c : cases) {
            auto f = FieldCtx::make(c.p, c.r);
            const StateSpace space = c.matrix ? StateSpace::matrices(f, c.m) : StateSpace::vectors(f, c.m);
            for (BilinearForm form : {BilinearForm::Standard, BilinearForm::Trace}) {
                if (form == BilinearForm::Trace && !c.matrix) {
                    continue;
                }
                StateVector s = random_state(space, rng);
                std::vector<Complex> in(s.amplitudes().begin(), s.amplitudes().end());
                auto want = parahsp::testing::naive_qft(f, space.coords(), form, in);
                StateVector got = qft_phi(s, form);
                for (std::size_t i = 0; i < want.size(); ++i) {
                    ASSERT_LT(std::abs(want[i] - got[i]), 1e-9)
                        << kernels::isa_name(isa) << " q=" << f->q() << " coords=" << space.coords();
                }
            }
        }
    }
}

TEST(qsim, unitarity_and_basis_zero) {
    Rng rng(8);
    for (auto [p, r, n] : {std::tuple{2u, 1u, 4u}, std::tuple{3u, 1u, 3u}, std::tuple{2u, 2u, 3u}}) {
        auto f = FieldCtx::make(p, r);
        auto space = StateSpace::matrices(f, n);
        for (int t = 0; t < 5; ++t) {
            StateVector s = random_state(space, rng);
            for (BilinearForm form : {BilinearForm::Standard, BilinearForm::Trace}) {
                EXPECT_NEAR(qft_phi(s, form).norm_sq(), 1.0, 1e-9);
            }
        }
        StateVector z = qft_phi(StateVector::basis(space, 0), BilinearForm::Trace);
        const double a = 1.0 / std::sqrt(double(space.dim()));
        for (std::uint64_t i = 0; i < z.size(); ++i) {
            ASSERT_NEAR(std::abs(z[i] - Complex(a, 0)), 0.0, 1e-12);
        }
    }
}

TEST(qsim, subspace_coset_is_uniform_on_perp) {
    Rng rng(3);
    for (auto [p, r, m] : {std::tuple{2u, 1u, 4u}, std::tuple{3u, 1u, 3u}, std::tuple{2u, 2u, 2u}, std::tuple{5u, 1u, 2u}}) {
        auto f = FieldCtx::make(p, r);
        auto space = StateSpace::vectors(f, m);
        for (std::size_t d = 0; d <= m; ++d) {
            for (const Subspace &w : enumerate_subspaces(f, m, d)) {
                const Subspace perp = parahsp::testing::brute_perp(w, BilinearForm::Standard);
                const auto pts = elements_of(w);
                for (int t = 0; t < 3; ++t) {
                    const Vec v0 = random_vec(f, m, rng);
                    auto dist = distribution(qft_phi(subset_state(space, indices_of(space, pts, v0)),
                                                     BilinearForm::Standard));
                    const double want = 1.0 / double(elements_of(perp).size());
                    for (std::uint64_t i = 0; i < dist.size(); ++i) {
                        const bool in = perp.contains(space.coords_of(i));
                        ASSERT_NEAR(dist[i], in ? want : 0.0, 1e-9);
                    }
                }
            }
        }
    }
}

TEST(qsim, sub_coset_amplitudes_on_perp) {
    Rng rng(17);
    auto f = FieldCtx::make(3, 1);
    const std::size_t m = 4;
    auto space = StateSpace::vectors(f, m);
    const double vsize = std::pow(3.0, double(m));
    for (int t = 0; t < 100; ++t) {
        const std::size_t d = 1 + rng.below(m);
        const Subspace w = random_subspace(f, m, d, rng);
        // W' spanned by a random subset of a basis of W.
        std::vector<Vec> sub;
        for (const Vec &b : w.basis_vectors()) {
            if (rng.below(2) == 0) {
                sub.push_back(b);
            }
        }
        const Subspace wp = Subspace::span(f, m, sub);
        const Vec v0 = random_vec(f, m, rng);
        StateVector s = qft_phi(subset_state(space, indices_of(space, elements_of(wp), v0)), BilinearForm::Standard);
        const double want = std::sqrt(std::pow(3.0, double(wp.dim())) / vsize);
        for (const Vec &u : elements_of(parahsp::testing::brute_perp(w, BilinearForm::Standard))) {
            ASSERT_NEAR(std::abs(s[space.index_of(u)]), want, 1e-9);
        }
    }
}

TEST(qsim, postselect_success_probability) {
    for (auto [p, n, gl] : {std::tuple{2u, 2u, 6.0}, std::tuple{3u, 2u, 48.0}, std::tuple{2u, 3u, 168.0}}) {
        auto f = FieldCtx::make(p, 1);
        auto space = StateSpace::matrices(f, n);
        std::vector<std::uint64_t> all(space.dim());
        for (std::uint64_t i = 0; i < all.size(); ++i) {
            all[i] = i;
        }
        auto res = postselect_invertible(subset_state(space, all));
        EXPECT_NEAR(res.success_prob, gl / double(space.dim()), 1e-12);
        EXPECT_NEAR(res.state.norm_sq(), 1.0, 1e-12);
        auto again = postselect_invertible(res.state);
        EXPECT_NEAR(again.success_prob, 1.0, 1e-12);
    }
    auto f = FieldCtx::make(2, 1);
    auto space = StateSpace::matrices(f, 2);
    EXPECT_THROW(postselect_invertible(StateVector::basis(space, 0)), ZeroMass);
}

TEST(qsim, measurement) {
    auto f = FieldCtx::make(2, 1);
    auto space = StateSpace::vectors(f, 3);
    Rng rng(1);
    auto out = measure(StateVector::basis(space, 5), rng);
    EXPECT_EQ(out.index, 5u);
    EXPECT_DOUBLE_EQ(out.probability, 1.0);

    std::vector<std::uint64_t> four{0, 1, 2, 3};
    auto d = distribution(subset_state(space, four));
    for (int i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(d[i], 0.25);
    }
    std::vector<int> hits(8, 0);
    for (int t = 0; t < 4000; ++t) {
        hits[sample_index(d, rng)]++;
    }
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(hits[i] / 4000.0, 0.25, 0.03);
    }
    for (int i = 4; i < 8; ++i) {
        EXPECT_EQ(hits[i], 0);
    }

    std::stringstream ss;
    write_distribution(ss, d);
    EXPECT_EQ(ss.str().size(), 8 * sizeof(double));
    EXPECT_EQ(read_distribution(ss), d);
}

TEST(qsim, prepared_coset_states) {
    auto f = FieldCtx::make(2, 1);
    Rng rng(4);
    {
        const Flag borel = Flag::from_basis(Matrix::identity(f, 2), {1, 1});
        HidingOracle oracle(SubgroupSpec::parabolic(borel), Side::Left);
        auto space = StateSpace::matrices(f, 2);
        for (int t = 0; t < 10; ++t) {
            StateVector s = prepare_coset_state(oracle, rng);
            std::set<std::string> labels;
            int support = 0;
            for (std::uint64_t i = 0; i < s.size(); ++i) {
                if (std::abs(s[i]) > 0) {
                    ++support;
                    EXPECT_NEAR(std::abs(s[i]), 1 / std::sqrt(2.0), 1e-12);
                    labels.insert(oracle.query(space.matrix_of(i)).bytes());
                }
            }
            EXPECT_EQ(support, 2);
            EXPECT_EQ(labels.size(), 1u);
        }
        EXPECT_EQ(oracle.queries(), 10u + 20u);
    }
    {
        HidingOracle whole(SubgroupSpec::setwise(Subspace::full(f, 3)), Side::Right);
        StateVector s = prepare_coset_state(whole, rng);
        int support = 0;
        for (std::uint64_t i = 0; i < s.size(); ++i) {
            support += std::abs(s[i]) > 0;
        }
        EXPECT_EQ(support, 168);
    }
    {
        auto f3 = FieldCtx::make(3, 1);
        HidingOracle aff(SubgroupSpec::affine_complement(f3, Vec{1, 2}), Side::Right);
        auto space = StateSpace::matrices(f3, 3);
        StateVector s = prepare_coset_state(aff, rng);
        std::set<std::string> labels;
        int support = 0;
        for (std::uint64_t i = 0; i < s.size(); ++i) {
            if (std::abs(s[i]) > 0) {
                ++support;
                labels.insert(aff.query(space.matrix_of(i)).bytes());
            }
        }
        EXPECT_EQ(support, 2);
        EXPECT_EQ(labels.size(), 1u);
    }
}

TEST(qsim, coset_sampler_groups_and_caches) {
    auto f = FieldCtx::make(2, 1);
    const std::size_t n = 3;
    const Subspace u = Subspace::span(f, n, {Vec{1, 0, 0}});
    HidingOracle oracle(SubgroupSpec::setwise(u), Side::Left);
    std::vector<Matrix> gl;
    for_each_invertible(f, n, [&](const Matrix &x) { gl.push_back(x); });
    auto space = StateSpace::matrices(f, n);
    std::vector<std::uint64_t> pts;
    for (const Matrix &x : gl) {
        pts.push_back(space.index_of(x));
    }
    CosetSampler sampler(space, BilinearForm::Trace, pts, oracle.superposition_labels(gl));
    // |GL_3(F_2)| / |stabilizer of a line| = number of lines = 7.
    EXPECT_EQ(sampler.num_cosets(), 7u);
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        auto smp = sampler.sample(rng);
        EXPECT_EQ(sampler.coset_of(smp.element), smp.coset);
        EXPECT_GT(sampler.fourier_distribution(smp.coset)[smp.outcome], 0.0);
    }
    double total = 0;
    for (double x : sampler.fourier_distribution(0)) {
        total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
}
