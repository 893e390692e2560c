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

#include "parahsp/fqla.hpp"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "parahsp/encoding.hpp"
#include "parahsp/errors.hpp"
#include "support/brute.hpp"

using namespace parahsp;
using namespace parahsp::testing;

TEST(fqla, matrix_examples) {
    auto f2 = FieldCtx::make(2, 1), f3 = FieldCtx::make(3, 1);
    EXPECT_EQ(Matrix::identity(f3, 3).inverse(), Matrix::identity(f3, 3));
    EXPECT_EQ(Matrix::from_rows(f2, {{1, 1}, {1, 1}}).rank(), 1u);
    EXPECT_EQ(Matrix::from_rows(f3, {{1, 2}, {2, 1}}).det(), 0);
    EXPECT_THROW(Matrix::from_rows(f3, {{1, 2}, {2, 1}}).inverse(), Singular);
    EXPECT_THROW(Matrix(f3, 2, 3).inverse(), ShapeMismatch);
    EXPECT_THROW(Matrix(f3, 2, 3) * Matrix(f3, 2, 3), ShapeMismatch);
}

TEST(fqla, inverse_det_rank_random) {
    Rng rng(3);
    for (auto [p, r] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        auto f = FieldCtx::make(p, r);
        for (int it = 0; it < 200; ++it) {
            const std::size_t n = 1 + rng.below(4);
            Matrix a = random_matrix(f, n, n, rng);
            Matrix b = random_matrix(f, n, n, rng);
            EXPECT_EQ((a * b).det(), f->mul(a.det(), b.det()));
            EXPECT_EQ(a.invertible(), a.rank() == n);
            EXPECT_EQ(a.rref().rref(), a.rref());
            EXPECT_EQ(a.rank() + a.kernel().dim(), n);
            EXPECT_EQ(a.image().dim(), a.rank());
            if (a.invertible()) {
                EXPECT_EQ(a * a.inverse(), Matrix::identity(f, n));
            }
            for (const Vec &v : a.kernel().basis_vectors()) {
                EXPECT_EQ(a.apply(v), Vec(n, 0));
            }
        }
    }
}

TEST(fqla, subspace_examples) {
    auto f2 = FieldCtx::make(2, 1);
    auto e = [&](std::size_t n, std::size_t i) {
        Vec v(n, 0);
        v[i] = 1;
        return v;
    };
    Subspace a = Subspace::span(f2, 3, {e(3, 0)}), b = Subspace::span(f2, 3, {e(3, 1)});
    EXPECT_EQ(Subspace::full(f2, 3).intersect(a), a);
    EXPECT_EQ(a.sum(b), Subspace::span(f2, 3, {e(3, 0), e(3, 1)}));
    EXPECT_EQ(Subspace::span(f2, 2, {{1, 1}}).direct_complement(), Subspace::span(f2, 2, {{0, 1}}));
    EXPECT_EQ(Subspace::full(f2, 2).perp(), Subspace::zero(f2, 2));
    EXPECT_EQ(Subspace::span(f2, 2, {{1, 0}}).perp(), Subspace::span(f2, 2, {{0, 1}}));
    EXPECT_THROW(a.sum(Subspace::zero(f2, 2)), AmbientMismatch);
}

TEST(fqla, dimension_formula_fuzzed) {
    Rng rng(5);
    for (int it = 0; it < 1000; ++it) {
        auto f = FieldCtx::make(it % 2 ? 3 : 2, 1 + it % 3 / 2);
        const std::size_t n = 1 + rng.below(5);
        Subspace a = random_subspace(f, n, rng.below(n + 1), rng);
        Subspace b = random_subspace(f, n, rng.below(n + 1), rng);
        EXPECT_EQ(a.sum(b).dim() + a.intersect(b).dim(), a.dim() + b.dim());
        EXPECT_TRUE(a.sum(b).contains(a));
        EXPECT_TRUE(a.contains(a.intersect(b)));
        Subspace c = a.direct_complement();
        EXPECT_EQ(a.sum(c).dim(), n);
        EXPECT_TRUE(a.intersect(c).is_zero());
    }
}

TEST(fqla, trace_perp_lower_left_block_example) {
    auto f2 = FieldCtx::make(2, 1);
    // W = {X : X<e2> <= <e2>} inside Mat_2(F_2), i.e. X[0][1] = 0.
    std::vector<Vec> w_elems, want_elems;
    for_each_matrix(f2, 2, [&](const Matrix &x) {
        if (x(0, 1) == 0) {
            w_elems.push_back(Vec(x.entries().begin(), x.entries().end()));
        }
    });
    Subspace w = Subspace::span(f2, 4, w_elems);
    // {X : XV <= <e2>, X e2 = 0}: only X[1][0] free.
    Subspace want = Subspace::span(f2, 4, {{0, 0, 1, 0}});
    EXPECT_EQ(w.perp(BilinearForm::Trace), want);
    EXPECT_EQ(brute_perp(w, BilinearForm::Trace), want);
}

TEST(fqla, perp_matches_brute_force_exhaustive) {
    for (auto [p, r, n, form] : std::vector<std::tuple<unsigned, unsigned, std::size_t, BilinearForm>>{
             {2, 1, 4, BilinearForm::Trace},
             {3, 1, 4, BilinearForm::Standard},
             {2, 2, 4, BilinearForm::Trace},
             {2, 1, 5, BilinearForm::Standard},
         }) {
        auto f = FieldCtx::make(p, r);
        for (std::size_t d = 0; d <= n; ++d) {
            std::vector<Subspace> all = enumerate_subspaces(f, n, d);
            for (const Subspace &w : all) {
                Subspace pw = w.perp(form);
                EXPECT_EQ(pw.dim() + w.dim(), n);
                EXPECT_EQ(pw.perp(form), w);
                EXPECT_EQ(pw, brute_perp(w, form));
            }
            // Inclusion reversal on nested pairs.
            for (std::size_t i = 0; i + 1 < all.size() && i < 30; ++i) {
                Subspace big = all[i].sum(all[i + 1]);
                EXPECT_TRUE(all[i].perp(form).contains(big.perp(form)));
            }
        }
    }
}

TEST(fqla, gauss_binom_examples_and_identities) {
    EXPECT_EQ(gauss_binom(5, 0, 3), 1);
    EXPECT_EQ(gauss_binom(2, 1, 2), 3);
    EXPECT_EQ(gauss_binom(4, 2, 2), 35);
    EXPECT_EQ(gauss_binom(2, 3, 2), 0);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        for (unsigned a = 1; a <= 12; ++a) {
            for (unsigned b = 0; b <= a; ++b) {
                EXPECT_EQ(gauss_binom(a, b, q), gauss_binom(a, a - b, q));
                BigInt qb = 1;
                for (unsigned i = 0; i < b; ++i) {
                    qb *= q;
                }
                const BigInt rhs = qb * gauss_binom(a - 1, b, q) + (b ? gauss_binom(a - 1, b - 1, q) : BigInt(0));
                EXPECT_EQ(gauss_binom(a, b, q), rhs) << a << " " << b << " " << q;
            }
        }
    }
}

TEST(fqla, enumeration_counts_match_brute_force) {
    for (auto [p, r, n] : std::vector<std::tuple<unsigned, unsigned, std::size_t>>{
             {2, 1, 2}, {2, 1, 4}, {3, 1, 3}, {2, 2, 3}, {5, 1, 2}}) {
        auto f = FieldCtx::make(p, r);
        for (std::size_t d = 0; d <= n; ++d) {
            std::vector<Subspace> all = enumerate_subspaces(f, n, d);
            std::set<std::string> keys;
            for (const Subspace &s : all) {
                EXPECT_EQ(s.dim(), d);
                keys.insert(encode_subspace(s));
            }
            EXPECT_EQ(keys.size(), all.size());
            EXPECT_EQ(BigInt(all.size()), gauss_binom(n, d, f->q()));
            EXPECT_EQ(all.size(), brute_count_subspaces(f, n, d));
            EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [](const Subspace &a, const Subspace &b) {
                return a.pivots() < b.pivots() || (a.pivots() == b.pivots() && a.basis() < b.basis());
            }));
        }
    }
    auto f2 = FieldCtx::make(2, 1);
    EXPECT_EQ(enumerate_subspaces(f2, 2, 1).size(), 3u);
    EXPECT_EQ(enumerate_subspaces(f2, 3, 3), std::vector<Subspace>{Subspace::full(f2, 3)});
    EXPECT_THROW(enumerate_subspaces(f2, 10, 5, 1e6), BudgetExceeded);
}

TEST(fqla, gl_order_matches_enumeration) {
    for (auto [p, r, n] : std::vector<std::tuple<unsigned, unsigned, std::size_t>>{
             {2, 1, 2}, {2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {5, 1, 2}, {3, 1, 3}}) {
        auto f = FieldCtx::make(p, r);
        std::size_t count = 0;
        for_each_invertible(f, n, [&](const Matrix &) { ++count; });
        EXPECT_EQ(BigInt(count), gl_order(n, f->q()));
    }
}

TEST(fqla, random_invertible_acceptance_rate) {
    auto f2 = FieldCtx::make(2, 1);
    Rng rng(17);
    std::size_t total = 0;
    const int kDraws = 10000;
    for (int i = 0; i < kDraws; ++i) {
        std::size_t d = 0;
        random_invertible(f2, 2, rng, &d);
        total += d;
    }
    EXPECT_NEAR(double(kDraws) / total, 6.0 / 16.0, 0.02);

    // Lower bound over every (n, q) with q^{n^2} <= 2^20.
    for (auto [p, r, n] : std::vector<std::tuple<unsigned, unsigned, std::size_t>>{
             {2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 1, 4}, {3, 1, 2}, {3, 1, 3}, {2, 2, 2},
             {5, 1, 2}, {7, 1, 2}, {2, 3, 2}, {3, 2, 2}, {11, 1, 2}, {13, 1, 2}, {2, 4, 2},
             {17, 1, 2}, {19, 1, 2}, {23, 1, 2}, {5, 2, 2}, {29, 1, 2}, {31, 1, 2}, {2, 5, 2}}) {
        auto f = FieldCtx::make(p, r);
        std::size_t tries = 0;
        for (int i = 0; i < kDraws; ++i) {
            std::size_t d = 0;
            random_invertible(f, n, rng, &d);
            tries += d;
        }
        EXPECT_GE(double(kDraws) / tries, 0.28) << p << "^" << r << " n=" << n;
    }
}

TEST(fqla, random_hyperplane_uniform) {
    auto f3 = FieldCtx::make(3, 1);
    Rng rng(23);
    std::map<std::string, int> hits;
    const int kDraws = 10000;
    for (int i = 0; i < kDraws; ++i) {
        ++hits[encode_subspace(random_hyperplane(f3, 2, rng))];
    }
    ASSERT_EQ(hits.size(), 4u);
    for (auto &[k, c] : hits) {
        EXPECT_NEAR(double(c) / kDraws, 0.25, 0.02) << k;
    }
    EXPECT_TRUE(random_subspace(f3, 4, 0, rng).is_zero());
}

TEST(fqla, flags) {
    auto f2 = FieldCtx::make(2, 1);
    Matrix basis = Matrix::identity(f2, 5);
    Flag f = Flag::from_basis(basis, {2, 2, 1});
    EXPECT_EQ(f.parameter(), (std::vector<std::size_t>{2, 2, 1}));
    EXPECT_EQ(f.member(1), Subspace::span(f2, 5, {{0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}));
    EXPECT_EQ(f.member(2), Subspace::span(f2, 5, {{0, 0, 0, 0, 1}}));
    EXPECT_EQ(f.length(), 3u);
    EXPECT_THROW(Flag(f2, 2, {Subspace::full(f2, 2)}), std::invalid_argument);

    Rng rng(31);
    for (int it = 0; it < 200; ++it) {
        Matrix p = random_invertible(f2, 4, rng);
        Flag g = Flag::from_basis(p, {1, 2, 1});
        Matrix a = g.adapted_basis();
        EXPECT_TRUE(a.invertible());
        EXPECT_EQ(Flag::from_basis(a, g.parameter()), g);
        EXPECT_EQ(g.image_under(p.inverse()), Flag::from_basis(Matrix::identity(f2, 4), {1, 2, 1}));
    }
}

TEST(fqla, encodings_round_trip) {
    auto f4 = FieldCtx::make(2, 2);
    Rng rng(41);
    for (int it = 0; it < 100; ++it) {
        Matrix m = random_matrix(f4, 3, 3, rng);
        EXPECT_EQ(parse_matrix(f4, encode_matrix(m), 3), m);
        Subspace s = random_subspace(f4, 3, rng.below(4), rng);
        EXPECT_EQ(parse_subspace(f4, encode_subspace(s)), s);
        Matrix p = random_invertible(f4, 3, rng);
        Flag fl = Flag::from_basis(p, {1, 1, 1});
        EXPECT_EQ(parse_flag(f4, encode_flag(fl)), fl);
    }
    EXPECT_EQ(encode_subspace(Subspace::span(f4, 3, {{1, 0, 0}, {0, 1, 1}})), "3:1,0,0;0,1,1");
    EXPECT_EQ(encode_flag(Flag::trivial(f4, 3)), "3");
    EXPECT_THROW(parse_subspace(f4, "3:1,1,0;1,0,0"), ParseError);
    EXPECT_THROW(parse_matrix(f4, "1,7", 2), ParseError);
    EXPECT_THROW(parse_flag(f4, "2|1,0|0,1"), ParseError);
    Label l("abc");
    EXPECT_EQ(Label::deserialize(l.serialize()), l);
    EXPECT_EQ(l.serialize().substr(0, 4), std::string("\x03\0\0\0", 4));
    EXPECT_THROW(Label::deserialize(std::string("\x05\0\0\0ab", 6)), ParseError);
}
