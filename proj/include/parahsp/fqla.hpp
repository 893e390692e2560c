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

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "parahsp/fq.hpp"
#include "parahsp/rng.hpp"

namespace parahsp {

using BigInt = boost::multiprecision::cpp_int;
/// Column vector over F_q, entries are element indices.
using Vec = std::vector<Elem>;

class Subspace;

/// Dense row-major matrix over F_q. Vectors are columns: M acts as v -> M v.
class Matrix {
  public:
    Matrix(FieldPtr ctx, std::size_t rows, std::size_t cols);
    Matrix(FieldPtr ctx, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

    static Matrix identity(FieldPtr ctx, std::size_t n);
    /// Convenience for literals; entries are element indices.
    static Matrix from_rows(FieldPtr ctx, std::initializer_list<std::initializer_list<unsigned>> rows);
    static Matrix from_columns(FieldPtr ctx, std::size_t rows, const std::vector<Vec> &columns);
    /// rows x rows matrix diag(M, I).
    static Matrix embed_top_left(const Matrix &m, std::size_t rows);

    const FieldPtr &ctx() const { return ctx_; }
    const FieldCtx &field() const { return *ctx_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Elem &at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::span<const Elem> entries() const { return a_; }
    Vec row(std::size_t i) const;
    Vec column(std::size_t j) const;

    Matrix operator*(const Matrix &o) const;
    Matrix operator+(const Matrix &o) const;
    Matrix operator-(const Matrix &o) const;
    Vec apply(std::span<const Elem> v) const;
    Matrix transpose() const;

    /// Reduced row echelon form; optionally reports pivot columns.
    Matrix rref(std::vector<std::size_t> *pivots = nullptr) const;
    std::size_t rank() const;
    Elem det() const;
    bool invertible() const;
    /// Throws Singular if rank-deficient, ShapeMismatch if not square.
    Matrix inverse() const;
    /// True iff the matrix equals lambda * I for some lambda.
    bool is_scalar() const;

    /// {v : M v = 0}.
    Subspace kernel() const;
    /// Column space M V.
    Subspace image() const;

    bool operator==(const Matrix &o) const;
    bool operator<(const Matrix &o) const { return a_ < o.a_; }

  private:
    FieldPtr ctx_;
    std::size_t rows_, cols_;
    std::vector<Elem> a_;
};

/// Which nonsingular symmetric form defines perpendicular spaces.
enum class BilinearForm {
    /// sum_i u_i v_i on F_q^m.
    Standard,
    /// tr(A B) on Mat_n(F_q), matrices vectorized row-major into F_q^{n^2}.
    Trace,
};

/**
 * @brief Subspace of F_q^n stored by its canonical RREF row basis.
 *
 * Two subspaces are equal iff their canonical bases are entrywise equal.
 */
class Subspace {
  public:
    static Subspace zero(FieldPtr ctx, std::size_t n);
    static Subspace full(FieldPtr ctx, std::size_t n);
    static Subspace span(FieldPtr ctx, std::size_t n, const std::vector<Vec> &vectors);
    static Subspace row_space(const Matrix &m);

    const FieldPtr &ctx() const { return basis_.ctx(); }
    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient(); }
    /// dim x n RREF matrix.
    const Matrix &basis() const { return basis_; }
    std::vector<Vec> basis_vectors() const;
    const std::vector<std::size_t> &pivots() const { return pivots_; }

    /// Canonical representative of the coset v + this.
    Vec reduce(std::span<const Elem> v) const;
    bool contains(std::span<const Elem> v) const;
    bool contains(const Subspace &o) const;

    Subspace sum(const Subspace &o) const;
    Subspace intersect(const Subspace &o) const;
    /// Span of the standard vectors at non-pivot positions.
    Subspace direct_complement() const;
    Subspace perp(BilinearForm form = BilinearForm::Standard) const;
    /// X U for a square matrix X.
    Subspace image_under(const Matrix &x) const;
    /// Maps a subspace given in coordinates w.r.t. the columns of `frame`
    /// (an n x m matrix) into F_q^n.
    static Subspace from_coordinates(const Matrix &frame, const Subspace &coords);

    bool operator==(const Subspace &o) const { return basis_ == o.basis_; }
    bool operator<(const Subspace &o) const;

  private:
    explicit Subspace(Matrix basis);
    void check_ambient(const Subspace &o) const;

    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/**
 * @brief Flag V = U_0 > U_1 > ... > U_{k-1} > U_k = 0 in F_q^n.
 *
 * Only the proper nonzero members U_1..U_{k-1} are stored; an empty chain is
 * the trivial flag V > 0.
 */
class Flag {
  public:
    Flag(FieldPtr ctx, std::size_t n, std::vector<Subspace> chain);
    static Flag trivial(FieldPtr ctx, std::size_t n) { return Flag(std::move(ctx), n, {}); }
    /// Flag whose members are spanned by trailing columns of `basis`
    /// (an invertible n x n matrix) with the given block sizes n_1..n_k.
    static Flag from_basis(const Matrix &basis, const std::vector<std::size_t> &parameter);

    const FieldPtr &ctx() const { return ctx_; }
    std::size_t ambient() const { return n_; }
    const std::vector<Subspace> &chain() const { return chain_; }
    std::size_t length() const { return chain_.size() + 1; }
    bool complete() const { return chain_.size() + 1 == n_; }
    std::vector<std::size_t> parameter() const;
    /// U_i for 0 <= i <= k (U_0 = V, U_k = 0).
    Subspace member(std::size_t i) const;
    /// The flag X F.
    Flag image_under(const Matrix &x) const;
    /// An invertible matrix whose trailing columns span each member.
    Matrix adapted_basis() const;

    bool operator==(const Flag &o) const { return n_ == o.n_ && chain_ == o.chain_; }

  private:
    FieldPtr ctx_;
    std::size_t n_;
    std::vector<Subspace> chain_;
};

/// Number of b-dimensional subspaces of F_q^a (0 if b > a).
BigInt gauss_binom(unsigned a, unsigned b, unsigned q);
/// |GL_n(F_q)|.
BigInt gl_order(unsigned n, unsigned q);

/// Visits every d-dimensional subspace of F_q^n once, ordered by pivot set
/// (lexicographic) and then by free entries (row-major, mixed radix).
/// Throws BudgetExceeded if the number of subspaces exceeds `budget`.
void for_each_subspace(const FieldPtr &ctx, std::size_t n, std::size_t d,
                       const std::function<void(const Subspace &)> &fn,
                       double budget = 1e7);
std::vector<Subspace> enumerate_subspaces(const FieldPtr &ctx, std::size_t n, std::size_t d,
                                          double budget = 1e7);

/// Visits every invertible n x n matrix in index order.
void for_each_invertible(const FieldPtr &ctx, std::size_t n,
                         const std::function<void(const Matrix &)> &fn, double budget = 1e7);

Matrix random_matrix(const FieldPtr &ctx, std::size_t rows, std::size_t cols, Rng &rng);
/// Rejection sampling on the rank; `draws` (if given) receives the number
/// of matrices drawn.
Matrix random_invertible(const FieldPtr &ctx, std::size_t n, Rng &rng, std::size_t *draws = nullptr);
Subspace random_subspace(const FieldPtr &ctx, std::size_t n, std::size_t d, Rng &rng);
inline Subspace random_hyperplane(const FieldPtr &ctx, std::size_t n, Rng &rng) {
    return random_subspace(ctx, n, n - 1, rng);
}

} // namespace parahsp
