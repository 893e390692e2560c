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

#include <algorithm>
#include <cmath>
#include <string>

#include "parahsp/errors.hpp"

namespace parahsp {

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(FieldPtr ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix::Matrix(FieldPtr ctx, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) {
        throw ShapeMismatch("entry count " + std::to_string(a_.size()) + " != " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

Matrix Matrix::identity(FieldPtr ctx, std::size_t n) {
    Matrix m(std::move(ctx), n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1;
    }
    return m;
}

Matrix Matrix::from_rows(FieldPtr ctx, std::initializer_list<std::initializer_list<unsigned>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<Elem> e;
    e.reserve(r * c);
    for (const auto &row : rows) {
        if (row.size() != c) {
            throw ShapeMismatch("ragged matrix literal");
        }
        for (unsigned v : row) {
            e.push_back(static_cast<Elem>(v % ctx->q()));
        }
    }
    return Matrix(std::move(ctx), r, c, std::move(e));
}

Matrix Matrix::from_columns(FieldPtr ctx, std::size_t rows, const std::vector<Vec> &columns) {
    Matrix m(std::move(ctx), rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) {
            throw ShapeMismatch("column length mismatch");
        }
        for (std::size_t i = 0; i < rows; ++i) {
            m.at(i, j) = columns[j][i];
        }
    }
    return m;
}

Matrix Matrix::embed_top_left(const Matrix &m, std::size_t rows) {
    if (!m.square() || m.rows() > rows) {
        throw ShapeMismatch("cannot embed block");
    }
    Matrix out = identity(m.ctx(), rows);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out.at(i, j) = m(i, j);
        }
    }
    return out;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

Vec Matrix::column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        v[i] = (*this)(i, j);
    }
    return v;
}

Matrix Matrix::operator*(const Matrix &o) const {
    if (cols_ != o.rows_) {
        throw ShapeMismatch("product of " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                            " and " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    }
    const FieldCtx &f = *ctx_;
    Matrix out(ctx_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem a = (*this)(i, k);
            if (a == 0) {
                continue;
            }
            for (std::size_t j = 0; j < o.cols_; ++j) {
                out.at(i, j) = f.add(out(i, j), f.mul(a, o(k, j)));
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw ShapeMismatch("sum of differently shaped matrices");
    }
    Matrix out(ctx_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) {
        out.a_[i] = ctx_->add(a_[i], o.a_[i]);
    }
    return out;
}

Matrix Matrix::operator-(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw ShapeMismatch("difference of differently shaped matrices");
    }
    Matrix out(ctx_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) {
        out.a_[i] = ctx_->sub(a_[i], o.a_[i]);
    }
    return out;
}

Vec Matrix::apply(std::span<const Elem> v) const {
    if (v.size() != cols_) {
        throw ShapeMismatch("vector length mismatch");
    }
    const FieldCtx &f = *ctx_;
    Vec out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        Elem acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            acc = f.add(acc, f.mul((*this)(i, j), v[j]));
        }
        out[i] = acc;
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(ctx_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out.at(j, i) = (*this)(i, j);
        }
    }
    return out;
}

Matrix Matrix::rref(std::vector<std::size_t> *pivots) const {
    const FieldCtx &f = *ctx_;
    Matrix m = *this;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t sel = r;
        while (sel < rows_ && m(sel, c) == 0) {
            ++sel;
        }
        if (sel == rows_) {
            continue;
        }
        if (sel != r) {
            for (std::size_t j = 0; j < cols_; ++j) {
                std::swap(m.at(sel, j), m.at(r, j));
            }
        }
        const Elem s = f.inv(m(r, c));
        for (std::size_t j = c; j < cols_; ++j) {
            m.at(r, j) = f.mul(m(r, j), s);
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || m(i, c) == 0) {
                continue;
            }
            const Elem factor = m(i, c);
            for (std::size_t j = c; j < cols_; ++j) {
                m.at(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
            }
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) {
        *pivots = std::move(piv);
    }
    return m;
}

std::size_t Matrix::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

Elem Matrix::det() const {
    if (!square()) {
        throw ShapeMismatch("determinant of non-square matrix");
    }
    const FieldCtx &f = *ctx_;
    Matrix m = *this;
    Elem d = 1;
    const std::size_t n = rows_;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m(sel, c) == 0) {
            ++sel;
        }
        if (sel == n) {
            return 0;
        }
        if (sel != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(sel, j), m.at(c, j));
            }
            d = f.neg(d);
        }
        const Elem pivot = m(c, c);
        d = f.mul(d, pivot);
        const Elem s = f.inv(pivot);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) {
                continue;
            }
            const Elem factor = f.mul(m(i, c), s);
            for (std::size_t j = c; j < n; ++j) {
                m.at(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
            }
        }
    }
    return d;
}

bool Matrix::invertible() const { return square() && det() != 0; }

Matrix Matrix::inverse() const {
    if (!square()) {
        throw ShapeMismatch("inverse of non-square matrix");
    }
    const std::size_t n = rows_;
    Matrix aug(ctx_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug.at(i, j) = (*this)(i, j);
        }
        aug.at(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    Matrix r = aug.rref(&piv);
    if (piv.size() < n || piv[n - 1] != n - 1) {
        throw Singular("matrix is not invertible");
    }
    Matrix out(ctx_, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.at(i, j) = r(i, n + j);
        }
    }
    return out;
}

bool Matrix::is_scalar() const {
    if (!square()) {
        return false;
    }
    const Elem lambda = rows_ ? (*this)(0, 0) : 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if ((*this)(i, j) != (i == j ? lambda : 0)) {
                return false;
            }
        }
    }
    return true;
}

Subspace Matrix::kernel() const {
    const FieldCtx &f = *ctx_;
    std::vector<std::size_t> piv;
    Matrix r = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : piv) {
        is_pivot[c] = true;
    }
    std::vector<Vec> vecs;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        Vec v(cols_, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) {
            v[piv[i]] = f.neg(r(i, free));
        }
        vecs.push_back(std::move(v));
    }
    return Subspace::span(ctx_, cols_, vecs);
}

Subspace Matrix::image() const { return Subspace::row_space(transpose()); }

bool Matrix::operator==(const Matrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

// -------------------------------------------------------------- Subspace

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
    std::vector<std::size_t> piv;
    Matrix r = basis_.rref(&piv);
    std::vector<Elem> e(r.entries().begin(), r.entries().begin() + piv.size() * r.cols());
    basis_ = Matrix(r.ctx(), piv.size(), r.cols(), std::move(e));
    pivots_ = std::move(piv);
}

Subspace Subspace::zero(FieldPtr ctx, std::size_t n) { return Subspace(Matrix(std::move(ctx), 0, n)); }

Subspace Subspace::full(FieldPtr ctx, std::size_t n) { return Subspace(Matrix::identity(std::move(ctx), n)); }

Subspace Subspace::span(FieldPtr ctx, std::size_t n, const std::vector<Vec> &vectors) {
    std::vector<Elem> e;
    e.reserve(vectors.size() * n);
    for (const Vec &v : vectors) {
        if (v.size() != n) {
            throw AmbientMismatch("vector of length " + std::to_string(v.size()) + " in F_q^" +
                                  std::to_string(n));
        }
        e.insert(e.end(), v.begin(), v.end());
    }
    return Subspace(Matrix(std::move(ctx), vectors.size(), n, std::move(e)));
}

Subspace Subspace::row_space(const Matrix &m) { return Subspace(m); }

std::vector<Vec> Subspace::basis_vectors() const {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        out.push_back(basis_.row(i));
    }
    return out;
}

Vec Subspace::reduce(std::span<const Elem> v) const {
    if (v.size() != ambient()) {
        throw AmbientMismatch("vector length mismatch");
    }
    const FieldCtx &f = *ctx();
    Vec out(v.begin(), v.end());
    for (std::size_t i = 0; i < dim(); ++i) {
        const Elem c = out[pivots_[i]];
        if (c == 0) {
            continue;
        }
        for (std::size_t j = 0; j < ambient(); ++j) {
            out[j] = f.sub(out[j], f.mul(c, basis_(i, j)));
        }
    }
    return out;
}

bool Subspace::contains(std::span<const Elem> v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Elem e) { return e == 0; });
}

bool Subspace::contains(const Subspace &o) const {
    check_ambient(o);
    for (std::size_t i = 0; i < o.dim(); ++i) {
        if (!contains(o.basis_.row(i))) {
            return false;
        }
    }
    return true;
}

void Subspace::check_ambient(const Subspace &o) const {
    if (ambient() != o.ambient()) {
        throw AmbientMismatch("subspaces of F_q^" + std::to_string(ambient()) + " and F_q^" +
                              std::to_string(o.ambient()));
    }
}

Subspace Subspace::sum(const Subspace &o) const {
    check_ambient(o);
    std::vector<Vec> vecs = basis_vectors();
    for (Vec &v : o.basis_vectors()) {
        vecs.push_back(std::move(v));
    }
    return span(ctx(), ambient(), vecs);
}

Subspace Subspace::intersect(const Subspace &o) const {
    check_ambient(o);
    return perp().sum(o.perp()).perp();
}

Subspace Subspace::direct_complement() const {
    std::vector<bool> is_pivot(ambient(), false);
    for (std::size_t c : pivots_) {
        is_pivot[c] = true;
    }
    std::vector<Vec> vecs;
    for (std::size_t j = 0; j < ambient(); ++j) {
        if (!is_pivot[j]) {
            Vec e(ambient(), 0);
            e[j] = 1;
            vecs.push_back(std::move(e));
        }
    }
    return span(ctx(), ambient(), vecs);
}

Subspace Subspace::perp(BilinearForm form) const {
    if (form == BilinearForm::Standard) {
        return basis_.kernel();
    }
    const std::size_t n = static_cast<std::size_t>(std::lround(std::sqrt(double(ambient()))));
    if (n * n != ambient()) {
        throw AmbientMismatch("trace form needs a matrix space");
    }
    // tr(XY) = <vec(X), vec(Y^T)>, so transpose every basis matrix first.
    std::vector<Vec> transposed;
    for (const Vec &v : basis_vectors()) {
        Vec t(v.size());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                t[j * n + i] = v[i * n + j];
            }
        }
        transposed.push_back(std::move(t));
    }
    return span(ctx(), ambient(), transposed).perp(BilinearForm::Standard);
}

Subspace Subspace::image_under(const Matrix &x) const {
    if (!x.square() || x.rows() != ambient()) {
        throw ShapeMismatch("matrix does not act on this space");
    }
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < dim(); ++i) {
        vecs.push_back(x.apply(basis_.row(i)));
    }
    return span(ctx(), ambient(), vecs);
}

Subspace Subspace::from_coordinates(const Matrix &frame, const Subspace &coords) {
    if (coords.ambient() != frame.cols()) {
        throw AmbientMismatch("coordinate space does not match frame");
    }
    std::vector<Vec> vecs;
    for (const Vec &c : coords.basis_vectors()) {
        vecs.push_back(frame.apply(c));
    }
    return span(frame.ctx(), frame.rows(), vecs);
}

bool Subspace::operator<(const Subspace &o) const {
    if (ambient() != o.ambient()) {
        return ambient() < o.ambient();
    }
    if (dim() != o.dim()) {
        return dim() < o.dim();
    }
    return basis_ < o.basis_;
}

// ------------------------------------------------------------------ Flag

Flag::Flag(FieldPtr ctx, std::size_t n, std::vector<Subspace> chain)
    : ctx_(std::move(ctx)), n_(n), chain_(std::move(chain)) {
    for (std::size_t i = 0; i < chain_.size(); ++i) {
        const Subspace &u = chain_[i];
        if (u.ambient() != n_) {
            throw AmbientMismatch("flag member has wrong ambient dimension");
        }
        if (u.is_zero() || u.is_full()) {
            throw std::invalid_argument("flag members must be proper and nonzero");
        }
        if (i > 0 && (u.dim() >= chain_[i - 1].dim() || !chain_[i - 1].contains(u))) {
            throw std::invalid_argument("flag chain must be strictly decreasing");
        }
    }
}

Flag Flag::from_basis(const Matrix &basis, const std::vector<std::size_t> &parameter) {
    const std::size_t n = basis.rows();
    std::size_t total = 0;
    for (std::size_t b : parameter) {
        if (b == 0) {
            throw std::invalid_argument("flag parameter entries must be positive");
        }
        total += b;
    }
    if (total != n) {
        throw std::invalid_argument("flag parameter does not sum to n");
    }
    std::vector<Subspace> chain;
    std::size_t remaining = n;
    for (std::size_t i = 0; i + 1 < parameter.size(); ++i) {
        remaining -= parameter[i];
        std::vector<Vec> cols;
        for (std::size_t j = n - remaining; j < n; ++j) {
            cols.push_back(basis.column(j));
        }
        chain.push_back(Subspace::span(basis.ctx(), n, cols));
    }
    return Flag(basis.ctx(), n, std::move(chain));
}

std::vector<std::size_t> Flag::parameter() const {
    std::vector<std::size_t> out;
    std::size_t prev = n_;
    for (const Subspace &u : chain_) {
        out.push_back(prev - u.dim());
        prev = u.dim();
    }
    out.push_back(prev);
    return out;
}

Subspace Flag::member(std::size_t i) const {
    if (i == 0) {
        return Subspace::full(ctx_, n_);
    }
    if (i == length()) {
        return Subspace::zero(ctx_, n_);
    }
    return chain_.at(i - 1);
}

Flag Flag::image_under(const Matrix &x) const {
    std::vector<Subspace> chain;
    for (const Subspace &u : chain_) {
        chain.push_back(u.image_under(x));
    }
    return Flag(ctx_, n_, std::move(chain));
}

Matrix Flag::adapted_basis() const {
    // Build from the smallest member outwards, prepending extensions.
    std::vector<Vec> cols;
    Subspace current = Subspace::zero(ctx_, n_);
    for (std::size_t i = length(); i-- > 0;) {
        const Subspace target = member(i);
        std::vector<Vec> ext;
        for (const Vec &v : target.basis_vectors()) {
            if (!current.contains(v)) {
                current = current.sum(Subspace::span(ctx_, n_, {v}));
                ext.push_back(v);
            }
        }
        cols.insert(cols.begin(), ext.begin(), ext.end());
    }
    return Matrix::from_columns(ctx_, n_, cols);
}

// ------------------------------------------------------- combinatorics

BigInt gauss_binom(unsigned a, unsigned b, unsigned q) {
    if (b > a) {
        return 0;
    }
    BigInt num = 1, den = 1;
    // prod_{i<b} (q^{a-i} - 1) / (q^{i+1} - 1)
    std::vector<BigInt> pw(a + 1);
    pw[0] = 1;
    for (unsigned i = 1; i <= a; ++i) {
        pw[i] = pw[i - 1] * q;
    }
    for (unsigned i = 0; i < b; ++i) {
        num *= pw[a - i] - 1;
        den *= pw[i + 1] - 1;
    }
    return num / den;
}

BigInt gl_order(unsigned n, unsigned q) {
    BigInt qn = 1;
    for (unsigned i = 0; i < n; ++i) {
        qn *= q;
    }
    BigInt out = 1, qi = 1;
    for (unsigned i = 0; i < n; ++i) {
        out *= qn - qi;
        qi *= q;
    }
    return out;
}

void for_each_subspace(const FieldPtr &ctx, std::size_t n, std::size_t d,
                       const std::function<void(const Subspace &)> &fn, double budget) {
    if (d > n) {
        return;
    }
    const unsigned q = ctx->q();
    const BigInt count = gauss_binom(static_cast<unsigned>(n), static_cast<unsigned>(d), q);
    if (count > BigInt(static_cast<unsigned long long>(budget))) {
        throw BudgetExceeded(count.str() + " subspaces exceed enumeration budget");
    }
    if (d == 0) {
        fn(Subspace::zero(ctx, n));
        return;
    }
    std::vector<std::size_t> piv(d);
    for (std::size_t i = 0; i < d; ++i) {
        piv[i] = i;
    }
    while (true) {
        // Free positions: row i, column j > piv[i], j not a pivot.
        std::vector<std::pair<std::size_t, std::size_t>> free;
        std::vector<bool> is_pivot(n, false);
        for (std::size_t c : piv) {
            is_pivot[c] = true;
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = piv[i] + 1; j < n; ++j) {
                if (!is_pivot[j]) {
                    free.emplace_back(i, j);
                }
            }
        }
        std::vector<Elem> vals(free.size(), 0);
        bool more = true;
        while (more) {
            Matrix m(ctx, d, n);
            for (std::size_t i = 0; i < d; ++i) {
                m.at(i, piv[i]) = 1;
            }
            for (std::size_t k = 0; k < free.size(); ++k) {
                m.at(free[k].first, free[k].second) = vals[k];
            }
            fn(Subspace::row_space(m));
            more = false;
            for (std::size_t k = free.size(); k-- > 0;) {
                if (++vals[k] < q) {
                    more = true;
                    break;
                }
                vals[k] = 0;
            }
        }
        // next combination
        std::size_t i = d;
        while (i > 0 && piv[i - 1] == n - d + (i - 1)) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++piv[i - 1];
        for (std::size_t j = i; j < d; ++j) {
            piv[j] = piv[j - 1] + 1;
        }
    }
}

std::vector<Subspace> enumerate_subspaces(const FieldPtr &ctx, std::size_t n, std::size_t d, double budget) {
    std::vector<Subspace> out;
    for_each_subspace(ctx, n, d, [&](const Subspace &s) { out.push_back(s); }, budget);
    return out;
}

void for_each_invertible(const FieldPtr &ctx, std::size_t n, const std::function<void(const Matrix &)> &fn,
                         double budget) {
    const unsigned q = ctx->q();
    const std::size_t len = n * n;
    if (std::pow(double(q), double(len)) > budget) {
        throw BudgetExceeded("q^(n^2) exceeds enumeration budget");
    }
    std::vector<Elem> e(len, 0);
    while (true) {
        Matrix m(ctx, n, n, e);
        if (m.invertible()) {
            fn(m);
        }
        std::size_t k = len;
        bool done = true;
        while (k > 0) {
            --k;
            if (++e[k] < q) {
                done = false;
                break;
            }
            e[k] = 0;
        }
        if (done) {
            break;
        }
    }
}

Matrix random_matrix(const FieldPtr &ctx, std::size_t rows, std::size_t cols, Rng &rng) {
    std::vector<Elem> e(rows * cols);
    for (Elem &x : e) {
        x = static_cast<Elem>(rng.below(ctx->q()));
    }
    return Matrix(ctx, rows, cols, std::move(e));
}

Matrix random_invertible(const FieldPtr &ctx, std::size_t n, Rng &rng, std::size_t *draws) {
    std::size_t count = 0;
    while (true) {
        ++count;
        Matrix m = random_matrix(ctx, n, n, rng);
        if (m.invertible()) {
            if (draws) {
                *draws = count;
            }
            return m;
        }
    }
}

Subspace random_subspace(const FieldPtr &ctx, std::size_t n, std::size_t d, Rng &rng) {
    if (d > n) {
        throw std::invalid_argument("subspace dimension exceeds ambient dimension");
    }
    if (d == 0) {
        return Subspace::zero(ctx, n);
    }
    while (true) {
        Matrix m = random_matrix(ctx, d, n, rng);
        if (m.rank() == d) {
            return Subspace::row_space(m);
        }
    }
}

} // namespace parahsp
