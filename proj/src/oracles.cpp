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

#include "parahsp/oracles.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

#include "parahsp/errors.hpp"

namespace parahsp {
namespace {

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

// Most families are, in a suitable basis P, the matrices that agree with the
// identity except for arbitrary invertible diagonal blocks and arbitrary
// entries at a fixed set of positions.
struct BlockShape {
    Matrix basis;
    std::vector<std::pair<std::size_t, std::size_t>> gl_blocks; // (start, size)
    std::vector<std::pair<std::size_t, std::size_t>> free;      // (row, col)
};

Subspace tail_span(const FieldPtr &ctx, std::size_t n, std::size_t from) {
    std::vector<Vec> vs;
    for (std::size_t i = from; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        vs.push_back(std::move(e));
    }
    return Subspace::span(ctx, n, vs);
}

// Vectors from `candidates` extending `start` to a basis of the joint span.
std::vector<Vec> extend_basis(const FieldPtr &ctx, std::size_t n, std::vector<Vec> start,
                              const std::vector<Vec> &candidates) {
    std::vector<Vec> added;
    Subspace cur = Subspace::span(ctx, n, start);
    for (const Vec &c : candidates) {
        if (!cur.contains(c)) {
            added.push_back(c);
            start.push_back(c);
            cur = Subspace::span(ctx, n, start);
        }
    }
    return added;
}

std::vector<Vec> standard_basis(std::size_t n) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

// The group {X : (X-I)V <= A, (X-I)B = 0}, when the family has this form.
std::optional<std::pair<Subspace, Subspace>> linear_data(const SubgroupSpec &s) {
    const FieldPtr &ctx = s.ctx();
    const std::size_t n = s.ambient();
    return std::visit(
        Overloaded{
            [&](const family::PointwiseStabilizer &f) -> std::optional<std::pair<Subspace, Subspace>> {
                return std::pair{Subspace::full(ctx, n), f.u};
            },
            [&](const family::AffineG &) -> std::optional<std::pair<Subspace, Subspace>> {
                return std::pair{Subspace::full(ctx, n), tail_span(ctx, n, 1)};
            },
            [&](const family::AffineN &) -> std::optional<std::pair<Subspace, Subspace>> {
                return std::pair{tail_span(ctx, n, 1), tail_span(ctx, n, 1)};
            },
            [&](const family::SpaceL &f) -> std::optional<std::pair<Subspace, Subspace>> {
                return std::pair{f.w, Subspace::zero(ctx, n)};
            },
            [&](const family::SpaceLPrime &f) -> std::optional<std::pair<Subspace, Subspace>> {
                return std::pair{f.w_prime, f.w_prime};
            },
            [&](const family::HyperplaneStabilizerN &f) -> std::optional<std::pair<Subspace, Subspace>> {
                return std::pair{f.u_prime, f.u_prime};
            },
            [&](const auto &) -> std::optional<std::pair<Subspace, Subspace>> { return std::nullopt; },
        },
        s.variant());
}

Flag flag_of(const SubgroupSpec &s) {
    if (auto *p = std::get_if<family::ParabolicOfFlag>(&s.variant())) {
        return p->flag;
    }
    const auto &u = std::get<family::SetwiseStabilizer>(s.variant()).u;
    if (u.is_zero() || u.is_full()) {
        return Flag::trivial(s.ctx(), s.ambient());
    }
    return Flag(s.ctx(), s.ambient(), {u});
}

BlockShape flag_shape(const Flag &f, bool unipotent) {
    BlockShape sh{f.adapted_basis(), {}, {}};
    const std::size_t n = f.ambient();
    std::vector<std::size_t> block_of(n);
    std::size_t start = 0, b = 0;
    for (std::size_t size : f.parameter()) {
        if (!unipotent) {
            sh.gl_blocks.emplace_back(start, size);
        }
        for (std::size_t i = 0; i < size; ++i) {
            block_of[start + i] = b;
        }
        start += size;
        ++b;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (unipotent ? i > j : block_of[i] > block_of[j]) {
                sh.free.emplace_back(i, j);
            }
        }
    }
    return sh;
}

BlockShape linear_shape(const FieldPtr &ctx, std::size_t n, const Subspace &a, const Subspace &b) {
    BlockShape sh{Matrix::identity(ctx, n), {}, {}};
    std::vector<Vec> cols;
    if (b.contains(a)) {
        // P = [C | B\A | A]; X - I maps C into A and kills B.
        std::vector<Vec> av = a.basis_vectors();
        std::vector<Vec> mid = extend_basis(ctx, n, av, b.basis_vectors());
        std::vector<Vec> inner = av;
        inner.insert(inner.end(), mid.begin(), mid.end());
        std::vector<Vec> outer = extend_basis(ctx, n, inner, standard_basis(n));
        cols = outer;
        cols.insert(cols.end(), mid.begin(), mid.end());
        cols.insert(cols.end(), av.begin(), av.end());
        const std::size_t c = outer.size();
        for (std::size_t i = n - a.dim(); i < n; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                sh.free.emplace_back(i, j);
            }
        }
    } else if (a.contains(b)) {
        // P = [C | A\B | B]; rows (I 0 0; E D 0; F G I) with D invertible.
        std::vector<Vec> bv = b.basis_vectors();
        std::vector<Vec> mid = extend_basis(ctx, n, bv, a.basis_vectors());
        std::vector<Vec> inner = bv;
        inner.insert(inner.end(), mid.begin(), mid.end());
        std::vector<Vec> outer = extend_basis(ctx, n, inner, standard_basis(n));
        cols = outer;
        cols.insert(cols.end(), mid.begin(), mid.end());
        cols.insert(cols.end(), bv.begin(), bv.end());
        const std::size_t r = outer.size(), s = mid.size();
        if (s > 0) {
            sh.gl_blocks.emplace_back(r, s);
        }
        for (std::size_t i = r; i < n; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                sh.free.emplace_back(i, j);
            }
        }
        for (std::size_t i = r + s; i < n; ++i) {
            for (std::size_t j = r; j < r + s; ++j) {
                sh.free.emplace_back(i, j);
            }
        }
    } else {
        throw UnsupportedFamily("linear-space group with incomparable image and kernel spaces");
    }
    sh.basis = Matrix::from_columns(ctx, n, cols);
    return sh;
}

std::optional<BlockShape> block_shape(const SubgroupSpec &s) {
    if (auto ld = linear_data(s)) {
        return linear_shape(s.ctx(), s.ambient(), ld->first, ld->second);
    }
    if (std::holds_alternative<family::ParabolicOfFlag>(s.variant()) ||
        std::holds_alternative<family::SetwiseStabilizer>(s.variant())) {
        return flag_shape(flag_of(s), false);
    }
    if (auto *u = std::get_if<family::FullUnipotentOfFlag>(&s.variant())) {
        return flag_shape(u->flag, true);
    }
    return std::nullopt;
}

std::vector<Elem> prime_basis(const FieldCtx &f) {
    std::vector<Elem> out;
    unsigned e = 1;
    for (unsigned k = 0; k < f.r(); ++k) {
        out.push_back(static_cast<Elem>(e));
        e *= f.p();
    }
    return out;
}

Matrix conjugate(const Matrix &p, const Matrix &z, const Matrix &p_inv) { return p * z * p_inv; }

const family::AffineComplement *as_affine_complement(const SubgroupSpec &s) {
    return std::get_if<family::AffineComplement>(&s.variant());
}

// H_v = {I + (b-1) e e_1^T}, e = (1; v).
Matrix affine_complement_element(const FieldPtr &ctx, const Vec &v, Elem b) {
    const FieldCtx &f = *ctx;
    const std::size_t n = v.size() + 1;
    Matrix m = Matrix::identity(ctx, n);
    const Elem c = f.sub(b, 1);
    m.at(0, 0) = b;
    for (std::size_t i = 1; i < n; ++i) {
        m.at(i, 0) = f.mul(c, v[i - 1]);
    }
    return m;
}

Label affine_complement_right_label(const family::AffineComplement &a, const Matrix &x) {
    const FieldCtx &f = x.field();
    const std::size_t n = x.rows();
    Elem lead = 0;
    for (std::size_t j = 0; j < n && lead == 0; ++j) {
        lead = x(0, j);
    }
    // M_b X scales the first row by b and shifts row i by (b-1) v_i row_0.
    const Elem b = f.inv(lead);
    const Elem c = f.sub(b, 1);
    Matrix y = x;
    for (std::size_t j = 0; j < n; ++j) {
        y.at(0, j) = f.mul(b, x(0, j));
    }
    for (std::size_t i = 1; i < n; ++i) {
        const Elem coef = f.mul(c, a.v[i - 1]);
        for (std::size_t j = 0; j < n; ++j) {
            y.at(i, j) = f.add(x(i, j), f.mul(coef, x(0, j)));
        }
    }
    bool in_g = true;
    for (std::size_t j = 1; j < n && in_g; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (y(i, j) != (i == j ? 1 : 0)) {
                in_g = false;
                break;
            }
        }
    }
    if (in_g) {
        Vec w(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            w[i - 1] = y(i, 0);
        }
        return Label(encode_vector(w));
    }
    return Label("M" + encode_matrix(y));
}

std::string join_columns(const std::vector<Vec> &cols) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) {
            out += ';';
        }
        out += encode_vector(cols[i]);
    }
    return out;
}

Label linear_left_label(const Subspace &a, const Subspace &b, const Matrix &x) {
    const Subspace s = a.image_under(x);
    std::vector<Vec> on_b;
    for (const Vec &v : b.basis_vectors()) {
        on_b.push_back(x.apply(v));
    }
    std::vector<Vec> reduced;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        reduced.push_back(s.reduce(x.column(j)));
    }
    return Label(encode_subspace(s) + "#" + join_columns(on_b) + "#" + join_columns(reduced));
}

Label unipotent_left_label(const Flag &flag, const Matrix &x) {
    const Matrix p = flag.adapted_basis();
    const Matrix z = p.inverse() * x * p;
    const std::size_t n = z.cols();
    std::vector<Vec> cols(n), reduced(n);
    for (std::size_t j = 0; j < n; ++j) {
        cols[j] = z.column(j);
    }
    for (std::size_t j = n; j-- > 0;) {
        std::vector<Vec> later(cols.begin() + j + 1, cols.end());
        reduced[j] = Subspace::span(z.ctx(), n, later).reduce(cols[j]);
    }
    return Label(join_columns(reduced));
}

Side native_side(const SubgroupSpec &s) { return as_affine_complement(s) ? Side::Right : Side::Left; }

Label native_label(const SubgroupSpec &s, const Matrix &x) {
    if (auto *a = as_affine_complement(s)) {
        return affine_complement_right_label(*a, x);
    }
    if (auto ld = linear_data(s)) {
        return linear_left_label(ld->first, ld->second, x);
    }
    if (auto *u = std::get_if<family::FullUnipotentOfFlag>(&s.variant())) {
        return unipotent_left_label(u->flag, x);
    }
    return Label(encode_flag(flag_of(s).image_under(x)));
}

void check_square(const SubgroupSpec &s, const Matrix &x) {
    if (x.rows() != s.ambient() || x.cols() != s.ambient()) {
        throw ShapeMismatch("expected a " + std::to_string(s.ambient()) + "x" +
                            std::to_string(s.ambient()) + " matrix");
    }
    if (!(*x.ctx() == *s.ctx())) {
        throw CtxMismatch("matrix and subgroup live over different fields");
    }
}

void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw std::invalid_argument(msg);
    }
}

std::size_t ambient_of(const FieldPtr &ctx, const SubgroupSpec::Variant &v) {
    auto same_ctx = [&](const FieldPtr &other) {
        require(*other == *ctx, "subgroup parameters live over a different field");
    };
    return std::visit(
        Overloaded{
            [&](const family::ParabolicOfFlag &f) {
                same_ctx(f.flag.ctx());
                return f.flag.ambient();
            },
            [&](const family::SetwiseStabilizer &f) {
                same_ctx(f.u.ctx());
                return f.u.ambient();
            },
            [&](const family::PointwiseStabilizer &f) {
                same_ctx(f.u.ctx());
                return f.u.ambient();
            },
            [&](const family::AffineG &f) {
                require(f.n >= 1, "AffineG needs n >= 1");
                return f.n;
            },
            [&](const family::AffineN &f) {
                require(f.n >= 1, "AffineN needs n >= 1");
                return f.n;
            },
            [&](const family::AffineComplement &f) {
                for (Elem e : f.v) {
                    require(e < ctx->q(), "AffineComplement vector entry out of range");
                }
                return f.v.size() + 1;
            },
            [&](const family::FullUnipotentOfFlag &f) {
                same_ctx(f.flag.ctx());
                require(f.flag.complete(), "FullUnipotentOfFlag needs a complete flag");
                return f.flag.ambient();
            },
            [&](const family::SpaceL &f) {
                same_ctx(f.w.ctx());
                return f.w.ambient();
            },
            [&](const family::SpaceLPrime &f) {
                same_ctx(f.w.ctx());
                same_ctx(f.w_prime.ctx());
                require(f.w.ambient() == f.w_prime.ambient(), "SpaceLPrime ambient dimensions differ");
                require(f.w.dim() + f.w_prime.dim() == f.w.ambient() && f.w.intersect(f.w_prime).is_zero(),
                        "SpaceLPrime needs complementary subspaces");
                return f.w.ambient();
            },
            [&](const family::HyperplaneStabilizerN &f) {
                same_ctx(f.u_prime.ctx());
                require(f.u_prime.ambient() >= 1 && f.u_prime.dim() + 1 == f.u_prime.ambient(),
                        "HyperplaneStabilizerN needs a hyperplane");
                return f.u_prime.ambient();
            },
        },
        v);
}

} // namespace

SubgroupSpec::SubgroupSpec(FieldPtr ctx, Variant v)
    : ctx_(std::move(ctx)), n_(ambient_of(ctx_, v)), v_(std::move(v)) {}

std::string SubgroupSpec::family_name() const {
    static const char *const kNames[] = {"ParabolicOfFlag",     "SetwiseStabilizer", "PointwiseStabilizer",
                                         "AffineG",             "AffineN",           "AffineComplement",
                                         "FullUnipotentOfFlag", "SpaceL",            "SpaceLPrime",
                                         "HyperplaneStabilizerN"};
    return kNames[v_.index()];
}

std::vector<Matrix> gl_generators(const FieldPtr &ctx, std::size_t n) {
    const FieldCtx &f = *ctx;
    std::vector<Matrix> out;
    if (n == 0) {
        return out;
    }
    if (n == 1 && f.q() == 2) {
        out.push_back(Matrix::identity(ctx, 1));
        return out;
    }
    Matrix first = Matrix::identity(ctx, n);
    if (f.q() == 2) {
        first.at(0, 1) = 1;
    } else {
        first.at(0, 0) = f.primitive_element();
    }
    out.push_back(first);
    if (n == 1) {
        return out;
    }
    Matrix second(ctx, n, n);
    const Elem minus_one = f.neg(1);
    second.at(0, 0) = minus_one;
    second.at(0, n - 1) = 1;
    for (std::size_t i = 1; i < n; ++i) {
        second.at(i, i - 1) = minus_one;
    }
    out.push_back(second);
    return out;
}

bool membership(const Matrix &x, const SubgroupSpec &s) {
    check_square(s, x);
    if (!x.invertible()) {
        return false;
    }
    const std::size_t n = s.ambient();
    if (auto *a = as_affine_complement(s)) {
        return x(0, 0) != 0 && x == affine_complement_element(s.ctx(), a->v, x(0, 0));
    }
    const BlockShape sh = *block_shape(s);
    const Matrix z = sh.basis.inverse() * x * sh.basis;
    std::vector<char> open(n * n, 0);
    for (auto [start, size] : sh.gl_blocks) {
        for (std::size_t i = start; i < start + size; ++i) {
            for (std::size_t j = start; j < start + size; ++j) {
                open[i * n + j] = 1;
            }
        }
    }
    for (auto [i, j] : sh.free) {
        open[i * n + j] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!open[i * n + j] && z(i, j) != (i == j ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Matrix> generators(const SubgroupSpec &s) {
    const FieldPtr &ctx = s.ctx();
    std::vector<Matrix> out;
    if (auto *a = as_affine_complement(s)) {
        out.push_back(affine_complement_element(ctx, a->v, ctx->primitive_element()));
        return out;
    }
    const BlockShape sh = *block_shape(s);
    const Matrix p_inv = sh.basis.inverse();
    const std::size_t n = s.ambient();
    for (auto [start, size] : sh.gl_blocks) {
        for (const Matrix &g : gl_generators(ctx, size)) {
            Matrix z = Matrix::identity(ctx, n);
            for (std::size_t i = 0; i < size; ++i) {
                for (std::size_t j = 0; j < size; ++j) {
                    z.at(start + i, start + j) = g(i, j);
                }
            }
            out.push_back(conjugate(sh.basis, z, p_inv));
        }
    }
    const std::vector<Elem> basis = prime_basis(*ctx);
    for (auto [i, j] : sh.free) {
        for (Elem c : basis) {
            Matrix z = Matrix::identity(ctx, n);
            z.at(i, j) = c;
            out.push_back(conjugate(sh.basis, z, p_inv));
        }
    }
    if (out.empty()) {
        out.push_back(Matrix::identity(ctx, n));
    }
    return out;
}

BigInt subgroup_order(const SubgroupSpec &s) {
    const unsigned q = s.ctx()->q();
    if (as_affine_complement(s)) {
        return BigInt(q - 1);
    }
    const BlockShape sh = *block_shape(s);
    BigInt order = 1;
    for (auto [start, size] : sh.gl_blocks) {
        order *= gl_order(static_cast<unsigned>(size), q);
    }
    for (std::size_t i = 0; i < sh.free.size(); ++i) {
        order *= q;
    }
    return order;
}

void for_each_element(const SubgroupSpec &s, const std::function<void(const Matrix &)> &fn,
                      double budget) {
    const BigInt order = subgroup_order(s);
    if (order > BigInt(static_cast<unsigned long long>(budget))) {
        throw BudgetExceeded("subgroup of order " + order.str() + " exceeds enumeration budget");
    }
    const FieldPtr &ctx = s.ctx();
    const unsigned q = ctx->q();
    if (auto *a = as_affine_complement(s)) {
        for (unsigned b = 1; b < q; ++b) {
            fn(affine_complement_element(ctx, a->v, static_cast<Elem>(b)));
        }
        return;
    }
    const BlockShape sh = *block_shape(s);
    const Matrix p_inv = sh.basis.inverse();
    const std::size_t n = s.ambient();

    std::vector<std::vector<Matrix>> choices;
    for (auto [start, size] : sh.gl_blocks) {
        std::vector<Matrix> all;
        for_each_invertible(ctx, size, [&](const Matrix &m) { all.push_back(m); }, budget);
        choices.push_back(std::move(all));
    }
    std::vector<std::size_t> pick(choices.size(), 0);
    std::vector<Elem> vals(sh.free.size(), 0);
    while (true) {
        Matrix z = Matrix::identity(ctx, n);
        for (std::size_t b = 0; b < choices.size(); ++b) {
            const auto [start, size] = sh.gl_blocks[b];
            const Matrix &g = choices[b][pick[b]];
            for (std::size_t i = 0; i < size; ++i) {
                for (std::size_t j = 0; j < size; ++j) {
                    z.at(start + i, start + j) = g(i, j);
                }
            }
        }
        for (std::size_t k = 0; k < vals.size(); ++k) {
            z.at(sh.free[k].first, sh.free[k].second) = vals[k];
        }
        fn(conjugate(sh.basis, z, p_inv));

        std::size_t k = 0;
        while (k < vals.size() && ++vals[k] == q) {
            vals[k++] = 0;
        }
        if (k < vals.size()) {
            continue;
        }
        std::size_t b = 0;
        while (b < pick.size() && ++pick[b] == choices[b].size()) {
            pick[b++] = 0;
        }
        if (b == pick.size()) {
            return;
        }
    }
}

std::vector<Matrix> enumerate_subgroup(const SubgroupSpec &s, double budget) {
    std::vector<Matrix> out;
    for_each_element(s, [&](const Matrix &m) { out.push_back(m); }, budget);
    return out;
}

const char *side_name(Side s) { return s == Side::Left ? "left" : "right"; }

Label coset_label(const SubgroupSpec &s, const Matrix &x, Side side) {
    check_square(s, x);
    if (side == native_side(s)) {
        return native_label(s, x);
    }
    return native_label(s, x.inverse());
}

HidingOracle::HidingOracle(SubgroupSpec spec, Side side) : spec_(std::move(spec)), side_(side) {}

Label HidingOracle::query(const Matrix &x) const {
    charge();
    return coset_label(spec_, x, side_);
}

Label HidingOracle::superposition_label(const Matrix &x) const { return coset_label(spec_, x, side_); }

std::vector<Label> HidingOracle::superposition_labels(std::span<const Matrix> xs) const {
    std::vector<Label> out;
    out.reserve(xs.size());
    for (const Matrix &x : xs) {
        out.push_back(coset_label(spec_, x, side_));
    }
    return out;
}

} // namespace parahsp
