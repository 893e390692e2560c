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

#include "parahsp/fq.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parahsp/errors.hpp"

namespace parahsp {
namespace {

using Poly = std::vector<unsigned>;

bool is_prime(unsigned p) {
    if (p < 2) {
        return false;
    }
    for (unsigned d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

void trim(Poly &a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

// Remainder of a modulo monic b over F_p.
Poly poly_mod(Poly a, const Poly &b, unsigned p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const unsigned lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            a[shift + i] = (a[shift + i] + p - (lead * b[i]) % p) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_mul(const Poly &a, const Poly &b, unsigned p) {
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        }
    }
    return c;
}

Poly digits(unsigned index, unsigned p, unsigned len) {
    Poly c(len, 0);
    for (unsigned i = 0; i < len; ++i) {
        c[i] = index % p;
        index /= p;
    }
    return c;
}

unsigned undigits(const Poly &c, unsigned p) {
    unsigned v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
        v = v * p + c[i];
    }
    return v;
}

} // namespace

bool is_irreducible(const std::vector<unsigned> &poly, unsigned p) {
    Poly f = poly;
    trim(f);
    if (f.size() < 2) {
        return false;
    }
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    for (unsigned dg = 1; 2 * dg <= deg; ++dg) {
        unsigned count = 1;
        for (unsigned i = 0; i < dg; ++i) {
            count *= p;
        }
        for (unsigned idx = 0; idx < count; ++idx) {
            Poly g = digits(idx, p, dg);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) {
                return false;
            }
        }
    }
    return true;
}

std::shared_ptr<const FieldCtx> FieldCtx::make(unsigned p, unsigned r) {
    return std::shared_ptr<const FieldCtx>(new FieldCtx(p, r));
}

FieldCtx::FieldCtx(unsigned p, unsigned r) : p_(p), r_(r), q_(1) {
    if (!is_prime(p)) {
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    }
    if (r == 0) {
        throw std::invalid_argument("field degree must be positive");
    }
    for (unsigned i = 0; i < r; ++i) {
        q_ *= p;
        if (q_ > kMaxOrder) {
            throw std::invalid_argument("field order exceeds " + std::to_string(kMaxOrder));
        }
    }

    for (unsigned idx = 0; idx < q_; ++idx) {
        Poly cand = digits(idx, p, r);
        cand.push_back(1);
        if (is_irreducible(cand, p)) {
            modulus_ = cand;
            break;
        }
    }

    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
        const Poly pa = digits(a, p, r);
        Poly na(r);
        for (unsigned i = 0; i < r; ++i) {
            na[i] = (p - pa[i]) % p;
        }
        neg_[a] = static_cast<Elem>(undigits(na, p));
        for (unsigned b = 0; b < q_; ++b) {
            const Poly pb = digits(b, p, r);
            Poly s(r);
            for (unsigned i = 0; i < r; ++i) {
                s[i] = (pa[i] + pb[i]) % p;
            }
            add_[a * q_ + b] = static_cast<Elem>(undigits(s, p));
            Poly m = poly_mod(poly_mul(pa, pb, p), modulus_, p);
            m.resize(r, 0);
            mul_[a * q_ + b] = static_cast<Elem>(undigits(m, p));
        }
    }
    for (unsigned a = 1; a < q_; ++a) {
        for (unsigned b = 1; b < q_; ++b) {
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = static_cast<Elem>(b);
                break;
            }
        }
    }

    trace_.resize(q_);
    for (unsigned a = 0; a < q_; ++a) {
        Elem acc = 0;
        Elem x = static_cast<Elem>(a);
        for (unsigned i = 0; i < r; ++i) {
            acc = add(acc, x);
            x = pow(x, p);
        }
        trace_[a] = acc;
    }

    character_.resize(q_);
    for (unsigned a = 0; a < q_; ++a) {
        const unsigned k = trace_[a];
        if (k == 0) {
            character_[a] = {1.0, 0.0};
        } else if (2 * k == p) {
            character_[a] = {-1.0, 0.0};
        } else {
            const double angle = 2.0 * std::numbers::pi * k / p;
            character_[a] = {std::cos(angle), std::sin(angle)};
        }
    }

    for (unsigned g = 1; g < q_; ++g) {
        unsigned order = 1;
        Elem x = static_cast<Elem>(g);
        while (x != 1) {
            x = mul(x, static_cast<Elem>(g));
            ++order;
        }
        if (order == q_ - 1) {
            primitive_ = static_cast<Elem>(g);
            break;
        }
    }
}

Elem FieldCtx::inv(Elem a) const {
    if (a == 0) {
        throw DivisionByZero("inverse of zero");
    }
    return inv_[a];
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
    Elem result = 1;
    Elem base = a;
    while (e > 0) {
        if (e & 1) {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Elem FieldCtx::from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) {
        m += p_;
    }
    return static_cast<Elem>(m);
}

std::vector<unsigned> FieldCtx::coefficients(Elem a) const { return digits(a, p_, r_); }

FieldElem::FieldElem(FieldPtr ctx, Elem index) : ctx_(std::move(ctx)), v_(index) {
    if (v_ >= ctx_->q()) {
        throw std::out_of_range("field element index out of range");
    }
}

const FieldCtx &FieldElem::same(const FieldElem &o) const {
    if (ctx_ != o.ctx_ && !(*ctx_ == *o.ctx_)) {
        throw CtxMismatch("operands belong to different fields");
    }
    return *ctx_;
}

FieldElem FieldElem::operator+(const FieldElem &o) const { return {ctx_, same(o).add(v_, o.v_)}; }
FieldElem FieldElem::operator-(const FieldElem &o) const { return {ctx_, same(o).sub(v_, o.v_)}; }
FieldElem FieldElem::operator*(const FieldElem &o) const { return {ctx_, same(o).mul(v_, o.v_)}; }
FieldElem FieldElem::operator/(const FieldElem &o) const { return {ctx_, same(o).div(v_, o.v_)}; }

bool FieldElem::operator==(const FieldElem &o) const { return same(o), v_ == o.v_; }

} // namespace parahsp
