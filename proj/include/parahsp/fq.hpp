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

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace parahsp {

/// Index of a field element: the base-p evaluation sum(c_i p^i) of its
/// coefficient tuple (c_0 = constant term). 0 and 1 are zero and one.
using Elem = std::uint16_t;

using Complex = std::complex<double>;

/**
 * @brief The finite field F_q, q = p^r, with precomputed operation tables.
 *
 * Elements are represented as polynomials over F_p modulo the
 * lexicographically smallest monic irreducible polynomial of degree r,
 * where candidates are ordered by the index of their non-leading
 * coefficients. The context is immutable once built.
 */
class FieldCtx {
  public:
    static constexpr unsigned kMaxOrder = 256;

    /// Throws std::invalid_argument if p is not prime, r == 0 or q > 256.
    static std::shared_ptr<const FieldCtx> make(unsigned p, unsigned r);

    unsigned p() const { return p_; }
    unsigned r() const { return r_; }
    unsigned q() const { return q_; }
    /// Monic modulus, coefficients from constant term up to t^r.
    const std::vector<unsigned> &modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
    /// Throws DivisionByZero for a == 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    /// Absolute trace to F_p; the result is an index below p.
    Elem trace(Elem a) const { return trace_[a]; }
    /// omega^{Tr(a)} with omega = exp(2 pi i / p).
    Complex character(Elem a) const { return character_[a]; }
    /// omega^k for k in [0, p).
    Complex root_of_unity(unsigned k) const { return character_[k]; }

    /// Image of an integer in the prime subfield.
    Elem from_int(long long v) const;
    /// Smallest-index generator of the multiplicative group.
    Elem primitive_element() const { return primitive_; }
    /// Coefficient tuple of a (constant term first).
    std::vector<unsigned> coefficients(Elem a) const;

    bool operator==(const FieldCtx &o) const { return p_ == o.p_ && r_ == o.r_; }

  private:
    FieldCtx(unsigned p, unsigned r);

    unsigned p_, r_, q_;
    std::vector<unsigned> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_, trace_;
    std::vector<Complex> character_;
    Elem primitive_ = 1;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

/// Exhaustive irreducibility test for a monic polynomial over F_p
/// (coefficients constant term first).
bool is_irreducible(const std::vector<unsigned> &poly, unsigned p);

/// Value type pairing an element with its field; mixing fields throws
/// CtxMismatch.
class FieldElem {
  public:
    FieldElem(FieldPtr ctx, Elem index);

    const FieldPtr &ctx() const { return ctx_; }
    Elem index() const { return v_; }

    FieldElem operator+(const FieldElem &o) const;
    FieldElem operator-(const FieldElem &o) const;
    FieldElem operator*(const FieldElem &o) const;
    FieldElem operator/(const FieldElem &o) const;
    FieldElem operator-() const { return {ctx_, ctx_->neg(v_)}; }
    FieldElem inv() const { return {ctx_, ctx_->inv(v_)}; }
    FieldElem pow(std::uint64_t e) const { return {ctx_, ctx_->pow(v_, e)}; }
    FieldElem trace() const { return {ctx_, ctx_->trace(v_)}; }
    Complex character() const { return ctx_->character(v_); }

    bool operator==(const FieldElem &o) const;

  private:
    const FieldCtx &same(const FieldElem &o) const;

    FieldPtr ctx_;
    Elem v_;
};

} // namespace parahsp
