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

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "parahsp/encoding.hpp"
#include "parahsp/fqla.hpp"

namespace parahsp {

namespace family {

/// Stabilizer of a flag.
struct ParabolicOfFlag {
    Flag flag;
};
/// {X : XU = U}.
struct SetwiseStabilizer {
    Subspace u;
};
/// {X : Xu = u for all u in U}.
struct PointwiseStabilizer {
    Subspace u;
};
/// Matrices (b 0; w I) with b != 0, w in F_q^{n-1}.
struct AffineG {
    std::size_t n;
};
/// Matrices (1 0; w I).
struct AffineN {
    std::size_t n;
};
/// H_v = {(b 0; (b-1)v I) : b != 0}, ambient dimension v.size() + 1.
struct AffineComplement {
    Vec v;
};
/// Unipotent radical of the Borel subgroup of a complete flag.
struct FullUnipotentOfFlag {
    Flag flag;
};
/// {X : (X-I)V <= W}.
struct SpaceL {
    Subspace w;
};
/// {X : (X-I)V <= W', (X-I)W' = 0}; W is a complement of W'.
struct SpaceLPrime {
    Subspace w;
    Subspace w_prime;
};
/// {X : (X-I)V <= U', (X-I)U' = 0} for a hyperplane U'.
struct HyperplaneStabilizerN {
    Subspace u_prime;
};

} // namespace family

/**
 * @brief Symbolic description of one member of a subgroup family of GL_n(F_q).
 *
 * Construction validates dimensions and throws std::invalid_argument on
 * inconsistent parameters.
 */
class SubgroupSpec {
  public:
    using Variant = std::variant<family::ParabolicOfFlag, family::SetwiseStabilizer,
                                 family::PointwiseStabilizer, family::AffineG, family::AffineN,
                                 family::AffineComplement, family::FullUnipotentOfFlag,
                                 family::SpaceL, family::SpaceLPrime,
                                 family::HyperplaneStabilizerN>;

    SubgroupSpec(FieldPtr ctx, Variant v);

    static SubgroupSpec parabolic(const Flag &f) { return {f.ctx(), family::ParabolicOfFlag{f}}; }
    static SubgroupSpec setwise(const Subspace &u) { return {u.ctx(), family::SetwiseStabilizer{u}}; }
    static SubgroupSpec pointwise(const Subspace &u) { return {u.ctx(), family::PointwiseStabilizer{u}}; }
    static SubgroupSpec affine_g(FieldPtr ctx, std::size_t n) { return {std::move(ctx), family::AffineG{n}}; }
    static SubgroupSpec affine_n(FieldPtr ctx, std::size_t n) { return {std::move(ctx), family::AffineN{n}}; }
    static SubgroupSpec affine_complement(FieldPtr ctx, Vec v) {
        return {std::move(ctx), family::AffineComplement{std::move(v)}};
    }
    static SubgroupSpec unipotent(const Flag &f) { return {f.ctx(), family::FullUnipotentOfFlag{f}}; }
    static SubgroupSpec space_l(const Subspace &w) { return {w.ctx(), family::SpaceL{w}}; }
    static SubgroupSpec space_l_prime(const Subspace &w, const Subspace &w_prime) {
        return {w.ctx(), family::SpaceLPrime{w, w_prime}};
    }
    static SubgroupSpec hyperplane_n(const Subspace &u_prime) {
        return {u_prime.ctx(), family::HyperplaneStabilizerN{u_prime}};
    }

    const FieldPtr &ctx() const { return ctx_; }
    std::size_t ambient() const { return n_; }
    const Variant &variant() const { return v_; }
    std::string family_name() const;

  private:
    FieldPtr ctx_;
    std::size_t n_;
    Variant v_;
};

/// Exact membership; false for singular X. Throws ShapeMismatch.
bool membership(const Matrix &x, const SubgroupSpec &s);
/// A generating set; {I} for the trivial group.
std::vector<Matrix> generators(const SubgroupSpec &s);
BigInt subgroup_order(const SubgroupSpec &s);
/// Visits each element once. Throws BudgetExceeded if the order exceeds `budget`.
void for_each_element(const SubgroupSpec &s, const std::function<void(const Matrix &)> &fn,
                      double budget = 1e7);
std::vector<Matrix> enumerate_subgroup(const SubgroupSpec &s, double budget = 1e7);

/// Two-element generating set of GL_n(F_q); one element when n == 1.
std::vector<Matrix> gl_generators(const FieldPtr &ctx, std::size_t n);

enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
const char *side_name(Side s);

/// Canonical label of the coset XH (Left) or HX (Right), H = s.
Label coset_label(const SubgroupSpec &s, const Matrix &x, Side side);

/**
 * @brief Black-box hiding function f on GL_n(F_q).
 *
 * f(X) = f(Y) iff X^{-1}Y is in H (left) or YX^{-1} is in H (right). The
 * hidden spec is not reachable from algorithm code.
 */
class HidingOracle {
  public:
    HidingOracle(SubgroupSpec spec, Side side);
    HidingOracle(const HidingOracle &) = delete;
    HidingOracle &operator=(const HidingOracle &) = delete;

    const FieldPtr &ctx() const { return spec_.ctx(); }
    std::size_t ambient() const { return spec_.ambient(); }
    Side side() const { return side_; }

    /// One classical query.
    Label query(const Matrix &x) const;

    /// f applied to many inputs at once, as inside a superposition query.
    /// Not counted: the caller charges one query per prepared state.
    std::vector<Label> superposition_labels(std::span<const Matrix> xs) const;
    Label superposition_label(const Matrix &x) const;
    void charge(std::uint64_t n = 1) const { count_.fetch_add(n, std::memory_order_relaxed); }

    std::uint64_t queries() const { return count_.load(std::memory_order_relaxed); }

  private:
    friend struct OracleUnsealer;

    SubgroupSpec spec_;
    Side side_;
    mutable std::atomic<std::uint64_t> count_{0};
};

} // namespace parahsp
