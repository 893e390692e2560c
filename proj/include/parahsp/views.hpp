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

// Views re-express a hiding oracle on GL(V) as a hiding function on a
// smaller or re-coordinatized group by composing f with an injective
// homomorphism. All queries still go through the root oracle's counter.

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "parahsp/oracles.hpp"

namespace parahsp {

/**
 * @brief f composed with an embedding GL_m(F_q) -> GL_n(F_q).
 *
 * A view also fixes which coset side its labels separate. If the side
 * differs from the oracle's, labels are taken at the inverse element,
 * which turns left-coset classes into right-coset classes and back.
 */
class GroupView {
  public:
    explicit GroupView(const HidingOracle &oracle);

    const FieldPtr &ctx() const { return oracle_->ctx(); }
    std::size_t dim() const { return m_; }
    Side side() const { return side_; }
    const HidingOracle &oracle() const { return *oracle_; }

    /// Image of an m x m matrix in the root group.
    Matrix embed(const Matrix &x) const;

    GroupView with_side(Side s) const;
    /// M -> P diag(M, I_{n-k}) P^{-1}, with P invertible of size dim().
    GroupView restricted(const Matrix &p, std::size_t k) const;
    /// M -> P M P^{-1}.
    GroupView conjugated(const Matrix &p) const { return restricted(p, m_); }
    /// M -> (M^T)^{-1}; hides the transpose of the hidden subgroup.
    GroupView dual() const;

    /// One counted classical query.
    Label query(const Matrix &x) const;
    /// Labels inside one superposition query; the caller charges it.
    std::vector<Label> superposition_labels(std::span<const Matrix> xs) const;
    void charge(std::uint64_t n = 1) const { oracle_->charge(n); }

    /// True iff f(g) = f(I) for every g (so the generated group lies in H).
    bool contains_all(const std::vector<Matrix> &gens) const;

  private:
    using Map = std::function<Matrix(const Matrix &)>;

    GroupView(const HidingOracle *oracle, std::size_t m, Side side, std::shared_ptr<const Map> map);
    Label label(const Matrix &x) const;

    const HidingOracle *oracle_;
    std::size_t m_;
    Side side_;
    std::shared_ptr<const Map> map_; // null for the identity
};

/**
 * @brief An elementary abelian subgroup {I + sum_i u_i B_i : u in F_q^k} of
 * a view, with B_i B_j = 0 for all i, j.
 *
 * The map u -> I + sum u_i B_i is then an injective homomorphism from the
 * additive group F_q^k.
 */
class VectorGroupView {
  public:
    VectorGroupView(GroupView base, std::vector<Matrix> basis);
    /// Basis {a phi^T} for a in a basis of `image` and phi in a basis of
    /// kill^perp: the group {X : (X-I)V <= image, (X-I)kill = 0}. Requires
    /// image <= kill.
    static VectorGroupView hom_space(GroupView base, const Subspace &image, const Subspace &kill);

    const GroupView &base() const { return base_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Matrix> &basis() const { return basis_; }

    Matrix element(std::span<const Elem> u) const;
    /// Sum of (X - I)V over X in the subgroup with coordinates in `w`.
    Subspace image_sum(const Subspace &w) const;

  private:
    GroupView base_;
    std::vector<Matrix> basis_;
};

} // namespace parahsp
