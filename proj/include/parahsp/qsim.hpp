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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "parahsp/fqla.hpp"
#include "parahsp/oracles.hpp"

namespace parahsp {

/// Largest dense state the simulator will allocate by default.
constexpr double kDenseBudget = 33554432.0; // 2^25

/**
 * @brief The computational basis F_q^m, or Mat_n(F_q) viewed as F_q^{n^2}.
 *
 * Basis index = mixed-radix number of the coordinates (row-major for
 * matrices), first coordinate most significant.
 */
class StateSpace {
  public:
    static StateSpace vectors(FieldPtr ctx, std::size_t m);
    static StateSpace matrices(FieldPtr ctx, std::size_t n);

    const FieldPtr &ctx() const { return ctx_; }
    bool is_matrix() const { return side_ > 0; }
    /// n for Mat_n, 0 for a vector space.
    std::size_t side() const { return side_; }
    /// Number of F_q coordinates.
    std::size_t coords() const { return coords_; }
    std::uint64_t dim() const { return dim_; }

    std::uint64_t index_of(std::span<const Elem> coords) const;
    std::uint64_t index_of(const Matrix &m) const;
    Vec coords_of(std::uint64_t index) const;
    Matrix matrix_of(std::uint64_t index) const;

    bool operator==(const StateSpace &o) const {
        return *ctx_ == *o.ctx_ && side_ == o.side_ && coords_ == o.coords_;
    }

  private:
    StateSpace(FieldPtr ctx, std::size_t coords, std::size_t side);

    FieldPtr ctx_;
    std::size_t coords_, side_;
    std::uint64_t dim_;
};

/// Dense amplitude table over a StateSpace.
class StateVector {
  public:
    /// The zero vector. Throws BudgetExceeded if dim > budget.
    explicit StateVector(StateSpace space, double budget = kDenseBudget);
    static StateVector basis(StateSpace space, std::uint64_t index);

    const StateSpace &space() const { return space_; }
    std::uint64_t size() const { return amp_.size(); }
    std::span<Complex> amplitudes() { return amp_; }
    std::span<const Complex> amplitudes() const { return amp_; }
    Complex operator[](std::uint64_t i) const { return amp_[i]; }
    Complex &operator[](std::uint64_t i) { return amp_[i]; }

    double norm_sq() const;
    /// True for post-selection intermediates whose norm is not 1.
    bool subnormalized() const { return subnormalized_; }
    void set_subnormalized(bool s) { subnormalized_ = s; }

  private:
    StateSpace space_;
    std::vector<Complex> amp_;
    bool subnormalized_ = false;
};

/// Uniform superposition over the given basis indices (duplicates are an
/// error). Throws EmptySet.
StateVector subset_state(const StateSpace &space, std::span<const std::uint64_t> indices,
                         double budget = kDenseBudget);
/// Uniform superposition over {offset + v : v in points}.
StateVector subset_state(const StateSpace &space, const std::vector<Vec> &points,
                         const Vec *offset = nullptr, double budget = kDenseBudget);
StateVector subset_state(const StateSpace &space, const std::vector<Matrix> &points,
                         const Matrix *offset = nullptr, double budget = kDenseBudget);

/// out[u] = |V|^{-1/2} sum_v omega^{Tr phi(u, v)} in[v], computed one axis
/// at a time with the active kernel variant. Trace form requires a matrix
/// space.
void qft_phi_inplace(StateVector &s, BilinearForm form);
StateVector qft_phi(const StateVector &s, BilinearForm form);

struct PostselectResult {
    StateVector state;
    double success_prob;
};
/// Projects onto invertible matrices and renormalizes. Throws ZeroMass.
PostselectResult postselect_invertible(const StateVector &s);

/// |amplitude|^2 per basis index.
std::vector<double> distribution(const StateVector &s);

struct MeasurementOutcome {
    std::uint64_t index;
    double probability;
};
MeasurementOutcome measure(const StateVector &s, Rng &rng);
/// Draws an index with probability proportional to `weights`.
std::uint64_t sample_index(std::span<const double> weights, Rng &rng);

/// Little-endian IEEE doubles in index order.
void write_distribution(std::ostream &out, std::span<const double> dist);
std::vector<double> read_distribution(std::istream &in);

/**
 * @brief Coset states of a finite group embedded in a StateSpace.
 *
 * Element i of the group sits at basis index `points[i]` and carries the
 * hiding-function value `labels[i]`. A coset state is the uniform
 * superposition over the points of one label class; post-QFT measurement
 * distributions are computed exactly and cached per class.
 */
class CosetSampler {
  public:
    CosetSampler(StateSpace space, BilinearForm form, std::vector<std::uint64_t> points,
                 const std::vector<Label> &labels);

    std::size_t group_size() const { return points_.size(); }
    std::size_t num_cosets() const { return members_.size(); }
    std::size_t coset_of(std::size_t element) const { return coset_of_[element]; }
    const std::vector<std::size_t> &members(std::size_t coset) const { return members_[coset]; }
    const StateSpace &space() const { return space_; }

    StateVector coset_state(std::size_t coset) const;
    /// Exact post-QFT outcome distribution of a coset state.
    const std::vector<double> &fourier_distribution(std::size_t coset);

    struct Sample {
        std::size_t element; // the uniformly drawn group element A
        std::size_t coset;
        std::uint64_t outcome;
    };
    /// Draw A uniformly, prepare the state of its coset, transform, measure.
    Sample sample(Rng &rng);

  private:
    StateSpace space_;
    BilinearForm form_;
    std::vector<std::uint64_t> points_;
    std::vector<std::size_t> coset_of_;
    std::vector<std::vector<std::size_t>> members_;
    struct Cached {
        std::vector<double> dist, cdf;
    };
    const Cached &cached(std::size_t coset);

    std::map<std::size_t, Cached> cache_;
};

/// Stand-alone coset-state preparation for an oracle on GL_n: draws A
/// uniformly, evaluates f over GL_n inside one (charged) superposition query
/// and returns the uniform state over the points sharing f(A).
StateVector prepare_coset_state(const HidingOracle &oracle, Rng &rng, double budget = 1e6);

} // namespace parahsp
