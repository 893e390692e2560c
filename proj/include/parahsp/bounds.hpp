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

// Classical search and query lower-bound experiments for the family of
// setwise stabilizers G_{U}, dim U = d.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <variant>
#include <vector>

#include "parahsp/fqla.hpp"
#include "parahsp/oracles.hpp"

namespace parahsp {

struct DeterministicResult {
    Subspace u;
    std::uint64_t queries = 0;
    std::size_t hyperplane_tests = 0;
};

/// Finds U for a hidden G_{U} with dim U = d by testing hyperplanes W >= U
/// one at a time and recursing into W. Throws std::invalid_argument if no
/// hyperplane passes, i.e. the oracle does not hide such a subgroup.
DeterministicResult deterministic_search(const HidingOracle &oracle, std::size_t d);

/// Number of d-dimensional subspaces U with AU = U.
BigInt count_stabilized(const Matrix &a, std::size_t d, double budget = 1e7);
/// (n-1, d)_q + (n-1, d-1)_q, the most any non-scalar A can stabilize.
BigInt stabilized_bound(std::size_t n, std::size_t d, unsigned q);

// ---------------------------------------------------------------------------
// Adversary game

/// What a query strategy has seen so far.
struct Transcript {
    std::vector<Matrix> queries;
    std::vector<std::uint64_t> labels;
    std::size_t budget = 0; // queries allowed before a guess is due
};

using Move = std::variant<Matrix, Subspace>;
/// Deterministic: the same transcript must give the same move.
using Strategy = std::function<Move(const Transcript &)>;

enum class Accountant { Exact, Certificate };
const char *accountant_name(Accountant a);

/// Largest (n, d)_q the exact accountant enumerates.
inline constexpr double kExactCoverageLimit = 1e6;

/**
 * @brief Adversary answering fresh labels 1, 2, ... while at least two
 * d-dimensional subspaces are stabilized by no non-scalar quotient
 * g_i^{-1} g_j of the queries.
 *
 * A query that is a scalar multiple of an earlier one gets that query's
 * label. The exact accountant keeps the uncovered subspaces; the
 * certificate accountant keeps only the lower bound
 * (n, d)_q - N^2 ((n-1, d)_q + (n-1, d-1)_q).
 */
class AdversaryState {
  public:
    /// Throws std::invalid_argument unless 1 <= d <= n/2, BudgetExceeded if
    /// the exact accountant is forced beyond kExactCoverageLimit.
    AdversaryState(FieldPtr ctx, std::size_t n, std::size_t d, std::optional<Accountant> forced = std::nullopt);

    /// The label for x, or nullopt if answering would leave fewer than two
    /// uncovered subspaces. The state is unchanged in that case.
    std::optional<std::uint64_t> answer(const Matrix &x);

    Accountant accountant() const { return accountant_; }
    const std::vector<Matrix> &queries() const { return queries_; }
    const std::vector<std::uint64_t> &labels() const { return labels_; }
    /// Exact count, or the certified lower bound (clamped at 0).
    BigInt uncovered() const;
    /// Two uncovered subspaces (exact accountant only).
    std::vector<Subspace> witnesses() const;
    const std::vector<Subspace> &uncovered_subspaces() const { return live_; }

  private:
    FieldPtr ctx_;
    std::size_t n_, d_;
    Accountant accountant_;
    BigInt total_, bound_;
    std::vector<Matrix> queries_;
    std::vector<std::uint64_t> labels_;
    std::vector<Subspace> live_;
    std::uint64_t fresh_ = 0;
};

struct GameOutcome {
    std::size_t queries = 0;               // queries answered
    std::optional<std::size_t> threshold;  // 1-based index of the first query not answerable freshly
    std::optional<Subspace> guess;
    bool guess_certified = false;          // the guess is the only uncovered subspace
    std::vector<Subspace> witnesses;       // two consistent subspaces, exact accountant
    BigInt uncovered;
    Accountant accountant = Accountant::Exact;
};

/// Plays the adversary against `strategy` until it guesses, exhausts
/// `max_queries`, or the adversary is forced.
GameOutcome adversary_game(const Strategy &strategy, const FieldPtr &ctx, std::size_t n, std::size_t d,
                           std::size_t max_queries, std::optional<Accountant> forced = std::nullopt);

/// Issues `queries` in order, then guesses the first d-dimensional subspace
/// (enumeration order) consistent with every label equality in the transcript.
Strategy consistent_guess_strategy(const FieldPtr &ctx, std::size_t n, std::size_t d,
                                   std::vector<Matrix> queries);
/// `count` uniform invertible matrices from a seeded stream.
std::vector<Matrix> random_queries(const FieldPtr &ctx, std::size_t n, std::size_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Randomized lower-bound experiment

struct AccuracyPoint {
    std::size_t queries;
    double accuracy;
};

struct BoundReport {
    std::size_t n, d;
    unsigned q;
    double epsilon;
    std::size_t trials; // 0: every subspace was used once
    std::vector<AccuracyPoint> points;
    /// Smallest budget with accuracy >= 1 - epsilon.
    std::optional<std::size_t> min_queries;
};

/// Accuracy of the strategy, for each query budget, against true oracle
/// labels for hidden G_{U} with U uniform. `trials == 0` averages over every
/// subspace exactly.
BoundReport randomized_bound_experiment(const FieldPtr &ctx, std::size_t n, std::size_t d, const Strategy &strategy,
                                        const std::vector<std::size_t> &budgets, std::size_t trials,
                                        double epsilon, std::uint64_t seed);

struct ThresholdRow {
    unsigned q;
    std::size_t n, d;
    std::size_t threshold_n;
    Accountant accountant;
};

/// CSV with header q,n,d,threshold_N,accountant.
void write_threshold_csv(std::ostream &os, const std::vector<ThresholdRow> &rows);

} // namespace parahsp
