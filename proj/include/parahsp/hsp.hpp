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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "parahsp/qsim.hpp"
#include "parahsp/views.hpp"

namespace parahsp {

struct AlgoConfig {
    /// Target failure probability per probabilistic stage.
    double delta = 1e-6;
    /// Trials per probabilistic stage; 0 selects ceil(64 ln(3 / delta)).
    std::size_t max_repetitions = 0;
    /// Largest group enumerated to prepare coset states.
    double enumeration_budget = 2e6;

    std::size_t repetitions() const;
    /// Extra span-stable samples the abelian HSP waits for, ceil(log_q(1/delta)).
    std::size_t abelian_margin(unsigned q) const;
};

struct TraceRecord {
    std::string stage;
    std::size_t trial;
    std::string outcome;
    std::uint64_t queries; // root-oracle counter after the record
};

/// Shared state of one algorithm run.
struct RunContext {
    const AlgoConfig &config;
    Rng &rng;
    std::vector<TraceRecord> *trace = nullptr;
    mutable std::size_t trials = 0;

    void record(const GroupView &v, std::string stage, std::size_t trial, std::string outcome) const;
};

// ---------------------------------------------------------------------------
// Coset-state samplers for the groups the algorithms work in.

/// Coset states of GL_m (the whole view) in Mat_m with the trace form.
CosetSampler gl_sampler(const GroupView &view, double budget);
/// Coset states of a vector group in F_q^k with the standard form.
CosetSampler vector_sampler(const VectorGroupView &group, double budget);
/// Right-coset states of the affine group {(b 0; w I)} of the view, stored
/// as the first column of X - I (the space L).
CosetSampler affine_sampler(const GroupView &view, double budget);

// ---------------------------------------------------------------------------
// Algorithms. Each charges one query per coset state and one per classical
// query, all to the root oracle.

/// The hidden subspace of an additive group F_q^k. Throws
/// RepetitionBudgetExceeded.
Subspace abelian_hsp_linear(const VectorGroupView &group, const RunContext &run);

/// U for a hidden setwise stabilizer G_{U}, 0 < U < V.
Subspace find_max_parabolic(const GroupView &view, const RunContext &run);

/// v for a hidden H_v inside the affine group of the view.
Vec find_complement(const GroupView &view, const RunContext &run);

struct Guesses {
    std::optional<Subspace> w1, w2, w3;
    Subspace hyperplane; // the random U' used
};
Guesses guess_subspaces(const GroupView &view, const RunContext &run);

enum class Verdict { NotContained, ContainedProper, Equal };
const char *verdict_name(Verdict v);
/// Decides W <= T and W = T for the smallest member T of the hidden flag.
Verdict verify_subspace(const GroupView &view, const Subspace &w, const RunContext &run);
/// Decides U_1 <= W and U_1 = W for the largest proper member U_1.
Verdict verify_superspace(const GroupView &view, const Subspace &w, const RunContext &run);

/// The hidden flag of a parabolic subgroup.
Flag find_parabolic(const GroupView &view, const RunContext &run);
/// Same, recursing on a superspace of U_1 instead of a subspace of T.
Flag find_parabolic_dual_recursion(const GroupView &view, const RunContext &run);
/// The complete flag of a hidden full unipotent group.
Flag find_unipotent(const GroupView &view, const RunContext &run);

// ---------------------------------------------------------------------------
// Top-level entry points.

/// Abelian: the hidden subgroup is G_{<e_1> + K} with K <= <e_2..e_n>, and
/// the algorithm recovers K from its intersection with {(1 0; w I)}.
enum class Problem { Abelian, MaxParabolic, Complement, Parabolic, ParabolicDual, Unipotent };
const char *problem_name(Problem p);
/// Throws InvalidConfig for an unknown name.
Problem parse_problem(const std::string &name);

struct HSPResult {
    std::variant<std::monostate, Subspace, Flag, Vec> recovered;
    std::size_t trials = 0;
    std::uint64_t queries = 0;
    bool success = false; // filled in by the harness
    std::string error;    // non-empty if the run aborted
    std::vector<TraceRecord> trace;
};

/// Runs `problem` against the oracle. Failures are reported in `error`
/// rather than thrown.
HSPResult solve(Problem problem, const HidingOracle &oracle, const AlgoConfig &config, Rng &rng);

/// The subgroup a recovered object describes. Throws std::invalid_argument
/// if nothing was recovered.
SubgroupSpec spec_of(Problem problem, const FieldPtr &ctx, std::size_t n, const HSPResult &r);

} // namespace parahsp
