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

#include "parahsp/hsp.hpp"

#include <cmath>

#include "parahsp/encoding.hpp"
#include "parahsp/errors.hpp"

namespace parahsp {

std::size_t AlgoConfig::repetitions() const {
    if (max_repetitions > 0) {
        return max_repetitions;
    }
    if (!(delta > 0 && delta < 1)) {
        throw InvalidConfig("delta must lie in (0, 1)");
    }
    return static_cast<std::size_t>(std::ceil(64.0 * std::log(3.0 / delta)));
}

std::size_t AlgoConfig::abelian_margin(unsigned q) const {
    if (!(delta > 0 && delta < 1)) {
        throw InvalidConfig("delta must lie in (0, 1)");
    }
    return static_cast<std::size_t>(std::ceil(std::log(1.0 / delta) / std::log(double(q))));
}

void RunContext::record(const GroupView &v, std::string stage, std::size_t trial, std::string outcome) const {
    if (trace != nullptr) {
        trace->push_back({std::move(stage), trial, std::move(outcome), v.oracle().queries()});
    }
}

namespace {

Matrix frame_of(const FieldPtr &ctx, std::size_t n, const std::vector<const Subspace *> &parts) {
    std::vector<Vec> cols;
    for (const Subspace *s : parts) {
        for (Vec &v : s->basis_vectors()) {
            cols.push_back(std::move(v));
        }
    }
    return Matrix::from_columns(ctx, n, cols);
}

std::optional<Subspace> nonzero(Subspace s) {
    if (s.is_zero()) {
        return std::nullopt;
    }
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// Samplers

CosetSampler gl_sampler(const GroupView &view, double budget) {
    const StateSpace space = StateSpace::matrices(view.ctx(), view.dim());
    std::vector<Matrix> gl;
    for_each_invertible(view.ctx(), view.dim(), [&](const Matrix &x) { gl.push_back(x); }, budget);
    std::vector<std::uint64_t> pts;
    pts.reserve(gl.size());
    for (const Matrix &x : gl) {
        pts.push_back(space.index_of(x));
    }
    return CosetSampler(space, BilinearForm::Trace, std::move(pts), view.superposition_labels(gl));
}

CosetSampler vector_sampler(const VectorGroupView &group, double budget) {
    const StateSpace space = StateSpace::vectors(group.base().ctx(), group.dim());
    if (double(space.dim()) > budget) {
        throw BudgetExceeded("vector group of order " + std::to_string(space.dim()) + " exceeds the budget");
    }
    std::vector<Matrix> elems;
    std::vector<std::uint64_t> pts;
    for (std::uint64_t i = 0; i < space.dim(); ++i) {
        elems.push_back(group.element(space.coords_of(i)));
        pts.push_back(i);
    }
    return CosetSampler(space, BilinearForm::Standard, std::move(pts), group.base().superposition_labels(elems));
}

CosetSampler affine_sampler(const GroupView &view, double budget) {
    const GroupView right = view.with_side(Side::Right);
    const std::size_t n = view.dim();
    const StateSpace space = StateSpace::vectors(view.ctx(), n);
    const std::vector<Matrix> elems = enumerate_subgroup(SubgroupSpec::affine_g(view.ctx(), n), budget);
    const FieldCtx &f = *view.ctx();
    std::vector<std::uint64_t> pts;
    for (const Matrix &x : elems) {
        Vec c = x.column(0);
        c[0] = f.sub(c[0], 1);
        pts.push_back(space.index_of(c));
    }
    return CosetSampler(space, BilinearForm::Standard, std::move(pts), right.superposition_labels(elems));
}

// ---------------------------------------------------------------------------
// Abelian HSP

Subspace abelian_hsp_linear(const VectorGroupView &group, const RunContext &run) {
    const std::size_t k = group.dim();
    const FieldPtr &ctx = group.base().ctx();
    if (k == 0) {
        return Subspace::zero(ctx, 0);
    }
    CosetSampler sampler = vector_sampler(group, run.config.enumeration_budget);
    const std::size_t need = k + run.config.abelian_margin(ctx->q());
    const std::size_t cap = run.config.repetitions() * (k + 1);
    Subspace span = Subspace::zero(ctx, k);
    std::size_t stable = 0;
    for (std::size_t t = 0; t < cap; ++t) {
        ++run.trials;
        group.base().charge();
        const Vec u = sampler.space().coords_of(sampler.sample(run.rng).outcome);
        if (span.contains(u)) {
            ++stable;
        } else {
            span = span.sum(Subspace::span(ctx, k, {u}));
            stable = 0;
        }
        if (span.is_full() || stable >= need) {
            Subspace w = span.perp();
            run.record(group.base(), "abelian", t, encode_subspace(w));
            return w;
        }
    }
    throw RepetitionBudgetExceeded("abelian HSP span did not settle");
}

// ---------------------------------------------------------------------------
// Maximal parabolic subgroups

Subspace find_max_parabolic(const GroupView &view, const RunContext &run) {
    const std::size_t m = view.dim();
    if (m < 2) {
        throw std::invalid_argument("maximal parabolic subgroups need n >= 2");
    }
    CosetSampler left = gl_sampler(view.with_side(Side::Left), run.config.enumeration_budget);
    CosetSampler right = gl_sampler(view.with_side(Side::Right), run.config.enumeration_budget);
    const StateSpace &space = left.space();
    const std::size_t reps = run.config.repetitions();
    for (std::size_t t = 0; t < reps; ++t) {
        for (Side side : {Side::Left, Side::Right}) {
            ++run.trials;
            view.charge();
            CosetSampler &s = side == Side::Left ? left : right;
            const Matrix x = space.matrix_of(s.sample(run.rng).outcome);
            // A left coset state reveals XV = U, a right one ker X = U.
            const Subspace u = side == Side::Left ? x.image() : x.kernel();
            if (u.is_zero() || u.is_full()) {
                continue;
            }
            if (view.contains_all(generators(SubgroupSpec::setwise(u)))) {
                run.record(view, std::string("max-parabolic/") + side_name(side), t, encode_subspace(u));
                return u;
            }
        }
    }
    throw RepetitionBudgetExceeded("maximal parabolic not found");
}

// ---------------------------------------------------------------------------
// Complements in the affine group

Vec find_complement(const GroupView &view, const RunContext &run) {
    const std::size_t n = view.dim();
    if (n < 2) {
        throw std::invalid_argument("the affine group needs n >= 2");
    }
    const FieldCtx &f = *view.ctx();
    CosetSampler sampler = affine_sampler(view, run.config.enumeration_budget);
    const std::size_t reps = run.config.repetitions();
    for (std::size_t t = 0; t < reps; ++t) {
        ++run.trials;
        std::vector<Vec> samples;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            view.charge();
            samples.push_back(sampler.space().coords_of(sampler.sample(run.rng).outcome));
        }
        const Subspace s = Subspace::span(view.ctx(), n, samples);
        if (s.dim() != n - 1) {
            continue;
        }
        const Vec w = s.perp().basis_vectors().front();
        if (w[0] == 0) {
            continue;
        }
        const Elem inv = f.inv(w[0]);
        Vec v(w.begin() + 1, w.end());
        for (Elem &x : v) {
            x = f.mul(x, inv);
        }
        if (view.contains_all(generators(SubgroupSpec::affine_complement(view.ctx(), v)))) {
            run.record(view, "complement", t, encode_vector(v));
            return v;
        }
    }
    throw RepetitionBudgetExceeded("complement not found");
}

// ---------------------------------------------------------------------------
// Guessing part of the flag

Guesses guess_subspaces(const GroupView &view, const RunContext &run) {
    const std::size_t m = view.dim();
    const FieldPtr &ctx = view.ctx();
    const Subspace hyper = random_hyperplane(ctx, m, run.rng);
    Guesses g{std::nullopt, std::nullopt, std::nullopt, hyper};

    // Procedure 1: H cap N by the abelian HSP; its image sum lies in T.
    const VectorGroupView n_group = VectorGroupView::hom_space(view, hyper, hyper);
    const Subspace image = n_group.image_sum(abelian_hsp_linear(n_group, run));
    g.w1 = nonzero(image);

    // Procedure 2: H cap G_{U'} is some H_v in affine coordinates.
    if (ctx->q() >= m) {
        const Subspace c = hyper.direct_complement();
        const Matrix p = frame_of(ctx, m, {&c, &hyper});
        try {
            const Vec v = find_complement(view.conjugated(p), run);
            Vec col(m);
            col[0] = 1;
            std::copy(v.begin(), v.end(), col.begin() + 1);
            g.w2 = Subspace::span(ctx, m, {p.apply(col)});
        } catch (const RepetitionBudgetExceeded &) {
        }
    }

    // Procedure 3: the same image sum is U' cap U_{k-2} when T <= U'.
    if (ctx->q() < m && !image.is_zero()) {
        if (image.dim() == 1) {
            g.w3 = image;
        } else if (image.dim() < m) {
            const Subspace rest = image.direct_complement();
            const Matrix p = frame_of(ctx, m, {&image, &rest});
            try {
                const Subspace u = find_max_parabolic(view.restricted(p, image.dim()), run);
                g.w3 = Subspace::from_coordinates(frame_of(ctx, m, {&image}), u);
            } catch (const RepetitionBudgetExceeded &) {
            }
        }
    }
    run.record(view, "guess", 0,
               std::string(g.w1 ? "w1 " : "") + (g.w2 ? "w2 " : "") + (g.w3 ? "w3" : ""));
    return g;
}

// ---------------------------------------------------------------------------
// Checking

const char *verdict_name(Verdict v) {
    switch (v) {
    case Verdict::NotContained:
        return "not-contained";
    case Verdict::ContainedProper:
        return "contained-proper";
    case Verdict::Equal:
        return "equal";
    }
    return "?";
}

namespace {

Verdict verify_with(const GroupView &view, const Subspace &w, const SubgroupSpec &witness_group,
                    const RunContext &run) {
    if (w.is_zero() || w.is_full()) {
        throw std::invalid_argument("verification needs 0 < W < V");
    }
    if (!view.contains_all(generators(witness_group))) {
        return Verdict::NotContained;
    }
    const Subspace comp = w.direct_complement();
    const VectorGroupView l_prime = VectorGroupView::hom_space(view, comp, comp);
    return abelian_hsp_linear(l_prime, run).is_zero() ? Verdict::Equal : Verdict::ContainedProper;
}

} // namespace

Verdict verify_subspace(const GroupView &view, const Subspace &w, const RunContext &run) {
    return verify_with(view, w, SubgroupSpec::space_l(w), run);
}

Verdict verify_superspace(const GroupView &view, const Subspace &w, const RunContext &run) {
    return verify_with(view, w, SubgroupSpec::pointwise(w), run);
}

// ---------------------------------------------------------------------------
// Parabolic subgroups

namespace {

bool hides_whole_group(const GroupView &view) {
    return view.dim() == 1 || view.contains_all(gl_generators(view.ctx(), view.dim()));
}

struct Found {
    Subspace w;
    Verdict verdict;
};

template <typename GuessFn, typename VerifyFn>
Found search(const GroupView &view, const RunContext &run, const char *stage, GuessFn guess, VerifyFn verify) {
    const std::size_t reps = run.config.repetitions();
    for (std::size_t t = 0; t < reps; ++t) {
        ++run.trials;
        const Guesses g = guess();
        for (const auto *cand : {&g.w1, &g.w2, &g.w3}) {
            if (!*cand) {
                continue;
            }
            std::optional<Found> hit = verify(**cand);
            if (hit) {
                run.record(view, stage, t, std::string(verdict_name(hit->verdict)) + " " + encode_subspace(hit->w));
                return *hit;
            }
        }
    }
    throw RepetitionBudgetExceeded(std::string(stage) + ": no verified guess");
}

} // namespace

Flag find_parabolic(const GroupView &view, const RunContext &run) {
    const std::size_t m = view.dim();
    const FieldPtr &ctx = view.ctx();
    if (hides_whole_group(view)) {
        return Flag::trivial(ctx, m);
    }
    const Found found = search(
        view, run, "parabolic", [&] { return guess_subspaces(view, run); },
        [&](const Subspace &w) -> std::optional<Found> {
            if (w.is_zero() || w.is_full()) {
                return std::nullopt;
            }
            const Verdict v = verify_subspace(view, w, run);
            return v == Verdict::NotContained ? std::nullopt : std::optional<Found>(Found{w, v});
        });

    const Subspace comp = found.w.direct_complement();
    const Matrix p = frame_of(ctx, m, {&comp, &found.w});
    const Flag sub = find_parabolic(view.restricted(p, comp.dim()), run);
    const Matrix frame = frame_of(ctx, m, {&comp});
    std::vector<Subspace> chain;
    for (const Subspace &u : sub.chain()) {
        chain.push_back(Subspace::from_coordinates(frame, u).sum(found.w));
    }
    if (found.verdict == Verdict::Equal) {
        chain.push_back(found.w);
    }
    return Flag(ctx, m, chain);
}

Flag find_parabolic_dual_recursion(const GroupView &view, const RunContext &run) {
    const std::size_t m = view.dim();
    const FieldPtr &ctx = view.ctx();
    if (hides_whole_group(view)) {
        return Flag::trivial(ctx, m);
    }
    // Guesses below the smallest member of the transposed flag are
    // orthogonal complements of superspaces of U_1.
    const GroupView dual = view.dual();
    const Found found = search(
        view, run, "parabolic-dual", [&] { return guess_subspaces(dual, run); },
        [&](const Subspace &wd) -> std::optional<Found> {
            const Subspace w = wd.perp();
            if (w.is_zero() || w.is_full()) {
                return std::nullopt;
            }
            const Verdict v = verify_superspace(view, w, run);
            return v == Verdict::NotContained ? std::nullopt : std::optional<Found>(Found{w, v});
        });

    const Subspace comp = found.w.direct_complement();
    const Matrix p = frame_of(ctx, m, {&found.w, &comp});
    const Flag sub = find_parabolic_dual_recursion(view.restricted(p, found.w.dim()), run);
    const Matrix frame = frame_of(ctx, m, {&found.w});
    std::vector<Subspace> chain;
    if (found.verdict == Verdict::Equal) {
        chain.push_back(found.w);
    }
    for (const Subspace &u : sub.chain()) {
        chain.push_back(Subspace::from_coordinates(frame, u));
    }
    return Flag(ctx, m, chain);
}

// ---------------------------------------------------------------------------
// Full unipotent subgroups

Flag find_unipotent(const GroupView &view, const RunContext &run) {
    const std::size_t m = view.dim();
    const FieldPtr &ctx = view.ctx();
    if (m == 1) {
        return Flag::trivial(ctx, 1);
    }
    const std::size_t reps = run.config.repetitions();
    for (std::size_t t = 0; t < reps; ++t) {
        ++run.trials;
        const Subspace hyper = random_hyperplane(ctx, m, run.rng);
        const VectorGroupView n_group = VectorGroupView::hom_space(view, hyper, hyper);
        const Subspace line = n_group.image_sum(abelian_hsp_linear(n_group, run));
        if (line.dim() != 1) {
            continue;
        }
        const Subspace comp = line.direct_complement();
        if (!view.contains_all(generators(SubgroupSpec::space_l_prime(comp, line)))) {
            continue;
        }
        run.record(view, "unipotent", t, encode_subspace(line));
        const Matrix p = frame_of(ctx, m, {&comp, &line});
        const Flag sub = find_unipotent(view.restricted(p, m - 1), run);
        const Matrix frame = frame_of(ctx, m, {&comp});
        std::vector<Subspace> chain;
        for (const Subspace &u : sub.chain()) {
            chain.push_back(Subspace::from_coordinates(frame, u).sum(line));
        }
        chain.push_back(line);
        return Flag(ctx, m, chain);
    }
    throw RepetitionBudgetExceeded("unipotent: no verified line");
}

// ---------------------------------------------------------------------------
// Entry points

const char *problem_name(Problem p) {
    switch (p) {
    case Problem::Abelian:
        return "abelian";
    case Problem::MaxParabolic:
        return "max-parabolic";
    case Problem::Complement:
        return "complement";
    case Problem::Parabolic:
        return "parabolic";
    case Problem::ParabolicDual:
        return "parabolic-dual";
    case Problem::Unipotent:
        return "unipotent";
    }
    return "?";
}

Problem parse_problem(const std::string &name) {
    for (Problem p : {Problem::Abelian, Problem::MaxParabolic, Problem::Complement, Problem::Parabolic,
                      Problem::ParabolicDual, Problem::Unipotent}) {
        if (name == problem_name(p)) {
            return p;
        }
    }
    throw InvalidConfig("problem: unknown value '" + name + "'");
}

namespace {

Subspace tail_coordinates(const FieldPtr &ctx, std::size_t n) {
    std::vector<Vec> vs;
    for (std::size_t i = 1; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        vs.push_back(e);
    }
    return Subspace::span(ctx, n, vs);
}

} // namespace

HSPResult solve(Problem problem, const HidingOracle &oracle, const AlgoConfig &config, Rng &rng) {
    HSPResult r;
    RunContext run{config, rng, &r.trace};
    const GroupView root(oracle);
    const std::uint64_t before = oracle.queries();
    try {
        switch (problem) {
        case Problem::Abelian: {
            const Subspace tail = tail_coordinates(oracle.ctx(), oracle.ambient());
            const VectorGroupView n_group = VectorGroupView::hom_space(root, tail, tail);
            r.recovered = n_group.image_sum(abelian_hsp_linear(n_group, run));
            break;
        }
        case Problem::MaxParabolic:
            r.recovered = find_max_parabolic(root, run);
            break;
        case Problem::Complement:
            r.recovered = find_complement(root, run);
            break;
        case Problem::Parabolic:
            r.recovered = find_parabolic(root, run);
            break;
        case Problem::ParabolicDual:
            r.recovered = find_parabolic_dual_recursion(root, run);
            break;
        case Problem::Unipotent:
            r.recovered = find_unipotent(root, run);
            break;
        }
    } catch (const Error &e) {
        r.error = e.what();
    } catch (const std::invalid_argument &e) {
        r.error = e.what();
    }
    r.trials = run.trials;
    r.queries = oracle.queries() - before;
    return r;
}

SubgroupSpec spec_of(Problem problem, const FieldPtr &ctx, std::size_t n, const HSPResult &r) {
    if (std::holds_alternative<std::monostate>(r.recovered)) {
        throw std::invalid_argument("nothing was recovered");
    }
    switch (problem) {
    case Problem::Abelian: {
        Vec e1(n, 0);
        e1[0] = 1;
        return SubgroupSpec::setwise(std::get<Subspace>(r.recovered).sum(Subspace::span(ctx, n, {e1})));
    }
    case Problem::MaxParabolic:
        return SubgroupSpec::setwise(std::get<Subspace>(r.recovered));
    case Problem::Complement:
        return SubgroupSpec::affine_complement(ctx, std::get<Vec>(r.recovered));
    case Problem::Parabolic:
    case Problem::ParabolicDual:
        return SubgroupSpec::parabolic(std::get<Flag>(r.recovered));
    case Problem::Unipotent:
        return SubgroupSpec::unipotent(std::get<Flag>(r.recovered));
    }
    throw std::invalid_argument("unknown problem");
}

} // namespace parahsp
