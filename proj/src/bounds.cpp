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

#include "parahsp/bounds.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "parahsp/errors.hpp"
#include "parahsp/views.hpp"

namespace parahsp {

namespace {

bool stabilizes(const Matrix &g, const Subspace &u) {
    for (std::size_t i = 0; i < u.dim(); ++i) {
        if (!u.contains(g.apply(u.basis().row(i)))) {
            return false;
        }
    }
    return true;
}

} // namespace

DeterministicResult deterministic_search(const HidingOracle &oracle, std::size_t d) {
    const FieldPtr &ctx = oracle.ctx();
    const std::size_t n = oracle.ambient();
    if (d > n) {
        throw std::invalid_argument("subspace dimension exceeds the ambient dimension");
    }
    const std::uint64_t start = oracle.queries();
    DeterministicResult r{Subspace::full(ctx, n)};
    GroupView view(oracle);
    Matrix frame = Matrix::identity(ctx, n); // columns span the current W
    for (std::size_t m = n; m > d; --m) {
        bool found = false;
        for (const Subspace &h : enumerate_subspaces(ctx, m, m - 1)) {
            ++r.hyperplane_tests;
            // U <= W iff every X fixing W pointwise stabilizes U.
            if (!view.contains_all(generators(SubgroupSpec::pointwise(h)))) {
                continue;
            }
            std::vector<Vec> cols = h.basis_vectors();
            const std::vector<Vec> comp = h.direct_complement().basis_vectors();
            const Matrix inner = Matrix::from_columns(ctx, m, cols);
            cols.insert(cols.end(), comp.begin(), comp.end());
            view = view.restricted(Matrix::from_columns(ctx, m, cols), m - 1);
            frame = frame * inner;
            found = true;
            break;
        }
        if (!found) {
            throw std::invalid_argument("no hyperplane contains the hidden subspace");
        }
    }
    std::vector<Vec> span;
    for (std::size_t j = 0; j < frame.cols(); ++j) {
        span.push_back(frame.column(j));
    }
    r.u = Subspace::span(ctx, n, span);
    r.queries = oracle.queries() - start;
    return r;
}

BigInt count_stabilized(const Matrix &a, std::size_t d, double budget) {
    if (!a.square() || !a.invertible()) {
        throw Singular("count_stabilized needs an invertible matrix");
    }
    BigInt count = 0;
    for_each_subspace(
        a.ctx(), a.rows(), d, [&](const Subspace &u) { count += stabilizes(a, u); }, budget);
    return count;
}

BigInt stabilized_bound(std::size_t n, std::size_t d, unsigned q) {
    if (n == 0) {
        return 0;
    }
    BigInt b = gauss_binom(unsigned(n - 1), unsigned(d), q);
    if (d > 0) {
        b += gauss_binom(unsigned(n - 1), unsigned(d - 1), q);
    }
    return b;
}

const char *accountant_name(Accountant a) { return a == Accountant::Exact ? "exact" : "certificate"; }

// ---------------------------------------------------------------------------

AdversaryState::AdversaryState(FieldPtr ctx, std::size_t n, std::size_t d, std::optional<Accountant> forced)
    : ctx_(std::move(ctx)), n_(n), d_(d) {
    if (d == 0 || 2 * d > n) {
        throw std::invalid_argument("adversary needs 1 <= d <= n/2");
    }
    const unsigned q = ctx_->q();
    total_ = gauss_binom(unsigned(n), unsigned(d), q);
    bound_ = stabilized_bound(n, d, q);
    accountant_ = forced.value_or(total_ <= BigInt(kExactCoverageLimit) ? Accountant::Exact : Accountant::Certificate);
    if (accountant_ == Accountant::Exact) {
        live_ = enumerate_subspaces(ctx_, n, d, kExactCoverageLimit);
    }
}

std::optional<std::uint64_t> AdversaryState::answer(const Matrix &x) {
    if (x.rows() != n_ || x.cols() != n_) {
        throw ShapeMismatch("adversary query has the wrong size");
    }
    const Matrix xinv = x.inverse();
    std::vector<Matrix> quotients;
    for (std::size_t i = 0; i < queries_.size(); ++i) {
        Matrix g = xinv * queries_[i];
        if (g.is_scalar()) {
            queries_.push_back(x);
            labels_.push_back(labels_[i]);
            return labels_.back();
        }
        quotients.push_back(std::move(g));
    }
    if (accountant_ == Accountant::Exact) {
        std::vector<Subspace> keep;
        for (const Subspace &u : live_) {
            const bool hit = std::any_of(quotients.begin(), quotients.end(),
                                         [&](const Matrix &g) { return stabilizes(g, u); });
            if (!hit) {
                keep.push_back(u);
            }
        }
        if (keep.size() < 2) {
            return std::nullopt;
        }
        live_ = std::move(keep);
    } else {
        const BigInt nn = fresh_ + 1;
        if (total_ - nn * nn * bound_ < 2) {
            return std::nullopt;
        }
    }
    queries_.push_back(x);
    labels_.push_back(++fresh_);
    return labels_.back();
}

BigInt AdversaryState::uncovered() const {
    if (accountant_ == Accountant::Exact) {
        return BigInt(live_.size());
    }
    const BigInt covered = BigInt(fresh_) * fresh_ * bound_;
    return covered >= total_ ? BigInt(0) : total_ - covered;
}

std::vector<Subspace> AdversaryState::witnesses() const {
    if (accountant_ != Accountant::Exact || live_.size() < 2) {
        return {};
    }
    return {live_[0], live_[1]};
}

GameOutcome adversary_game(const Strategy &strategy, const FieldPtr &ctx, std::size_t n, std::size_t d,
                           std::size_t max_queries, std::optional<Accountant> forced) {
    AdversaryState st(ctx, n, d, forced);
    GameOutcome out;
    out.accountant = st.accountant();
    Transcript tr;
    tr.budget = max_queries;
    while (true) {
        Move mv = strategy(tr);
        if (auto *g = std::get_if<Subspace>(&mv)) {
            out.guess = *g;
            break;
        }
        if (tr.queries.size() >= max_queries) {
            break;
        }
        const Matrix &x = std::get<Matrix>(mv);
        const auto label = st.answer(x);
        if (!label) {
            out.threshold = tr.queries.size() + 1;
            break;
        }
        tr.queries.push_back(x);
        tr.labels.push_back(*label);
    }
    out.queries = tr.queries.size();
    out.uncovered = st.uncovered();
    out.witnesses = st.witnesses();
    out.guess_certified = out.guess && st.accountant() == Accountant::Exact &&
                          st.uncovered_subspaces().size() == 1 && st.uncovered_subspaces()[0] == *out.guess;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

/// For a fixed query list, which pairs (i, j), i < j, have g_i^{-1} g_j
/// stabilizing each candidate subspace. Grown on demand.
struct PairCache {
    std::vector<Matrix> queries;
    std::vector<Subspace> candidates;
    std::size_t covered = 0; // prefix length already processed
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> stab;

    void extend(std::size_t len) {
        for (; covered < len; ++covered) {
            const std::size_t j = covered;
            const Matrix inv = queries[j].inverse();
            for (std::size_t i = 0; i < j; ++i) {
                const Matrix g = inv * queries[i];
                for (std::size_t c = 0; c < candidates.size(); ++c) {
                    if (stabilizes(g, candidates[c])) {
                        stab[c].emplace_back(i, j);
                    }
                }
            }
        }
    }
};

} // namespace

Strategy consistent_guess_strategy(const FieldPtr &ctx, std::size_t n, std::size_t d, std::vector<Matrix> queries) {
    auto cache = std::make_shared<PairCache>();
    cache->queries = std::move(queries);
    cache->candidates = enumerate_subspaces(ctx, n, d, kExactCoverageLimit);
    cache->stab.resize(cache->candidates.size());
    return [cache](const Transcript &tr) -> Move {
        const std::size_t len = tr.queries.size();
        if (len < std::min(cache->queries.size(), tr.budget)) {
            return cache->queries[len];
        }
        cache->extend(len);
        std::map<std::uint64_t, std::vector<std::size_t>> by_label;
        for (std::size_t j = 0; j < len; ++j) {
            by_label[tr.labels[j]].push_back(j);
        }
        std::vector<std::pair<std::size_t, std::size_t>> equal;
        for (const auto &[label, idx] : by_label) {
            for (std::size_t b = 1; b < idx.size(); ++b) {
                for (std::size_t a = 0; a < b; ++a) {
                    equal.emplace_back(idx[a], idx[b]);
                }
            }
        }
        std::sort(equal.begin(), equal.end(),
                  [](const auto &a, const auto &b) { return a.second != b.second ? a.second < b.second : a.first < b.first; });
        for (std::size_t c = 0; c < cache->candidates.size(); ++c) {
            const auto &s = cache->stab[c];
            std::size_t k = 0;
            while (k < s.size() && s[k].second < len && k < equal.size() && s[k] == equal[k]) {
                ++k;
            }
            if (k == equal.size() && (k == s.size() || s[k].second >= len)) {
                return cache->candidates[c];
            }
        }
        return cache->candidates.front();
    };
}

std::vector<Matrix> random_queries(const FieldPtr &ctx, std::size_t n, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Matrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(random_invertible(ctx, n, rng));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Oracle answers for one hidden G_{U}, remembered across budgets: labels
/// number the left cosets in order of first appearance.
struct Labelled {
    SubgroupSpec spec;
    std::vector<Matrix> queries;
    std::vector<std::uint64_t> labels;
    std::unordered_map<Label, std::uint64_t, LabelHash> ids;

    std::uint64_t label_at(std::size_t k, const Matrix &x) {
        if (k < queries.size() && queries[k] == x) {
            return labels[k];
        }
        if (k < queries.size()) {
            queries.erase(queries.begin() + std::ptrdiff_t(k), queries.end());
            labels.resize(k);
            ids.clear();
            for (std::size_t i = 0; i < k; ++i) {
                ids.emplace(coset_label(spec, queries[i], Side::Left), labels[i]);
            }
        }
        const auto [it, fresh] = ids.emplace(coset_label(spec, x, Side::Left), ids.size() + 1);
        queries.push_back(x);
        labels.push_back(it->second);
        return it->second;
    }
};

/// Plays `strategy` with `budget` against the true labels.
std::optional<Subspace> play(const Strategy &strategy, std::size_t budget, Labelled &oracle) {
    Transcript cur;
    cur.budget = budget;
    while (true) {
        Move mv = strategy(cur);
        if (auto *g = std::get_if<Subspace>(&mv)) {
            return *g;
        }
        if (cur.queries.size() >= budget) {
            return std::nullopt;
        }
        Matrix &x = std::get<Matrix>(mv);
        cur.labels.push_back(oracle.label_at(cur.queries.size(), x));
        cur.queries.push_back(std::move(x));
    }
}

} // namespace

BoundReport randomized_bound_experiment(const FieldPtr &ctx, std::size_t n, std::size_t d, const Strategy &strategy,
                                        const std::vector<std::size_t> &budgets, std::size_t trials,
                                        double epsilon, std::uint64_t seed) {
    if (d == 0 || 2 * d > n) {
        throw std::invalid_argument("bound experiment needs 1 <= d <= n/2");
    }
    BoundReport rep{n, d, ctx->q(), epsilon, trials, {}, std::nullopt};
    std::vector<Subspace> hidden;
    if (trials == 0) {
        hidden = enumerate_subspaces(ctx, n, d, kExactCoverageLimit);
    } else {
        Rng rng(seed);
        for (std::size_t t = 0; t < trials; ++t) {
            hidden.push_back(random_subspace(ctx, n, d, rng));
        }
    }
    std::vector<std::size_t> sorted = budgets;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> correct(sorted.size(), 0);
    for (const Subspace &u : hidden) {
        Labelled oracle{SubgroupSpec::setwise(u), {}, {}, {}};
        for (std::size_t b = 0; b < sorted.size(); ++b) {
            const auto guess = play(strategy, sorted[b], oracle);
            correct[b] += guess && *guess == u;
        }
    }
    for (std::size_t b = 0; b < sorted.size(); ++b) {
        const double acc = double(correct[b]) / double(hidden.size());
        rep.points.push_back({sorted[b], acc});
        if (!rep.min_queries && acc >= 1.0 - epsilon) {
            rep.min_queries = sorted[b];
        }
    }
    return rep;
}

void write_threshold_csv(std::ostream &os, const std::vector<ThresholdRow> &rows) {
    os << "q,n,d,threshold_N,accountant\n";
    for (const ThresholdRow &r : rows) {
        os << r.q << ',' << r.n << ',' << r.d << ',' << r.threshold_n << ',' << accountant_name(r.accountant) << '\n';
    }
}

} // namespace parahsp
