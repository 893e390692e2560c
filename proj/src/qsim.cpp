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

#include "parahsp/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "parahsp/errors.hpp"
#include "parahsp/kernels.hpp"

namespace parahsp {

// ---------------------------------------------------------------------------
// StateSpace

StateSpace::StateSpace(FieldPtr ctx, std::size_t coords, std::size_t side)
    : ctx_(std::move(ctx)), coords_(coords), side_(side), dim_(1) {
    const double d = std::pow(double(ctx_->q()), double(coords));
    if (d > 9.0e15) {
        throw BudgetExceeded("state space q^" + std::to_string(coords) + " is not indexable");
    }
    for (std::size_t k = 0; k < coords; ++k) {
        dim_ *= ctx_->q();
    }
}

StateSpace StateSpace::vectors(FieldPtr ctx, std::size_t m) { return StateSpace(std::move(ctx), m, 0); }

StateSpace StateSpace::matrices(FieldPtr ctx, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("matrix state space needs n >= 1");
    }
    return StateSpace(std::move(ctx), n * n, n);
}

std::uint64_t StateSpace::index_of(std::span<const Elem> coords) const {
    if (coords.size() != coords_) {
        throw ShapeMismatch("expected " + std::to_string(coords_) + " coordinates, got " +
                            std::to_string(coords.size()));
    }
    std::uint64_t idx = 0;
    for (Elem c : coords) {
        idx = idx * ctx_->q() + c;
    }
    return idx;
}

std::uint64_t StateSpace::index_of(const Matrix &m) const {
    if (!is_matrix() || m.rows() != side_ || m.cols() != side_) {
        throw ShapeMismatch("matrix does not match the state space");
    }
    return index_of(m.entries());
}

Vec StateSpace::coords_of(std::uint64_t index) const {
    Vec v(coords_);
    for (std::size_t k = coords_; k-- > 0;) {
        v[k] = static_cast<Elem>(index % ctx_->q());
        index /= ctx_->q();
    }
    return v;
}

Matrix StateSpace::matrix_of(std::uint64_t index) const {
    if (!is_matrix()) {
        throw ShapeMismatch("not a matrix state space");
    }
    return Matrix(ctx_, side_, side_, coords_of(index));
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(StateSpace space, double budget) : space_(std::move(space)) {
    if (double(space_.dim()) > budget) {
        throw BudgetExceeded("state of dimension " + std::to_string(space_.dim()) +
                             " exceeds the budget");
    }
    amp_.assign(space_.dim(), Complex(0, 0));
}

StateVector StateVector::basis(StateSpace space, std::uint64_t index) {
    StateVector s(std::move(space));
    s.amp_.at(index) = 1;
    return s;
}

double StateVector::norm_sq() const { return kernels::ops().norm_sq(amp_.data(), amp_.size()); }

StateVector subset_state(const StateSpace &space, std::span<const std::uint64_t> indices, double budget) {
    if (indices.empty()) {
        throw EmptySet("subset state over an empty set");
    }
    StateVector s(space, budget);
    const double a = 1.0 / std::sqrt(double(indices.size()));
    for (std::uint64_t i : indices) {
        if (i >= space.dim()) {
            throw ShapeMismatch("basis index out of range");
        }
        if (s[i] != Complex(0, 0)) {
            throw std::invalid_argument("duplicate point in subset state");
        }
        s[i] = a;
    }
    return s;
}

StateVector subset_state(const StateSpace &space, const std::vector<Vec> &points, const Vec *offset,
                         double budget) {
    const FieldCtx &f = *space.ctx();
    std::vector<std::uint64_t> idx;
    idx.reserve(points.size());
    for (const Vec &p : points) {
        if (offset == nullptr) {
            idx.push_back(space.index_of(p));
            continue;
        }
        Vec v = p;
        for (std::size_t k = 0; k < v.size() && k < offset->size(); ++k) {
            v[k] = f.add(v[k], (*offset)[k]);
        }
        idx.push_back(space.index_of(v));
    }
    return subset_state(space, idx, budget);
}

StateVector subset_state(const StateSpace &space, const std::vector<Matrix> &points, const Matrix *offset,
                         double budget) {
    std::vector<std::uint64_t> idx;
    idx.reserve(points.size());
    for (const Matrix &p : points) {
        idx.push_back(space.index_of(offset ? p + *offset : p));
    }
    return subset_state(space, idx, budget);
}

// ---------------------------------------------------------------------------
// Fourier transform

namespace {

void run_axis(const Complex *in, Complex *out, std::size_t dim, std::size_t q, std::size_t stride,
              const Complex *table) {
    const auto &k = kernels::ops();
    const std::size_t block = q * stride;
    const std::size_t blocks = dim / block;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || dim < (std::size_t(1) << 18) || blocks < 2) {
        k.axis_transform(in, out, dim, q, stride, table);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(hw, blocks);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = blocks * w / workers, hi = blocks * (w + 1) / workers;
        pool.emplace_back([=, &k] {
            k.axis_transform(in + lo * block, out + lo * block, (hi - lo) * block, q, stride, table);
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

} // namespace

void qft_phi_inplace(StateVector &s, BilinearForm form) {
    const StateSpace &space = s.space();
    const FieldCtx &f = *space.ctx();
    if (form == BilinearForm::Trace && !space.is_matrix()) {
        throw ShapeMismatch("trace form needs a matrix state space");
    }
    const std::size_t q = f.q();
    const double norm = 1.0 / std::sqrt(double(q));
    std::vector<Complex> table(q * q);
    for (std::size_t v = 0; v < q; ++v) {
        for (std::size_t u = 0; u < q; ++u) {
            table[v * q + u] = f.character(f.mul(Elem(u), Elem(v))) * norm;
        }
    }

    std::span<Complex> a = s.amplitudes();
    const std::size_t dim = a.size();
    std::vector<Complex> buf(dim);
    Complex *src = a.data(), *dst = buf.data();
    std::size_t stride = dim;
    for (std::size_t k = 0; k < space.coords(); ++k) {
        stride /= q;
        run_axis(src, dst, dim, q, stride, table.data());
        std::swap(src, dst);
    }

    if (form == BilinearForm::Trace) {
        // tr(UV) = <U^T, V>, so out[U] = standard[U^T].
        const std::size_t n = space.side();
        std::vector<std::uint64_t> weight(n * n);
        for (std::size_t k = 0, w = 1; k < n * n; ++k, w *= q) {
            weight[n * n - 1 - k] = w;
        }
        for (std::uint64_t idx = 0; idx < dim; ++idx) {
            std::uint64_t rest = idx, t = 0;
            for (std::size_t k = n * n; k-- > 0;) {
                const std::size_t i = k / n, j = k % n;
                t += (rest % q) * weight[j * n + i];
                rest /= q;
            }
            dst[idx] = src[t];
        }
        std::swap(src, dst);
    }
    if (src != a.data()) {
        std::copy(src, src + dim, a.data());
    }
}

StateVector qft_phi(const StateVector &s, BilinearForm form) {
    StateVector out = s;
    qft_phi_inplace(out, form);
    return out;
}

PostselectResult postselect_invertible(const StateVector &s) {
    const StateSpace &space = s.space();
    if (!space.is_matrix()) {
        throw ShapeMismatch("post-selection on invertibility needs a matrix state space");
    }
    StateVector out = s;
    std::span<Complex> a = out.amplitudes();
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        if (a[i] != Complex(0, 0) && !space.matrix_of(i).invertible()) {
            a[i] = 0;
        }
    }
    const double kept = out.norm_sq();
    const double total = s.norm_sq();
    if (kept <= 1e-300 || total <= 1e-300) {
        throw ZeroMass("no amplitude on invertible matrices");
    }
    kernels::ops().scale(a.data(), a.size(), 1.0 / std::sqrt(kept));
    out.set_subnormalized(false);
    return {std::move(out), kept / total};
}

std::vector<double> distribution(const StateVector &s) {
    std::vector<double> d(s.size());
    std::span<const Complex> a = s.amplitudes();
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = std::norm(a[i]);
    }
    return d;
}

std::uint64_t sample_index(std::span<const double> weights, Rng &rng) {
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    if (!(total > 0)) {
        throw ZeroMass("cannot sample from zero weights");
    }
    const double r = rng.uniform() * total;
    double acc = 0;
    std::uint64_t last = 0;
    for (std::uint64_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0) {
            continue;
        }
        acc += weights[i];
        last = i;
        if (r < acc) {
            return i;
        }
    }
    return last;
}

MeasurementOutcome measure(const StateVector &s, Rng &rng) {
    const std::vector<double> d = distribution(s);
    const std::uint64_t i = sample_index(d, rng);
    double total = 0;
    for (double x : d) {
        total += x;
    }
    return {i, d[i] / total};
}

void write_distribution(std::ostream &out, std::span<const double> dist) {
    static_assert(std::endian::native == std::endian::little, "little-endian host expected");
    out.write(reinterpret_cast<const char *>(dist.data()), std::streamsize(dist.size() * sizeof(double)));
}

std::vector<double> read_distribution(std::istream &in) {
    std::vector<double> out;
    char buf[sizeof(double)];
    while (in.read(buf, sizeof buf)) {
        double d;
        std::memcpy(&d, buf, sizeof d);
        out.push_back(d);
    }
    if (in.gcount() != 0) {
        throw ParseError("distribution stream length is not a multiple of 8");
    }
    return out;
}

// ---------------------------------------------------------------------------
// CosetSampler

CosetSampler::CosetSampler(StateSpace space, BilinearForm form, std::vector<std::uint64_t> points,
                           const std::vector<Label> &labels)
    : space_(std::move(space)), form_(form), points_(std::move(points)) {
    if (points_.size() != labels.size()) {
        throw ShapeMismatch("one label per point required");
    }
    if (points_.empty()) {
        throw EmptySet("coset sampler over an empty group");
    }
    std::unordered_map<Label, std::size_t, LabelHash> ids;
    coset_of_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        auto [it, fresh] = ids.emplace(labels[i], members_.size());
        if (fresh) {
            members_.emplace_back();
        }
        coset_of_[i] = it->second;
        members_[it->second].push_back(i);
    }
}

StateVector CosetSampler::coset_state(std::size_t coset) const {
    std::vector<std::uint64_t> idx;
    for (std::size_t e : members_.at(coset)) {
        idx.push_back(points_[e]);
    }
    return subset_state(space_, idx);
}

const CosetSampler::Cached &CosetSampler::cached(std::size_t coset) {
    auto it = cache_.find(coset);
    if (it != cache_.end()) {
        return it->second;
    }
    StateVector s = coset_state(coset);
    qft_phi_inplace(s, form_);
    Cached c;
    c.dist = distribution(s);
    c.cdf.resize(c.dist.size());
    double acc = 0;
    for (std::size_t i = 0; i < c.dist.size(); ++i) {
        acc += c.dist[i];
        c.cdf[i] = acc;
    }
    return cache_.emplace(coset, std::move(c)).first->second;
}

const std::vector<double> &CosetSampler::fourier_distribution(std::size_t coset) { return cached(coset).dist; }

CosetSampler::Sample CosetSampler::sample(Rng &rng) {
    Sample out;
    out.element = rng.below(points_.size());
    out.coset = coset_of_[out.element];
    const Cached &c = cached(out.coset);
    const double r = rng.uniform() * c.cdf.back();
    auto it = std::upper_bound(c.cdf.begin(), c.cdf.end(), r);
    std::size_t i = std::min<std::size_t>(it - c.cdf.begin(), c.cdf.size() - 1);
    while (c.dist[i] <= 0 && i > 0) {
        --i;
    }
    out.outcome = i;
    return out;
}

StateVector prepare_coset_state(const HidingOracle &oracle, Rng &rng, double budget) {
    const FieldPtr &ctx = oracle.ctx();
    const std::size_t n = oracle.ambient();
    std::vector<Matrix> gl;
    for_each_invertible(ctx, n, [&](const Matrix &x) { gl.push_back(x); }, budget);
    const Matrix &a = gl[rng.below(gl.size())];
    oracle.charge();
    const Label target = oracle.superposition_label(a);
    const std::vector<Label> labels = oracle.superposition_labels(gl);
    const StateSpace space = StateSpace::matrices(ctx, n);
    std::vector<std::uint64_t> idx;
    for (std::size_t i = 0; i < gl.size(); ++i) {
        if (labels[i] == target) {
            idx.push_back(space.index_of(gl[i]));
        }
    }
    return subset_state(space, idx);
}

} // namespace parahsp
