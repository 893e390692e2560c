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

#include "parahsp/views.hpp"

#include "parahsp/errors.hpp"

namespace parahsp {

GroupView::GroupView(const HidingOracle &oracle)
    : oracle_(&oracle), m_(oracle.ambient()), side_(oracle.side()) {}

GroupView::GroupView(const HidingOracle *oracle, std::size_t m, Side side, std::shared_ptr<const Map> map)
    : oracle_(oracle), m_(m), side_(side), map_(std::move(map)) {}

Matrix GroupView::embed(const Matrix &x) const {
    if (x.rows() != m_ || x.cols() != m_) {
        throw ShapeMismatch("view of GL_" + std::to_string(m_) + " got a " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + " matrix");
    }
    return map_ ? (*map_)(x) : x;
}

GroupView GroupView::with_side(Side s) const { return GroupView(oracle_, m_, s, map_); }

GroupView GroupView::restricted(const Matrix &p, std::size_t k) const {
    if (p.rows() != m_ || p.cols() != m_ || k == 0 || k > m_) {
        throw ShapeMismatch("restriction frame must be " + std::to_string(m_) + "x" + std::to_string(m_));
    }
    const Matrix pinv = p.inverse();
    auto parent = map_;
    const std::size_t m = m_;
    auto map = std::make_shared<const Map>([p, pinv, parent, m](const Matrix &x) {
        Matrix y = p * Matrix::embed_top_left(x, m) * pinv;
        return parent ? (*parent)(y) : y;
    });
    return GroupView(oracle_, k, side_, std::move(map));
}

GroupView GroupView::dual() const {
    auto parent = map_;
    auto map = std::make_shared<const Map>([parent](const Matrix &x) {
        Matrix y = x.transpose().inverse();
        return parent ? (*parent)(y) : y;
    });
    return GroupView(oracle_, m_, side_, std::move(map));
}

Label GroupView::label(const Matrix &x) const {
    const Matrix y = embed(x);
    return side_ == oracle_->side() ? oracle_->superposition_label(y)
                                    : oracle_->superposition_label(y.inverse());
}

Label GroupView::query(const Matrix &x) const {
    oracle_->charge();
    return label(x);
}

std::vector<Label> GroupView::superposition_labels(std::span<const Matrix> xs) const {
    std::vector<Label> out;
    out.reserve(xs.size());
    for (const Matrix &x : xs) {
        out.push_back(label(x));
    }
    return out;
}

bool GroupView::contains_all(const std::vector<Matrix> &gens) const {
    const Label id = query(Matrix::identity(ctx(), m_));
    for (const Matrix &g : gens) {
        if (!(query(g) == id)) {
            return false;
        }
    }
    return true;
}

VectorGroupView::VectorGroupView(GroupView base, std::vector<Matrix> basis)
    : base_(std::move(base)), basis_(std::move(basis)) {
    for (const Matrix &a : basis_) {
        if (a.rows() != base_.dim() || a.cols() != base_.dim()) {
            throw ShapeMismatch("vector group basis has the wrong size");
        }
        for (const Matrix &b : basis_) {
            if ((a * b).rank() != 0) {
                throw std::invalid_argument("vector group basis must satisfy B_i B_j = 0");
            }
        }
    }
}

VectorGroupView VectorGroupView::hom_space(GroupView base, const Subspace &image, const Subspace &kill) {
    if (!kill.contains(image)) {
        throw std::invalid_argument("hom_space needs image <= kill");
    }
    const Subspace dual = kill.perp();
    std::vector<Matrix> basis;
    const std::size_t n = base.dim();
    for (const Vec &a : image.basis_vectors()) {
        for (const Vec &phi : dual.basis_vectors()) {
            Matrix b(base.ctx(), n, n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    b.at(i, j) = base.ctx()->mul(a[i], phi[j]);
                }
            }
            basis.push_back(std::move(b));
        }
    }
    return VectorGroupView(std::move(base), std::move(basis));
}

Matrix VectorGroupView::element(std::span<const Elem> u) const {
    if (u.size() != basis_.size()) {
        throw ShapeMismatch("vector group coordinate count mismatch");
    }
    const FieldCtx &f = *base_.ctx();
    Matrix x = Matrix::identity(base_.ctx(), base_.dim());
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] == 0) {
            continue;
        }
        for (std::size_t i = 0; i < x.rows(); ++i) {
            for (std::size_t j = 0; j < x.cols(); ++j) {
                x.at(i, j) = f.add(x(i, j), f.mul(u[k], basis_[k](i, j)));
            }
        }
    }
    return x;
}

Subspace VectorGroupView::image_sum(const Subspace &w) const {
    std::vector<Vec> cols;
    const Matrix id = Matrix::identity(base_.ctx(), base_.dim());
    for (const Vec &u : w.basis_vectors()) {
        const Matrix d = element(u) - id;
        for (std::size_t j = 0; j < d.cols(); ++j) {
            cols.push_back(d.column(j));
        }
    }
    return Subspace::span(base_.ctx(), base_.dim(), cols);
}

} // namespace parahsp
