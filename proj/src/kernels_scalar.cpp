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

#include "parahsp/kernels.hpp"

#include <complex>

namespace parahsp::kernels::scalar {

void axis_transform(const Complex *in, Complex *out, std::size_t dim, std::size_t q,
                    std::size_t stride, const Complex *table) {
    const std::size_t block = q * stride;
    for (std::size_t o = 0; o < dim; o += block) {
        for (std::size_t v = 0; v < q; ++v) {
            const Complex *row = table + v * q;
            Complex *dst = out + o + v * stride;
            for (std::size_t i = 0; i < stride; ++i) {
                dst[i] = 0;
            }
            for (std::size_t u = 0; u < q; ++u) {
                const Complex t = row[u];
                const Complex *src = in + o + u * stride;
                for (std::size_t i = 0; i < stride; ++i) {
                    dst[i] += t * src[i];
                }
            }
        }
    }
}

double norm_sq(const Complex *x, std::size_t n) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::norm(x[i]);
    }
    return acc;
}

void scale(Complex *x, std::size_t n, double factor) {
    for (std::size_t i = 0; i < n; ++i) {
        x[i] *= factor;
    }
}

} // namespace parahsp::kernels::scalar
