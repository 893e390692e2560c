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

// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// CPUID check.

#include <immintrin.h>

#include "parahsp/kernels.hpp"

namespace parahsp::kernels::avx2 {
namespace {

// Two complex doubles per register, interleaved (re0, im0, re1, im1).
inline __m256d load2(const Complex *p) { return _mm256_loadu_pd(reinterpret_cast<const double *>(p)); }
inline void store2(Complex *p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double *>(p), v); }

// acc + (tr + i ti) * x, with tr/ti broadcast across lanes.
inline __m256d cmul_bcast_add(__m256d acc, __m256d x, __m256d tr, __m256d ti) {
    const __m256d xs = _mm256_permute_pd(x, 0b0101);
    const __m256d prod = _mm256_fmaddsub_pd(x, tr, _mm256_mul_pd(xs, ti));
    return _mm256_add_pd(acc, prod);
}

// acc + a * b lane-wise for two independent complex pairs.
inline __m256d cmul_add(__m256d acc, __m256d a, __m256d b) {
    const __m256d br = _mm256_movedup_pd(b);
    const __m256d bi = _mm256_permute_pd(b, 0b1111);
    const __m256d as = _mm256_permute_pd(a, 0b0101);
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi)));
}

void last_axis(const Complex *in, Complex *out, std::size_t dim, std::size_t q, const Complex *table) {
    const std::size_t q2 = q & ~std::size_t(1);
    for (std::size_t o = 0; o < dim; o += q) {
        const Complex *x = in + o;
        for (std::size_t v = 0; v < q; ++v) {
            const Complex *row = table + v * q;
            __m256d acc = _mm256_setzero_pd();
            std::size_t u = 0;
            for (; u < q2; u += 2) {
                acc = cmul_add(acc, load2(x + u), load2(row + u));
            }
            alignas(32) double lanes[4];
            _mm256_store_pd(lanes, acc);
            Complex s(lanes[0] + lanes[2], lanes[1] + lanes[3]);
            for (; u < q; ++u) {
                s += row[u] * x[u];
            }
            out[o + v] = s;
        }
    }
}

} // namespace

void axis_transform(const Complex *in, Complex *out, std::size_t dim, std::size_t q,
                    std::size_t stride, const Complex *table) {
    if (stride == 1) {
        last_axis(in, out, dim, q, table);
        return;
    }
    const std::size_t block = q * stride;
    const std::size_t s2 = stride & ~std::size_t(1);
    for (std::size_t o = 0; o < dim; o += block) {
        for (std::size_t v = 0; v < q; ++v) {
            const Complex *row = table + v * q;
            Complex *dst = out + o + v * stride;
            std::size_t i = 0;
            for (; i < s2; i += 2) {
                __m256d acc = _mm256_setzero_pd();
                for (std::size_t u = 0; u < q; ++u) {
                    const __m256d tr = _mm256_set1_pd(row[u].real());
                    const __m256d ti = _mm256_set1_pd(row[u].imag());
                    acc = cmul_bcast_add(acc, load2(in + o + u * stride + i), tr, ti);
                }
                store2(dst + i, acc);
            }
            for (; i < stride; ++i) {
                Complex s = 0;
                for (std::size_t u = 0; u < q; ++u) {
                    s += row[u] * in[o + u * stride + i];
                }
                dst[i] = s;
            }
        }
    }
}

double norm_sq(const Complex *x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = load2(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

void scale(Complex *x, std::size_t n, double factor) {
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        store2(x + i, _mm256_mul_pd(load2(x + i), f));
    }
    for (; i < n; ++i) {
        x[i] *= factor;
    }
}

} // namespace parahsp::kernels::avx2
