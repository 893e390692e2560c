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

// Dense complex kernels used by the state-vector simulator. Each kernel has
// a scalar reference implementation and, on x86-64, an AVX2+FMA variant.
// The active variant is picked once at startup from CPUID and can be
// overridden (tests compare the two).

#pragma once

#include <cstddef>
#include <string_view>

#include "parahsp/fq.hpp"

namespace parahsp::kernels {

enum class Isa { Scalar, Avx2 };

/// out[o + v s + i] = sum_u table[v q + u] * in[o + u s + i]
/// for every block offset o (multiples of q s) and 0 <= i < s.
/// `table` is q x q row-major. `in` and `out` must not alias.
using AxisTransformFn = void (*)(const Complex *in, Complex *out, std::size_t dim, std::size_t q,
                                 std::size_t stride, const Complex *table);
using NormSqFn = double (*)(const Complex *x, std::size_t n);
using ScaleFn = void (*)(Complex *x, std::size_t n, double factor);

struct Ops {
    AxisTransformFn axis_transform;
    NormSqFn norm_sq;
    ScaleFn scale;
};

namespace scalar {
void axis_transform(const Complex *in, Complex *out, std::size_t dim, std::size_t q,
                    std::size_t stride, const Complex *table);
double norm_sq(const Complex *x, std::size_t n);
void scale(Complex *x, std::size_t n, double factor);
} // namespace scalar

#ifdef PARAHSP_WITH_AVX2
namespace avx2 {
void axis_transform(const Complex *in, Complex *out, std::size_t dim, std::size_t q,
                    std::size_t stride, const Complex *table);
double norm_sq(const Complex *x, std::size_t n);
void scale(Complex *x, std::size_t n, double factor);
} // namespace avx2
#endif

/// True if the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa);
Isa active_isa();
/// Throws UnsupportedFamily if the variant is unavailable.
void set_isa(Isa isa);
const Ops &ops();
const Ops &ops_for(Isa isa);
std::string_view isa_name(Isa isa);

} // namespace parahsp::kernels
