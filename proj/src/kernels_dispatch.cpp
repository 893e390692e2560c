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

#include <atomic>
#include <string>

#include "parahsp/errors.hpp"
#include "parahsp/kernels.hpp"

namespace parahsp::kernels {
namespace {

constexpr Ops kScalar{scalar::axis_transform, scalar::norm_sq, scalar::scale};
#ifdef PARAHSP_WITH_AVX2
constexpr Ops kAvx2{avx2::axis_transform, avx2::norm_sq, avx2::scale};
#endif

bool cpu_has_avx2() {
#if defined(PARAHSP_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa> &current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::Scalar:
        return true;
    case Isa::Avx2:
        return cpu_has_avx2();
    }
    return false;
}

Isa active_isa() { return current().load(); }

void set_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw UnsupportedFamily("kernel variant " + std::string(isa_name(isa)) + " is not available");
    }
    current().store(isa);
}

const Ops &ops_for(Isa isa) {
#ifdef PARAHSP_WITH_AVX2
    if (isa == Isa::Avx2) {
        return kAvx2;
    }
#endif
    if (isa != Isa::Scalar) {
        throw UnsupportedFamily("kernel variant " + std::string(isa_name(isa)) + " is not compiled in");
    }
    return kScalar;
}

const Ops &ops() { return ops_for(active_isa()); }

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

} // namespace parahsp::kernels
