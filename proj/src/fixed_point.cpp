// Copyright 2026 The EMMS Emulator Authors
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

#include "emms/fixed_point.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace emms {

namespace {

FixedQ2_30 saturate(int64_t v, bool overflow_in) {
    if (v > FixedQ2_30::kRawMax) {
        return FixedQ2_30::from_raw(FixedQ2_30::kRawMax, true);
    }
    if (v < FixedQ2_30::kRawMin) {
        return FixedQ2_30::from_raw(FixedQ2_30::kRawMin, true);
    }
    return FixedQ2_30::from_raw(static_cast<int32_t>(v), overflow_in);
}

}  // namespace

FixedQ2_30 FixedQ2_30::encode(double x) {
    if (!(x >= -2.0 && x < 2.0)) {
        throw std::out_of_range("value " + std::to_string(x) + " outside Q2.30 range [-2, 2)");
    }
    // Scaling by a power of two is exact; std::round breaks ties away from zero.
    const double scaled = std::round(std::ldexp(x, kFracBits));
    if (scaled > static_cast<double>(kRawMax)) {
        // Only reachable for x within half an lsb of 2.
        return from_raw(kRawMax);
    }
    return from_raw(static_cast<int32_t>(scaled));
}

FixedQ2_30 FixedQ2_30::narrow(__int128 wide, int shift, bool overflow_in) {
    if (shift > 0) {
        const __int128 half = __int128{1} << (shift - 1);
        const bool negative = wide < 0;
        __int128 mag = negative ? -wide : wide;
        mag = (mag + half) >> shift;
        wide = negative ? -mag : mag;
    }
    if (wide > kRawMax) {
        return from_raw(kRawMax, true);
    }
    if (wide < kRawMin) {
        return from_raw(kRawMin, true);
    }
    return from_raw(static_cast<int32_t>(wide), overflow_in);
}

FixedQ2_30 fx_add(FixedQ2_30 a, FixedQ2_30 b) {
    return saturate(int64_t{a.raw()} + b.raw(), a.overflowed() || b.overflowed());
}

FixedQ2_30 fx_sub(FixedQ2_30 a, FixedQ2_30 b) {
    return saturate(int64_t{a.raw()} - b.raw(), a.overflowed() || b.overflowed());
}

FixedQ2_30 fx_mul(FixedQ2_30 a, FixedQ2_30 b) {
    const int64_t product = int64_t{a.raw()} * int64_t{b.raw()};
    return FixedQ2_30::narrow(product, FixedQ2_30::kFracBits, a.overflowed() || b.overflowed());
}

FixedComplex FixedComplex::encode(std::complex<double> z) {
    return {FixedQ2_30::encode(z.real()), FixedQ2_30::encode(z.imag())};
}

FixedComplex cx_add(FixedComplex a, FixedComplex b) {
    return {fx_add(a.re, b.re), fx_add(a.im, b.im)};
}

FixedComplex cx_mul(FixedComplex a, FixedComplex b) {
    FixedAccumulator acc;
    acc.mac(a, b);
    return acc.finish();
}

}  // namespace emms
