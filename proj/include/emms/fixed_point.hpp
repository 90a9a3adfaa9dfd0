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

#ifndef EMMS_FIXED_POINT_HPP
#define EMMS_FIXED_POINT_HPP

#include <complex>
#include <cstdint>
#include <limits>

namespace emms {

/// Signed Q2.30 fixed-point number: 2 integer bits (including sign) and 30
/// fractional bits, value = raw / 2^30, range [-2, 2 - 2^-30].
///
/// Arithmetic saturates at the range bounds instead of wrapping. Saturation
/// raises a sticky overflow bit that propagates to every value derived from a
/// saturated operand, so a state vector can be checked after the fact.
class FixedQ2_30 {
   public:
    static constexpr int kFracBits = 30;
    static constexpr int64_t kOne = int64_t{1} << kFracBits;
    static constexpr int32_t kRawMax = std::numeric_limits<int32_t>::max();
    static constexpr int32_t kRawMin = std::numeric_limits<int32_t>::min();

    constexpr FixedQ2_30() = default;

    static constexpr FixedQ2_30 from_raw(int32_t raw, bool overflow = false) {
        FixedQ2_30 r;
        r.raw_ = raw;
        r.overflow_ = overflow;
        return r;
    }

    /// Rounds x * 2^30 to nearest, ties away from zero.
    /// Throws std::out_of_range unless -2 <= x < 2.
    static FixedQ2_30 encode(double x);

    /// Narrows a value expressed in units of 2^-(30 + shift) to Q2.30,
    /// rounding once (ties away from zero) and saturating.
    static FixedQ2_30 narrow(__int128 wide, int shift, bool overflow_in = false);

    constexpr int32_t raw() const { return raw_; }
    constexpr bool overflowed() const { return overflow_; }
    double decode() const { return static_cast<double>(raw_) / static_cast<double>(kOne); }

    static constexpr double lsb() { return 1.0 / static_cast<double>(kOne); }

    friend constexpr bool operator==(FixedQ2_30, FixedQ2_30) = default;

   private:
    int32_t raw_ = 0;
    bool overflow_ = false;
};

FixedQ2_30 fx_add(FixedQ2_30 a, FixedQ2_30 b);
FixedQ2_30 fx_sub(FixedQ2_30 a, FixedQ2_30 b);
/// Product formed exactly in a 64-bit intermediate, then rounded once.
FixedQ2_30 fx_mul(FixedQ2_30 a, FixedQ2_30 b);

/// Complex number with Q2.30 real and imaginary parts, the value half of a
/// 128-bit (row, col, re, im) COO word.
struct FixedComplex {
    FixedQ2_30 re;
    FixedQ2_30 im;

    static FixedComplex encode(std::complex<double> z);
    std::complex<double> decode() const { return {re.decode(), im.decode()}; }
    bool overflowed() const { return re.overflowed() || im.overflowed(); }
    bool is_zero() const { return re.raw() == 0 && im.raw() == 0; }

    friend constexpr bool operator==(FixedComplex, FixedComplex) = default;
};

FixedComplex cx_add(FixedComplex a, FixedComplex b);
/// (ar*br - ai*bi, ar*bi + ai*br). The four real products are exact, each
/// component sum is formed in a wide intermediate and rounded once.
FixedComplex cx_mul(FixedComplex a, FixedComplex b);

/// Wide accumulator for sums of complex products. Used by the sparse
/// mat-vec so that each output amplitude is rounded exactly once.
class FixedAccumulator {
   public:
    void mac(FixedComplex a, FixedComplex b) {
        const __int128 ar = a.re.raw(), ai = a.im.raw();
        const __int128 br = b.re.raw(), bi = b.im.raw();
        re_ += ar * br - ai * bi;
        im_ += ar * bi + ai * br;
        overflow_ = overflow_ || a.overflowed() || b.overflowed();
    }
    FixedComplex finish() const {
        return {FixedQ2_30::narrow(re_, FixedQ2_30::kFracBits, overflow_),
                FixedQ2_30::narrow(im_, FixedQ2_30::kFracBits, overflow_)};
    }

   private:
    __int128 re_ = 0;
    __int128 im_ = 0;
    bool overflow_ = false;
};

}  // namespace emms

#endif  // EMMS_FIXED_POINT_HPP
