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

#ifndef EMMS_SCALAR_HPP
#define EMMS_SCALAR_HPP

#include <complex>
#include <concepts>
#include <string_view>

#include "emms/fixed_point.hpp"

namespace emms {

using Complex = std::complex<double>;

enum class ScalarMode { kFloat, kFixed };

std::string_view to_string(ScalarMode mode);
/// Accepts "float" or "fixed"; throws std::invalid_argument otherwise.
ScalarMode parse_scalar_mode(std::string_view text);

template <class T>
concept Scalar = std::same_as<T, Complex> || std::same_as<T, FixedComplex>;

template <Scalar T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
    static constexpr ScalarMode kMode = ScalarMode::kFloat;
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex mul(Complex a, Complex b) { return a * b; }
    static Complex add(Complex a, Complex b) { return a + b; }
    static bool is_zero(Complex a) { return a.real() == 0.0 && a.imag() == 0.0; }
    static Complex from_complex(Complex z) { return z; }
    static Complex to_complex(Complex a) { return a; }
    static bool overflowed(Complex) { return false; }

    class Accumulator {
       public:
        void mac(Complex a, Complex b) { sum_ += a * b; }
        Complex finish() const { return sum_; }

       private:
        Complex sum_{0.0, 0.0};
    };
};

template <>
struct ScalarTraits<FixedComplex> {
    static constexpr ScalarMode kMode = ScalarMode::kFixed;
    static FixedComplex zero() { return {}; }
    static FixedComplex one() { return {FixedQ2_30::from_raw(1 << 30), FixedQ2_30{}}; }
    static FixedComplex mul(FixedComplex a, FixedComplex b) { return cx_mul(a, b); }
    static FixedComplex add(FixedComplex a, FixedComplex b) { return cx_add(a, b); }
    static bool is_zero(FixedComplex a) { return a.is_zero(); }
    static FixedComplex from_complex(Complex z) { return FixedComplex::encode(z); }
    static Complex to_complex(FixedComplex a) { return a.decode(); }
    static bool overflowed(FixedComplex a) { return a.overflowed(); }

    using Accumulator = FixedAccumulator;
};

}  // namespace emms

#endif  // EMMS_SCALAR_HPP
