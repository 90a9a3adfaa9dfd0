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

#ifndef EMMS_VERIFY_HPP
#define EMMS_VERIFY_HPP

// Oracle-equivalence harness: random circuits through the fused COO
// emulator and the dense reference, compared amplitude by amplitude.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emms/circuit.hpp"
#include "emms/fusion.hpp"

namespace emms {

struct VerifyParams {
    uint32_t n_max = 6;
    uint32_t depth = 30;
    uint32_t trials = 200;
    uint64_t seed = 1;
    double tolerance = 1e-10;
    PEConfig pe = {};
    /// Deliberately corrupt this gate's COO matrix (negative control).
    std::optional<GateKind> fault;
};

struct VerifyFailure {
    uint32_t trial = 0;
    uint64_t circuit_seed = 0;
    double deviation = 0;
    Circuit circuit;
};

struct VerifyResult {
    uint32_t trials_run = 0;
    double max_deviation = 0;
    std::optional<VerifyFailure> failure;

    bool passed() const { return !failure.has_value(); }
};

/// Parameters of trial k: n in [1, n_max], depth in [1, depth], circuit seed.
struct TrialSpec {
    uint32_t n;
    uint32_t depth;
    uint64_t circuit_seed;
};
std::vector<TrialSpec> trial_specs(const VerifyParams& params);

/// Largest |a_i - b_i| over all amplitudes.
double max_deviation(std::span<const Complex> a, std::span<const Complex> b);

/// Gate source that negates the last tuple of every matrix of `kind`.
GateMatrixFn<Complex> corrupted_gates(GateKind kind);

/// Stops at the first trial exceeding the tolerance.
/// Throws std::invalid_argument when n_max is outside [1, 10].
VerifyResult verify_against_oracle(const VerifyParams& params);

}  // namespace emms

#endif  // EMMS_VERIFY_HPP
