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

#include "emms/verify.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "emms/oracle.hpp"

namespace emms {

namespace {

constexpr uint32_t kMaxVerifyQubits = 10;

uint64_t below(std::mt19937_64& rng, uint64_t bound) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

}  // namespace

std::vector<TrialSpec> trial_specs(const VerifyParams& params) {
    std::mt19937_64 rng(params.seed);
    std::vector<TrialSpec> specs;
    specs.reserve(params.trials);
    for (uint32_t k = 0; k < params.trials; ++k) {
        TrialSpec s;
        s.n = 1 + static_cast<uint32_t>(below(rng, params.n_max));
        s.depth = 1 + static_cast<uint32_t>(below(rng, params.depth));
        s.circuit_seed = rng();
        specs.push_back(s);
    }
    return specs;
}

double max_deviation(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("deviation between vectors of different length");
    }
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

GateMatrixFn<Complex> corrupted_gates(GateKind kind) {
    return [kind](const GateSpec& spec) {
        auto m = gate_matrix<Complex>(spec);
        if (spec.kind != kind || m.nnz() == 0) {
            return m;
        }
        auto tuples = m.tuples();
        tuples.back().val = -tuples.back().val;
        return CooMatrix<Complex>::from_sorted(m.dim(), std::move(tuples));
    };
}

VerifyResult verify_against_oracle(const VerifyParams& params) {
    if (params.n_max < 1 || params.n_max > kMaxVerifyQubits) {
        throw std::invalid_argument("verify supports 1..10 qubits, got n_max=" + std::to_string(params.n_max));
    }
    if (params.depth < 1) {
        throw std::invalid_argument("verify needs depth >= 1");
    }
    const GateMatrixFn<Complex> gates = params.fault ? corrupted_gates(*params.fault) : GateMatrixFn<Complex>{};
    RunOptions options;
    options.pe = params.pe;

    VerifyResult result;
    const auto specs = trial_specs(params);
    for (uint32_t k = 0; k < specs.size(); ++k) {
        const auto& s = specs[k];
        const Circuit c = build_random(s.n, s.depth, s.circuit_seed);
        const auto fused = run_circuit<Complex>(c, options, {}, gates);
        const auto reference = oracle::dense_run(c);
        const double dev = max_deviation(fused.amps(), reference);
        result.max_deviation = std::max(result.max_deviation, dev);
        result.trials_run = k + 1;
        if (!(dev <= params.tolerance)) {
            result.failure = VerifyFailure{k, s.circuit_seed, dev, c};
            break;
        }
    }
    return result;
}

}  // namespace emms
