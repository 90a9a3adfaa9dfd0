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


#include <gtest/gtest.h>

#include "emms/verify.hpp"

namespace emms {
namespace {

TEST(Verify, DefaultHarnessPasses) {
    const auto r = verify_against_oracle(VerifyParams{});
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.trials_run, 200U);
    EXPECT_LT(r.max_deviation, 1e-10);
}

TEST(Verify, ZeroTrialsIsTrivialPass) {
    VerifyParams p;
    p.trials = 0;
    const auto r = verify_against_oracle(p);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.trials_run, 0U);
    EXPECT_EQ(r.max_deviation, 0.0);
}

TEST(Verify, CorruptedGateIsCaught) {
    VerifyParams p;
    p.trials = 100;
    p.fault = GateKind::CX;
    const auto r = verify_against_oracle(p);
    ASSERT_FALSE(r.passed());
    const auto& f = *r.failure;
    EXPECT_GT(f.deviation, p.tolerance);
    EXPECT_EQ(r.trials_run, f.trial + 1);
    EXPECT_TRUE(std::any_of(f.circuit.ops.begin(), f.circuit.ops.end(),
                            [](const GateSpec& g) { return g.kind == GateKind::CX; }));
    const auto specs = trial_specs(p);
    EXPECT_EQ(specs[f.trial].circuit_seed, f.circuit_seed);
    EXPECT_EQ(build_random(specs[f.trial].n, specs[f.trial].depth, f.circuit_seed), f.circuit);
}

TEST(Verify, FaultInjectionLeavesOtherGatesIntact) {
    const auto gates = corrupted_gates(GateKind::H);
    const GateSpec x{GateKind::X, {0}, std::nullopt};
    const GateSpec h{GateKind::H, {0}, std::nullopt};
    EXPECT_EQ(gates(x), gate_matrix<Complex>(x));
    EXPECT_NE(gates(h), gate_matrix<Complex>(h));
}

TEST(Verify, TrialSpecsDeterministicAndInRange) {
    VerifyParams p;
    p.n_max = 7;
    p.depth = 13;
    p.trials = 500;
    const auto a = trial_specs(p);
    const auto b = trial_specs(p);
    ASSERT_EQ(a.size(), 500U);
    bool saw_max_n = false, saw_max_depth = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].circuit_seed, b[k].circuit_seed);
        ASSERT_GE(a[k].n, 1U);
        ASSERT_LE(a[k].n, 7U);
        ASSERT_GE(a[k].depth, 1U);
        ASSERT_LE(a[k].depth, 13U);
        saw_max_n |= a[k].n == 7;
        saw_max_depth |= a[k].depth == 13;
    }
    EXPECT_TRUE(saw_max_n);
    EXPECT_TRUE(saw_max_depth);
}

TEST(Verify, RejectsOversizedRegisters) {
    VerifyParams p;
    p.n_max = 11;
    EXPECT_THROW(verify_against_oracle(p), std::invalid_argument);
    p.n_max = 0;
    EXPECT_THROW(verify_against_oracle(p), std::invalid_argument);
}

TEST(MaxDeviation, Basics) {
    const std::vector<Complex> a{1.0, {0.0, 1.0}};
    const std::vector<Complex> b{1.0, {0.0, -1.0}};
    EXPECT_EQ(max_deviation(a, b), 2.0);
    EXPECT_THROW(max_deviation(a, std::vector<Complex>(3)), std::invalid_argument);
}

}  // namespace
}  // namespace emms
