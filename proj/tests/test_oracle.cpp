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

#include <cmath>
#include <numbers>
#include <random>

#include "emms/oracle.hpp"

namespace emms::oracle {
namespace {

using C = Complex;
const double kQ = 1.0 / std::sqrt(2.0);

Circuit circuit(uint32_t n, std::vector<GateSpec> ops) {
    Circuit c;
    c.n = n;
    c.ops = std::move(ops);
    return c;
}

double dist_to_identity(const DenseOperator& u) {
    double w = 0;
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < u.dim(); ++j) w = std::max(w, std::abs(u.at(i, j) - C(i == j ? 1.0 : 0.0)));
    return w;
}

std::size_t reverse_bits(std::size_t x, uint32_t n) {
    std::size_t r = 0;
    for (uint32_t b = 0; b < n; ++b) r |= ((x >> b) & 1U) << (n - 1 - b);
    return r;
}

TEST(DenseRun, XFlipsSingleQubit) {
    const auto out = dense_run(circuit(1, {{GateKind::X, {0}, std::nullopt}}));
    EXPECT_EQ(out, (std::vector<C>{0.0, 1.0}));
}

TEST(DenseRun, Bell) {
    const auto out = dense_run(build_ghz(2));
    EXPECT_LE(std::abs(out[0] - kQ), 1e-15);
    EXPECT_LE(std::abs(out[3] - kQ), 1e-15);
    EXPECT_EQ(out[1], C(0.0));
}

TEST(DenseRun, QftOfBasisStateClosedForm) {
    // QFT|x> = sum_k e^{2 pi i x k / N} |k> / sqrt(N); without the final
    // reversal network amplitude k lands at the bit-reversed index.
    const uint32_t n = 4;
    const std::size_t x = 5;
    std::vector<C> psi(16);
    psi[x] = 1.0;
    const auto plain = dense_run(build_qft(n), psi);
    const auto natural = dense_run(build_qft(n, {.final_swaps = true}), psi);
    for (std::size_t k = 0; k < 16; ++k) {
        const C want = std::polar(0.25, 2 * std::numbers::pi * static_cast<double>(x * k) / 16.0);
        ASSERT_LE(std::abs(natural[k] - want), 1e-12) << k;
        ASSERT_LE(std::abs(plain[reverse_bits(k, n)] - want), 1e-12) << k;
    }
}

TEST(DenseRun, Limits) {
    EXPECT_THROW(dense_run(circuit(15, {})), std::invalid_argument);
    EXPECT_THROW(dense_run(circuit(2, {}), std::vector<C>(3)), std::invalid_argument);
    EXPECT_THROW(dense_unitary(circuit(11, {})), std::invalid_argument);
}

TEST(DenseUnitary, Examples) {
    EXPECT_EQ(dist_to_identity(dense_unitary(circuit(3, {}))), 0.0);
    const auto h = dense_unitary(circuit(1, {{GateKind::H, {0}, std::nullopt}}));
    EXPECT_LE(std::abs(h.at(0, 0) - kQ), 1e-16);
    EXPECT_LE(std::abs(h.at(0, 1) - kQ), 1e-16);
    EXPECT_LE(std::abs(h.at(1, 0) - kQ), 1e-16);
    EXPECT_LE(std::abs(h.at(1, 1) + kQ), 1e-16);
    const GateSpec cx{GateKind::CX, {1, 2}, std::nullopt};
    EXPECT_EQ(dist_to_identity(dense_unitary(circuit(3, {cx, cx}))), 0.0);
}

TEST(DenseUnitary, EveryGateUnitary) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    for (int draw = 0; draw < 10; ++draw) {
        for (auto k : table_gate_kinds()) {
            GateSpec s{k, gate_arity(k) == 1 ? std::vector<uint32_t>{1} : std::vector<uint32_t>{2, 1}, std::nullopt};
            if (is_parameterized(k)) s.param = angle(rng);
            ASSERT_LE(unitarity_error(dense_unitary(circuit(3, {s}))), 1e-11) << gate_name(k);
        }
    }
}

TEST(GateOperator, AgreesWithCooLibrary) {
    // Two independent constructions of every gate, both orientations.
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    for (auto k : table_gate_kinds()) {
        std::vector<std::vector<uint32_t>> layouts{{0}};
        if (gate_arity(k) == 2) layouts = {{0, 1}, {1, 0}};
        for (const auto& t : layouts) {
            GateSpec s{k, t, is_parameterized(k) ? std::optional<double>(angle(rng)) : std::nullopt};
            const auto a = gate_operator(s);
            const auto b = from_coo(gate_matrix<C>(s));
            ASSERT_EQ(a.dim(), b.dim());
            for (std::size_t i = 0; i < a.dim(); ++i)
                for (std::size_t j = 0; j < a.dim(); ++j)
                    ASSERT_LE(std::abs(a.at(i, j) - b.at(i, j)), 1e-15) << gate_name(k);
        }
    }
}

TEST(Embed, QubitZeroIsMostSignificant) {
    const auto u = embed({GateKind::X, {0}, std::nullopt}, 3);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(u.at(i ^ 4U, i), C(1.0));
    const auto v = embed({GateKind::X, {2}, std::nullopt}, 3);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(v.at(i ^ 1U, i), C(1.0));
}

TEST(Kron, Dimensions) {
    const auto k = kron(DenseOperator::identity(2), DenseOperator::identity(4));
    EXPECT_EQ(k.dim(), 8U);
    EXPECT_EQ(dist_to_identity(k), 0.0);
    EXPECT_THROW(matmul(DenseOperator::identity(2), DenseOperator::identity(4)), std::invalid_argument);
}

}  // namespace
}  // namespace emms::oracle
