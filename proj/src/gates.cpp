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

#include "emms/gates.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace emms {

namespace {

struct GateInfo {
    GateKind kind;
    std::string_view name;
    uint32_t arity;
    bool parameterized;
};

constexpr std::array<GateInfo, 22> kGateInfo = {{
    {GateKind::P, "p", 1, true},       {GateKind::X, "x", 1, false},
    {GateKind::Y, "y", 1, false},      {GateKind::Z, "z", 1, false},
    {GateKind::S, "s", 1, false},      {GateKind::SDG, "sdg", 1, false},
    {GateKind::T, "t", 1, false},      {GateKind::TDG, "tdg", 1, false},
    {GateKind::RZ, "rz", 1, true},     {GateKind::CRZ, "crz", 2, true},
    {GateKind::CRX, "crx", 2, true},   {GateKind::CX, "cx", 2, false},
    {GateKind::CY, "cy", 2, false},    {GateKind::CZ, "cz", 2, false},
    {GateKind::CP, "cp", 2, true},     {GateKind::CRY, "cry", 2, true},
    {GateKind::CH, "ch", 2, false},    {GateKind::H, "h", 1, false},
    {GateKind::SX, "sx", 1, false},    {GateKind::RX, "rx", 1, true},
    {GateKind::RY, "ry", 1, true},     {GateKind::I, "i", 1, false},
}};

constexpr std::array<GateKind, 21> kTableKinds = {
    GateKind::P,   GateKind::X,  GateKind::Y,  GateKind::Z,   GateKind::S,  GateKind::SDG, GateKind::T,
    GateKind::TDG, GateKind::RZ, GateKind::CRZ, GateKind::CRX, GateKind::CX, GateKind::CY,  GateKind::CZ,
    GateKind::CP,  GateKind::CRY, GateKind::CH, GateKind::H,   GateKind::SX, GateKind::RX,  GateKind::RY,
};

const GateInfo& info(GateKind kind) {
    for (const auto& g : kGateInfo) {
        if (g.kind == kind) {
            return g;
        }
    }
    throw std::invalid_argument("unknown gate kind");
}

using Entry = CooTuple<Complex>;

std::vector<Entry> table_entries(GateKind kind, double angle) {
    const double q = 1.0 / std::sqrt(2.0);
    const double p = 0.5;
    const double c = std::cos(angle / 2.0);
    const double d = std::sin(angle / 2.0);
    const double a = std::cos(angle);
    const double b = std::sin(angle);
    const Complex one{1.0, 0.0};
    switch (kind) {
        case GateKind::I: return {{0, 0, one}, {1, 1, one}};
        case GateKind::P: return {{0, 0, one}, {1, 1, {a, b}}};
        case GateKind::X: return {{0, 1, one}, {1, 0, one}};
        case GateKind::Y: return {{0, 1, {0, -1}}, {1, 0, {0, 1}}};
        case GateKind::Z: return {{0, 0, one}, {1, 1, {-1, 0}}};
        case GateKind::S: return {{0, 0, one}, {1, 1, {0, 1}}};
        case GateKind::SDG: return {{0, 0, one}, {1, 1, {0, -1}}};
        case GateKind::T: return {{0, 0, one}, {1, 1, {q, q}}};
        case GateKind::TDG: return {{0, 0, one}, {1, 1, {q, -q}}};
        case GateKind::RZ: return {{0, 0, {c, -d}}, {1, 1, {c, d}}};
        case GateKind::H: return {{0, 0, {q, 0}}, {0, 1, {q, 0}}, {1, 0, {q, 0}}, {1, 1, {-q, 0}}};
        case GateKind::SX: return {{0, 0, {p, p}}, {0, 1, {p, -p}}, {1, 0, {p, -p}}, {1, 1, {p, p}}};
        case GateKind::RX: return {{0, 0, {c, 0}}, {0, 1, {0, -d}}, {1, 0, {0, -d}}, {1, 1, {c, 0}}};
        case GateKind::RY: return {{0, 0, {c, 0}}, {0, 1, {-d, 0}}, {1, 0, {d, 0}}, {1, 1, {c, 0}}};
        case GateKind::CX: return {{0, 0, one}, {1, 1, one}, {2, 3, one}, {3, 2, one}};
        case GateKind::CY: return {{0, 0, one}, {1, 1, one}, {2, 3, {0, -1}}, {3, 2, {0, 1}}};
        case GateKind::CZ: return {{0, 0, one}, {1, 1, one}, {2, 2, one}, {3, 3, {-1, 0}}};
        case GateKind::CP: return {{0, 0, one}, {1, 1, one}, {2, 2, one}, {3, 3, {a, b}}};
        case GateKind::CRZ: return {{0, 0, one}, {1, 1, one}, {2, 2, {c, -d}}, {3, 3, {c, d}}};
        case GateKind::CRX:
            return {{0, 0, one}, {1, 1, one}, {2, 2, {c, 0}}, {2, 3, {0, -d}}, {3, 2, {0, -d}}, {3, 3, {c, 0}}};
        case GateKind::CRY:
            return {{0, 0, one}, {1, 1, one}, {2, 2, {c, 0}}, {2, 3, {-d, 0}}, {3, 2, {d, 0}}, {3, 3, {c, 0}}};
        case GateKind::CH:
            return {{0, 0, one}, {1, 1, one}, {2, 2, {q, 0}}, {2, 3, {q, 0}}, {3, 2, {q, 0}}, {3, 3, {-q, 0}}};
    }
    throw std::invalid_argument("unknown gate kind");
}

void check_param(GateKind kind, std::optional<double> param) {
    if (is_parameterized(kind) && !param) {
        throw std::invalid_argument("gate '" + std::string(gate_name(kind)) + "' requires an angle parameter");
    }
    if (!is_parameterized(kind) && param) {
        throw std::invalid_argument("gate '" + std::string(gate_name(kind)) + "' takes no parameter");
    }
    if (param && !std::isfinite(*param)) {
        throw std::invalid_argument("gate '" + std::string(gate_name(kind)) + "' parameter is not finite");
    }
}

// Swaps the two qubits of a 4x4 operator: basis index b1b0 -> b0b1.
constexpr uint32_t swap_bits2(uint32_t i) { return ((i & 1u) << 1) | (i >> 1); }

}  // namespace

std::span<const GateKind> table_gate_kinds() { return kTableKinds; }

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (const auto& g : kGateInfo) {
        if (g.name == lower) {
            return g.kind;
        }
    }
    return std::nullopt;
}

uint32_t gate_arity(GateKind kind) { return info(kind).arity; }

bool is_parameterized(GateKind kind) { return info(kind).parameterized; }

bool is_sparse(GateKind kind) {
    return kind != GateKind::H && kind != GateKind::RX && kind != GateKind::RY && kind != GateKind::SX;
}

uint32_t GateSpec::first_qubit() const { return *std::min_element(targets.begin(), targets.end()); }

void validate_gate(const GateSpec& spec) {
    const auto arity = gate_arity(spec.kind);
    if (spec.targets.size() != arity) {
        throw std::invalid_argument("gate '" + std::string(gate_name(spec.kind)) + "' expects " +
                                    std::to_string(arity) + " target(s), got " +
                                    std::to_string(spec.targets.size()));
    }
    if (arity == 2) {
        const auto a = spec.targets[0], b = spec.targets[1];
        if (a == b) {
            throw std::invalid_argument("gate '" + std::string(gate_name(spec.kind)) + "' repeats qubit " +
                                        std::to_string(a));
        }
        if ((a > b ? a - b : b - a) != 1) {
            throw std::invalid_argument("gate '" + std::string(gate_name(spec.kind)) + "' on qubits " +
                                        std::to_string(a) + " and " + std::to_string(b) +
                                        " is not between adjacent qubits");
        }
    }
    check_param(spec.kind, spec.param);
}

template <Scalar T>
CooMatrix<T> gate_matrix(GateKind kind, std::optional<double> param) {
    check_param(kind, param);
    const auto entries = table_entries(kind, param.value_or(0.0));
    std::vector<CooTuple<T>> tuples;
    tuples.reserve(entries.size());
    for (const auto& e : entries) {
        tuples.push_back({e.row, e.col, ScalarTraits<T>::from_complex(e.val)});
    }
    // The constructor drops entries that vanish, e.g. sin(0/2) in RX(0).
    return CooMatrix<T>(gate_arity(kind) == 1 ? 2 : 4, std::move(tuples));
}

template <Scalar T>
CooMatrix<T> gate_matrix(const GateSpec& spec) {
    validate_gate(spec);
    auto m = gate_matrix<T>(spec.kind, spec.param);
    if (gate_arity(spec.kind) == 2 && spec.targets[0] > spec.targets[1]) {
        std::vector<CooTuple<T>> swapped;
        swapped.reserve(m.nnz());
        for (const auto& t : m.tuples()) {
            swapped.push_back({swap_bits2(t.row), swap_bits2(t.col), t.val});
        }
        return CooMatrix<T>(4, std::move(swapped));
    }
    return m;
}

template CooMatrix<Complex> gate_matrix<Complex>(GateKind, std::optional<double>);
template CooMatrix<FixedComplex> gate_matrix<FixedComplex>(GateKind, std::optional<double>);
template CooMatrix<Complex> gate_matrix<Complex>(const GateSpec&);
template CooMatrix<FixedComplex> gate_matrix<FixedComplex>(const GateSpec&);

}  // namespace emms
