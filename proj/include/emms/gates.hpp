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

#ifndef EMMS_GATES_HPP
#define EMMS_GATES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emms/coo.hpp"

namespace emms {

enum class GateKind {
    P, X, Y, Z, S, SDG, T, TDG, RZ, CRZ, CRX,
    CX, CY, CZ, CP, CRY, CH,
    H, SX, RX, RY,
    I,
};

/// Every gate kind with a compressed COO table entry (excludes I).
std::span<const GateKind> table_gate_kinds();

/// Lower-case mnemonic, e.g. "sdg".
std::string_view gate_name(GateKind kind);
/// Case-insensitive lookup of a mnemonic.
std::optional<GateKind> parse_gate_kind(std::string_view name);

/// Number of qubits the gate acts on (1 or 2).
uint32_t gate_arity(GateKind kind);
bool is_parameterized(GateKind kind);
/// False exactly for the dense single-qubit gates H, RX, RY and SX.
bool is_sparse(GateKind kind);

/// One gate application. For two-qubit gates targets[0] is the control and
/// targets[1] the target; the pair must be adjacent. When the control is the
/// higher-significance qubit (smaller index) the table matrix is used as is,
/// otherwise its basis is bit-swapped.
struct GateSpec {
    GateKind kind = GateKind::I;
    std::vector<uint32_t> targets;
    std::optional<double> param;

    /// Lowest qubit index the gate touches.
    uint32_t first_qubit() const;
    friend bool operator==(const GateSpec&, const GateSpec&) = default;
};

/// Throws std::invalid_argument for wrong target count, repeated or
/// non-adjacent targets, or a missing/extra parameter.
void validate_gate(const GateSpec& spec);

/// Table matrix of the gate in its canonical orientation (2x2 or 4x4).
/// Constants: c = cos(theta/2), d = sin(theta/2), e^{i lambda} = cos + i sin.
template <Scalar T>
CooMatrix<T> gate_matrix(GateKind kind, std::optional<double> param);

/// Matrix of a specific application, honoring control/target orientation.
template <Scalar T>
CooMatrix<T> gate_matrix(const GateSpec& spec);

}  // namespace emms

#endif  // EMMS_GATES_HPP
