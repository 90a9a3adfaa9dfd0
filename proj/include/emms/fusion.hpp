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

#ifndef EMMS_FUSION_HPP
#define EMMS_FUSION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "emms/circuit.hpp"
#include "emms/coo.hpp"
#include "emms/gates.hpp"

namespace emms {

/// A set of consecutive gates on pairwise disjoint qubits, padded with I so
/// every qubit is covered exactly once. Gates are ordered by first qubit.
struct FusedGroup {
    std::vector<GateSpec> gates;
    uint32_t param_count = 0;
};

/// Greedy left-to-right fusion. A group closes when the next gate would be a
/// second parameterized gate or touches an already occupied qubit.
std::vector<FusedGroup> fuse(const Circuit& circuit);

/// Processing-element array shape. Depths are in 128-bit words; a depth of 0
/// means the memory is absent.
struct PEConfig {
    uint32_t pe_count = 1;
    uint64_t ldm_depth = uint64_t{1} << 10;
    uint64_t tgbar_depth = uint64_t{1} << 16;
};

/// Throws std::invalid_argument unless pe_count is a power of two and each
/// depth is zero or a power of two.
void validate_pe_config(const PEConfig& cfg);

/// Split T(group) = T(G_bar) (x) T(G_low) at dividing point n_bar: qubits
/// [0, n_bar) form g_bar and must multiply into a unit-row operator.
template <Scalar T>
struct Partition {
    uint32_t n_bar = 0;
    CooMatrix<T> g_bar;
    CooMatrix<T> g_low;
};

/// Source of gate matrices; swappable so fault injection can corrupt one
/// gate without touching the library table.
template <Scalar T>
using GateMatrixFn = std::function<CooMatrix<T>(const GateSpec&)>;

/// Dividing point for a group: starts at the hint (default ceil(n/2)) and is
/// lowered until every gate below it has a unit-row matrix in this
/// application and no two-qubit gate straddles it.
uint32_t choose_dividing_point(const FusedGroup& group, uint32_t n, std::optional<uint32_t> hint = std::nullopt);

template <Scalar T>
Partition<T> partition(const FusedGroup& group, uint32_t n, std::optional<uint32_t> hint = std::nullopt,
                       const GateMatrixFn<T>& gates = {});

/// One block-row step per row of g_bar:
///   out[i*B : (i+1)*B] = (g_bar(i, j) * g_low) * in[j*B : (j+1)*B],  B = N / N_bar.
/// Block rows are dealt round-robin to cfg.pe_count logical PEs. Output is
/// bit-identical for every pe_count.
///
/// Throws std::invalid_argument if g_bar is not unit-row or shapes mismatch.
template <Scalar T>
StateVector<T> evolve_group(const Partition<T>& part, const StateVector<T>& psi, const PEConfig& cfg);

struct RunOptions {
    PEConfig pe;
    std::optional<uint32_t> n_bar;
};

template <Scalar T>
using GroupObserver =
    std::function<void(std::size_t index, const FusedGroup&, const Partition<T>&, const StateVector<T>&)>;

/// Initial state of a circuit: its explicit amplitudes or |0...0>.
template <Scalar T>
StateVector<T> initial_state(const Circuit& circuit);

/// fuse, then partition + evolve_group per group. The observer, if given,
/// sees each group's partition and the state right after it.
template <Scalar T>
StateVector<T> run_circuit(const Circuit& circuit, const RunOptions& options = {},
                           const GroupObserver<T>& observer = {}, const GateMatrixFn<T>& gates = {});

template <Scalar T>
StateVector<T> run_circuit(const Circuit& circuit, const StateVector<T>& initial, const RunOptions& options,
                           const GroupObserver<T>& observer = {}, const GateMatrixFn<T>& gates = {});

}  // namespace emms

#endif  // EMMS_FUSION_HPP
