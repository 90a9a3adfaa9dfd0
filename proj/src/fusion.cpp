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

#include "emms/fusion.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace emms {

namespace {

void close_group(FusedGroup& group, const std::vector<bool>& occupied, std::vector<FusedGroup>& out) {
    for (uint32_t q = 0; q < occupied.size(); ++q) {
        if (!occupied[q]) {
            group.gates.push_back({GateKind::I, {q}, std::nullopt});
        }
    }
    std::stable_sort(group.gates.begin(), group.gates.end(),
                     [](const GateSpec& a, const GateSpec& b) { return a.first_qubit() < b.first_qubit(); });
    out.push_back(std::move(group));
}

template <class UnitRow>
uint32_t dividing_point(const FusedGroup& group, uint32_t n, std::optional<uint32_t> hint, UnitRow unit_row) {
    uint32_t n_bar = std::min(hint.value_or((n + 1) / 2), n);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < group.gates.size(); ++k) {
            const auto& g = group.gates[k];
            const uint32_t lo = g.first_qubit();
            const uint32_t hi = lo + static_cast<uint32_t>(g.targets.size()) - 1;
            if (lo >= n_bar) {
                continue;
            }
            if (hi >= n_bar || !unit_row(k)) {
                n_bar = lo;
                changed = true;
            }
        }
    }
    return n_bar;
}

template <Scalar T>
CooMatrix<T> kron_range(const std::vector<CooMatrix<T>>& mats, std::size_t begin, std::size_t end) {
    CooMatrix<T> acc = CooMatrix<T>::identity(1);
    for (std::size_t k = begin; k < end; ++k) {
        acc = tensor_product(acc, mats[k]);
    }
    return acc;
}

// Threads only pay off once blocks carry real work.
constexpr std::size_t kParallelMinAmplitudes = std::size_t{1} << 14;

}  // namespace

std::vector<FusedGroup> fuse(const Circuit& circuit) {
    std::vector<FusedGroup> groups;
    FusedGroup current;
    std::vector<bool> occupied(circuit.n, false);
    bool open = false;
    for (const auto& op : circuit.ops) {
        const bool param = is_parameterized(op.kind);
        const bool conflict = std::any_of(op.targets.begin(), op.targets.end(), [&](uint32_t t) { return occupied[t]; });
        if (open && (conflict || (param && current.param_count >= 1))) {
            close_group(current, occupied, groups);
            current = FusedGroup{};
            std::fill(occupied.begin(), occupied.end(), false);
        }
        for (auto t : op.targets) {
            occupied[t] = true;
        }
        current.gates.push_back(op);
        current.param_count += param ? 1 : 0;
        open = true;
    }
    if (open) {
        close_group(current, occupied, groups);
    }
    return groups;
}

void validate_pe_config(const PEConfig& cfg) {
    if (cfg.pe_count == 0 || !std::has_single_bit(cfg.pe_count)) {
        throw std::invalid_argument("PE count " + std::to_string(cfg.pe_count) + " is not a power of two");
    }
    if (cfg.ldm_depth != 0 && !std::has_single_bit(cfg.ldm_depth)) {
        throw std::invalid_argument("LDM depth " + std::to_string(cfg.ldm_depth) + " is not a power of two");
    }
    if (cfg.tgbar_depth != 0 && !std::has_single_bit(cfg.tgbar_depth)) {
        throw std::invalid_argument("T(G_bar) memory depth " + std::to_string(cfg.tgbar_depth) +
                                    " is not a power of two");
    }
}

uint32_t choose_dividing_point(const FusedGroup& group, uint32_t n, std::optional<uint32_t> hint) {
    return dividing_point(group, n, hint,
                          [&](std::size_t k) { return gate_matrix<Complex>(group.gates[k]).is_unit_row(); });
}

template <Scalar T>
Partition<T> partition(const FusedGroup& group, uint32_t n, std::optional<uint32_t> hint, const GateMatrixFn<T>& gates) {
    std::vector<CooMatrix<T>> mats;
    mats.reserve(group.gates.size());
    uint32_t covered = 0;
    for (const auto& g : group.gates) {
        if (g.first_qubit() != covered) {
            throw std::invalid_argument("fused group does not cover qubit " + std::to_string(covered));
        }
        mats.push_back(gates ? gates(g) : gate_matrix<T>(g));
        covered += static_cast<uint32_t>(g.targets.size());
    }
    if (covered != n) {
        throw std::invalid_argument("fused group covers " + std::to_string(covered) + " of " + std::to_string(n) +
                                    " qubits");
    }
    Partition<T> part;
    part.n_bar = dividing_point(group, n, hint, [&](std::size_t k) { return mats[k].is_unit_row(); });
    std::size_t split = 0;
    while (split < group.gates.size() && group.gates[split].first_qubit() < part.n_bar) {
        ++split;
    }
    part.g_bar = kron_range(mats, 0, split);
    part.g_low = kron_range(mats, split, mats.size());
    return part;
}

template <Scalar T>
StateVector<T> evolve_group(const Partition<T>& part, const StateVector<T>& psi, const PEConfig& cfg) {
    validate_pe_config(cfg);
    const auto& g_bar = part.g_bar;
    if (!g_bar.is_unit_row()) {
        throw std::invalid_argument("T(G_bar) must hold exactly one non-zero per row");
    }
    if (g_bar.dim() * part.g_low.dim() != psi.size()) {
        throw std::invalid_argument("partition of dimension " + std::to_string(g_bar.dim()) + " x " +
                                    std::to_string(part.g_low.dim()) + " does not match a " +
                                    std::to_string(psi.n()) + "-qubit state");
    }
    const std::size_t blocks = g_bar.dim();
    const std::size_t block = part.g_low.dim();
    StateVector<T> out(psi.n());
    const std::span<const T> in = psi.amps();
    const std::span<T> dst = out.amps();
    const T one = ScalarTraits<T>::one();

    auto run_block = [&](std::size_t i) {
        const auto& t = g_bar.tuples()[i];
        const auto src = in.subspan(t.col * block, block);
        const auto outb = dst.subspan(i * block, block);
        if (t.val == one) {
            matvec_into<T>(part.g_low, src, outb);
        } else {
            matvec_into<T>(scale(part.g_low, t.val), src, outb);
        }
    };
    // Logical PE p owns block rows p, p + P, p + 2P, ...
    auto run_pe = [&](std::size_t pe) {
        for (std::size_t i = pe; i < blocks; i += cfg.pe_count) {
            run_block(i);
        }
    };

    const std::size_t workers =
        std::min<std::size_t>({cfg.pe_count, blocks, std::max(2u, std::thread::hardware_concurrency())});
    if (workers <= 1 || psi.size() < kParallelMinAmplitudes) {
        for (std::size_t pe = 0; pe < cfg.pe_count; ++pe) {
            run_pe(pe);
        }
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                for (std::size_t pe = w; pe < cfg.pe_count; pe += workers) {
                    run_pe(pe);
                }
            });
        }
    }
    return out;
}

template <Scalar T>
StateVector<T> initial_state(const Circuit& circuit) {
    if (circuit.initial_state.empty()) {
        return StateVector<T>(circuit.n);
    }
    std::vector<T> amps(std::size_t{1} << circuit.n, ScalarTraits<T>::zero());
    for (const auto& [index, amp] : circuit.initial_state) {
        if (index >= amps.size()) {
            throw std::invalid_argument("initial state index " + std::to_string(index) + " out of range");
        }
        amps[index] = ScalarTraits<T>::from_complex(amp);
    }
    return StateVector<T>(circuit.n, std::move(amps));
}

template <Scalar T>
StateVector<T> run_circuit(const Circuit& circuit, const StateVector<T>& initial, const RunOptions& options,
                           const GroupObserver<T>& observer, const GateMatrixFn<T>& gates) {
    validate_circuit(circuit);
    validate_pe_config(options.pe);
    if (initial.n() != circuit.n) {
        throw std::invalid_argument("initial state has " + std::to_string(initial.n()) + " qubits, circuit has " +
                                    std::to_string(circuit.n));
    }
    StateVector<T> psi = initial;
    const auto groups = fuse(circuit);
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const auto part = partition<T>(groups[k], circuit.n, options.n_bar, gates);
        psi = evolve_group(part, psi, options.pe);
        if (observer) {
            observer(k, groups[k], part, psi);
        }
    }
    return psi;
}

template <Scalar T>
StateVector<T> run_circuit(const Circuit& circuit, const RunOptions& options, const GroupObserver<T>& observer,
                           const GateMatrixFn<T>& gates) {
    validate_circuit(circuit);
    return run_circuit<T>(circuit, initial_state<T>(circuit), options, observer, gates);
}

#define EMMS_INSTANTIATE(T)                                                                                      \
    template Partition<T> partition<T>(const FusedGroup&, uint32_t, std::optional<uint32_t>,                     \
                                       const GateMatrixFn<T>&);                                                  \
    template StateVector<T> evolve_group<T>(const Partition<T>&, const StateVector<T>&, const PEConfig&);        \
    template StateVector<T> initial_state<T>(const Circuit&);                                                    \
    template StateVector<T> run_circuit<T>(const Circuit&, const StateVector<T>&, const RunOptions&,             \
                                           const GroupObserver<T>&, const GateMatrixFn<T>&);                     \
    template StateVector<T> run_circuit<T>(const Circuit&, const RunOptions&, const GroupObserver<T>&,           \
                                           const GateMatrixFn<T>&);

EMMS_INSTANTIATE(Complex)
EMMS_INSTANTIATE(FixedComplex)

#undef EMMS_INSTANTIATE

}  // namespace emms
