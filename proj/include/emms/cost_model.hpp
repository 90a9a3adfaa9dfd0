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

#ifndef EMMS_COST_MODEL_HPP
#define EMMS_COST_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "emms/fusion.hpp"

namespace emms::cost {

/// One COO word: 32-bit row, 32-bit col, Q2.30 real and imaginary parts.
inline constexpr uint64_t kBytesPerWord = 16;
inline constexpr uint64_t kBitsPerWord = 128;

struct MemoryReport {
    uint32_t n = 0;
    uint32_t n_bar = 0;
    uint64_t traditional_bytes = 0;  // N words
    uint64_t emms_bytes = 0;         // N_bar + N / N_bar words
    double efficiency_factor = 0;    // traditional / emms
};

/// Requires 1 <= n_bar <= n <= 32; throws std::out_of_range otherwise.
MemoryReport memory_model(uint32_t n, uint32_t n_bar);

enum class Regime { kResident, kStreaming };
std::string_view to_string(Regime regime);

struct CycleReport {
    Regime regime = Regime::kResident;
    uint64_t c_write = 0;
    uint64_t c_tp = 0;
    uint64_t c_mm = 0;
    uint64_t c_read = 0;
    uint64_t total = 0;
    double io_fraction = 0;  // (c_write + c_read) / total
};

inline constexpr uint32_t kMinCycleQubits = 2;
inline constexpr uint32_t kMaxCycleQubits = 26;

/// Resident when 2^n <= pe_count * ldm_depth: the state is written and read
/// once and each of the m steps costs ceil((N_bar + N/N_bar)/P) + ceil(N/P).
/// Streaming: every step additionally writes and reads N words.
/// Requires 2 <= n <= 26 and n_bar <= n.
CycleReport cycle_model(uint32_t n, uint64_t m, const PEConfig& cfg, uint32_t n_bar);

/// Same model with a dividing point per step instead of a single one.
CycleReport cycle_model(uint32_t n, std::span<const uint32_t> step_n_bars, const PEConfig& cfg);

struct ResourceParams {
    uint32_t multipliers_per_pe = 8;
    uint32_t dsp_per_multiplier = 4;
    uint32_t ldms_per_pe = 3;
    uint64_t bram_block_bits = 36 * 1024;
};

struct ResourceReport {
    uint64_t bram_blocks = 0;
    uint64_t dsp_count = 0;
    uint32_t max_resident_qubits = 0;
};

/// 36 Kb blocks needed for `depth` 128-bit words, pure capacity packing.
uint64_t bram_blocks_for_depth(uint64_t depth, const ResourceParams& params = {});

ResourceReport resource_model(const PEConfig& cfg, const ResourceParams& params = {});

/// The four accelerator configurations used for the cycle comparison: 4..32
/// PEs sharing a 2^16-word T(G_bar) memory, LDM depth shrinking as PEs grow.
std::vector<PEConfig> reference_configs();

// ---------------------------------------------------------------------------
// Sweeps

using Cell = std::variant<int64_t, uint64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const;
    /// Array of objects keyed by column name.
    std::string to_json() const;
    std::string to_text() const;
};

struct Range {
    uint32_t lo = 0;
    uint32_t hi = 0;
};

/// Parses "lo..hi" or a single value; throws std::invalid_argument.
Range parse_range(std::string_view text);

/// One row per (n, n_bar) with 1 <= n_bar <= n. Empty n_bars means the
/// diagonal n_bar = ceil(n/2).
Table memory_sweep(Range n, std::span<const uint32_t> n_bars = {});

/// One row per (config, n), n_bar = ceil(n/2).
Table cycle_sweep(Range n, uint64_t m, std::span<const PEConfig> configs);

Table resource_sweep(std::span<const PEConfig> configs, const ResourceParams& params = {});

}  // namespace emms::cost

#endif  // EMMS_COST_MODEL_HPP
