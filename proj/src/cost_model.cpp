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

#include "emms/cost_model.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace emms::cost {

namespace {

constexpr uint64_t ceil_div(uint64_t a, uint64_t b) { return (a + b - 1) / b; }

constexpr uint64_t pow2(uint32_t k) { return uint64_t{1} << k; }

void check_cycle_args(uint32_t n, const PEConfig& cfg) {
    if (n < kMinCycleQubits || n > kMaxCycleQubits) {
        throw std::out_of_range("cycle model supports 2..26 qubits, got " + std::to_string(n));
    }
    validate_pe_config(cfg);
}

uint64_t tp_cycles(uint32_t n, uint32_t n_bar, uint32_t pes) {
    if (n_bar > n) {
        throw std::out_of_range("dividing point " + std::to_string(n_bar) + " exceeds " + std::to_string(n) +
                                " qubits");
    }
    return ceil_div(pow2(n_bar) + pow2(n - n_bar), pes);
}

CycleReport finish(uint32_t n, uint64_t steps, uint64_t tp, uint64_t mm, const PEConfig& cfg) {
    const uint64_t big_n = pow2(n);
    CycleReport r;
    r.regime = big_n <= uint64_t{cfg.pe_count} * cfg.ldm_depth ? Regime::kResident : Regime::kStreaming;
    r.c_tp = tp;
    r.c_mm = mm;
    if (r.regime == Regime::kResident) {
        r.c_write = big_n;
        r.c_read = big_n;
    } else {
        r.c_write = steps * big_n;
        r.c_read = steps * big_n;
    }
    r.total = r.c_write + r.c_tp + r.c_mm + r.c_read;
    r.io_fraction = r.total == 0 ? 0.0 : static_cast<double>(r.c_write + r.c_read) / static_cast<double>(r.total);
    return r;
}

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<V, double>) {
                char buf[64];
                auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
                return std::string(buf, ptr);
            } else {
                return std::to_string(v);
            }
        },
        c);
}

void check_range(Range r) {
    if (r.lo > r.hi) {
        throw std::invalid_argument("empty range " + std::to_string(r.lo) + ".." + std::to_string(r.hi));
    }
}

std::vector<Cell> config_cells(const PEConfig& cfg) {
    return {uint64_t{cfg.pe_count}, cfg.ldm_depth, cfg.tgbar_depth};
}

}  // namespace

MemoryReport memory_model(uint32_t n, uint32_t n_bar) {
    if (n < 1 || n > 32 || n_bar < 1 || n_bar > n) {
        throw std::out_of_range("memory model needs 1 <= n_bar <= n <= 32, got n=" + std::to_string(n) +
                                " n_bar=" + std::to_string(n_bar));
    }
    MemoryReport r;
    r.n = n;
    r.n_bar = n_bar;
    r.traditional_bytes = pow2(n) * kBytesPerWord;
    r.emms_bytes = (pow2(n_bar) + pow2(n - n_bar)) * kBytesPerWord;
    r.efficiency_factor = static_cast<double>(r.traditional_bytes) / static_cast<double>(r.emms_bytes);
    return r;
}

std::string_view to_string(Regime regime) { return regime == Regime::kResident ? "resident" : "streaming"; }

CycleReport cycle_model(uint32_t n, uint64_t m, const PEConfig& cfg, uint32_t n_bar) {
    check_cycle_args(n, cfg);
    const uint64_t tp = tp_cycles(n, n_bar, cfg.pe_count);
    const uint64_t mm = ceil_div(pow2(n), cfg.pe_count);
    return finish(n, m, m * tp, m * mm, cfg);
}

CycleReport cycle_model(uint32_t n, std::span<const uint32_t> step_n_bars, const PEConfig& cfg) {
    check_cycle_args(n, cfg);
    uint64_t tp = 0;
    for (auto n_bar : step_n_bars) {
        tp += tp_cycles(n, n_bar, cfg.pe_count);
    }
    const uint64_t mm = step_n_bars.size() * ceil_div(pow2(n), cfg.pe_count);
    return finish(n, step_n_bars.size(), tp, mm, cfg);
}

uint64_t bram_blocks_for_depth(uint64_t depth, const ResourceParams& params) {
    return ceil_div(depth * kBitsPerWord, params.bram_block_bits);
}

ResourceReport resource_model(const PEConfig& cfg, const ResourceParams& params) {
    validate_pe_config(cfg);
    ResourceReport r;
    r.dsp_count = uint64_t{cfg.pe_count} * params.multipliers_per_pe * params.dsp_per_multiplier;
    r.bram_blocks = bram_blocks_for_depth(cfg.tgbar_depth, params) +
                    uint64_t{cfg.pe_count} * params.ldms_per_pe * bram_blocks_for_depth(cfg.ldm_depth, params);
    const uint64_t capacity = uint64_t{cfg.pe_count} * cfg.ldm_depth;
    r.max_resident_qubits = capacity == 0 ? 0 : static_cast<uint32_t>(std::bit_width(capacity) - 1);
    return r;
}

std::vector<PEConfig> reference_configs() {
    return {
        {4, pow2(16), pow2(16)},
        {8, pow2(14), pow2(16)},
        {16, pow2(12), pow2(16)},
        {32, pow2(10), pow2(16)},
    };
}

Range parse_range(std::string_view text) {
    auto parse_one = [&](std::string_view s) {
        uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            throw std::invalid_argument("invalid range '" + std::string(text) + "'");
        }
        return v;
    };
    const auto dots = text.find("..");
    Range r;
    if (dots == std::string_view::npos) {
        r.lo = r.hi = parse_one(text);
    } else {
        r.lo = parse_one(text.substr(0, dots));
        r.hi = parse_one(text.substr(dots + 2));
    }
    check_range(r);
    return r;
}

Table memory_sweep(Range n, std::span<const uint32_t> n_bars) {
    check_range(n);
    Table t;
    t.columns = {"n", "n_bar", "traditional_bytes", "emms_bytes", "efficiency_factor", "traditional_gb", "emms_mb"};
    for (uint32_t q = n.lo; q <= n.hi; ++q) {
        std::vector<uint32_t> bars(n_bars.begin(), n_bars.end());
        if (bars.empty()) {
            bars.push_back((q + 1) / 2);
        }
        for (auto b : bars) {
            if (b < 1 || b > q) {
                continue;
            }
            const auto r = memory_model(q, b);
            t.rows.push_back({uint64_t{r.n}, uint64_t{r.n_bar}, r.traditional_bytes, r.emms_bytes,
                              r.efficiency_factor, static_cast<double>(r.traditional_bytes) / 1e9,
                              static_cast<double>(r.emms_bytes) / 1e6});
        }
    }
    if (t.rows.empty()) {
        throw std::invalid_argument("memory sweep produced no admissible (n, n_bar) points");
    }
    return t;
}

Table cycle_sweep(Range n, uint64_t m, std::span<const PEConfig> configs) {
    check_range(n);
    if (configs.empty()) {
        throw std::invalid_argument("cycle sweep needs at least one configuration");
    }
    Table t;
    t.columns = {"pe_count", "ldm_depth", "tgbar_depth", "n", "n_bar", "m", "regime", "c_write",
                 "c_tp", "c_mm", "c_read", "total", "io_fraction"};
    for (const auto& cfg : configs) {
        for (uint32_t q = n.lo; q <= n.hi; ++q) {
            const uint32_t n_bar = (q + 1) / 2;
            const auto r = cycle_model(q, m, cfg, n_bar);
            auto row = config_cells(cfg);
            row.insert(row.end(), {uint64_t{q}, uint64_t{n_bar}, m, std::string(to_string(r.regime)), r.c_write,
                                   r.c_tp, r.c_mm, r.c_read, r.total, r.io_fraction});
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table resource_sweep(std::span<const PEConfig> configs, const ResourceParams& params) {
    if (configs.empty()) {
        throw std::invalid_argument("resource sweep needs at least one configuration");
    }
    Table t;
    t.columns = {"pe_count", "ldm_depth", "tgbar_depth", "bram_blocks", "dsp_count", "max_resident_qubits"};
    for (const auto& cfg : configs) {
        const auto r = resource_model(cfg, params);
        auto row = config_cells(cfg);
        row.insert(row.end(), {r.bram_blocks, r.dsp_count, uint64_t{r.max_resident_qubits}});
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string Table::to_csv() const {
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << cell_text(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

std::string Table::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit([&](const auto& v) { obj[columns[c]] = v; }, row[c]);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string Table::to_text() const {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        width[c] = columns[c].size();
        for (const auto& row : rows) {
            width[c] = std::max(width[c], cell_text(row[c]).size());
        }
    }
    std::ostringstream out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << columns[c];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << cell_text(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace emms::cost
