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

#include "emms/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "emms/circuit.hpp"
#include "emms/cost_model.hpp"
#include "emms/fusion.hpp"
#include "emms/verify.hpp"
#include "json.hpp"

namespace emms::cli {

namespace {

using nlohmann::json;

// Raised for bad user input discovered after option parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

enum class Format { kText, kCsv, kJson };

Format parse_format(const std::string& s) {
    if (s == "text") return Format::kText;
    if (s == "csv") return Format::kCsv;
    if (s == "json") return Format::kJson;
    throw UsageError("unknown format '" + s + "' (expected text, csv or json)");
}

std::string render(const cost::Table& t, Format f) {
    switch (f) {
        case Format::kCsv: return t.to_csv();
        case Format::kJson: return t.to_json();
        case Format::kText: break;
    }
    return t.to_text();
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read circuit file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    auto c = parse_circuit(text.str(), path);
    auto slash = path.find_last_of('/');
    auto stem = path.substr(slash == std::string::npos ? 0 : slash + 1);
    if (auto dot = stem.rfind('.'); dot != std::string::npos) {
        stem = stem.substr(0, dot);
    }
    c.name = stem;
    return c;
}

// Writes to --out when given, otherwise to the command's stdout stream.
class Sink {
   public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw UsageError("cannot open output file '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

   private:
    std::ofstream file_;
    std::ostream& fallback_;
};

std::string describe_gate(const GateSpec& g) {
    std::string s(gate_name(g.kind));
    if (g.param) {
        s += "(" + num(*g.param) + ")";
    }
    s += "@";
    for (std::size_t k = 0; k < g.targets.size(); ++k) {
        s += (k ? "," : "") + std::to_string(g.targets[k]);
    }
    return s;
}

std::vector<PEConfig> cartesian_configs(const std::vector<uint32_t>& pes, const std::vector<uint64_t>& ldm,
                                        const std::vector<uint64_t>& tgbar) {
    std::vector<PEConfig> out;
    for (auto p : pes)
        for (auto l : ldm)
            for (auto t : tgbar) {
                PEConfig cfg{p, l, t};
                validate_pe_config(cfg);
                out.push_back(cfg);
            }
    return out;
}

json cycle_json(const cost::CycleReport& r) {
    return {{"regime", std::string(cost::to_string(r.regime))},
            {"c_write", r.c_write},
            {"c_tp", r.c_tp},
            {"c_mm", r.c_mm},
            {"c_read", r.c_read},
            {"total", r.total},
            {"io_fraction", r.io_fraction}};
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
    std::string circuit;
    std::string mode = "float";
    uint32_t pes = 1;
    uint64_t ldm_depth = uint64_t{1} << 10;
    uint64_t tgbar_depth = uint64_t{1} << 16;
    std::optional<uint32_t> nbar;
    std::string format = "text";
    std::string out;
};

template <Scalar T>
int do_run(const RunArgs& a, const Circuit& c, std::ostream& out, std::ostream& err) {
    const Format fmt = parse_format(a.format);
    RunOptions opts;
    opts.pe = {a.pes, a.ldm_depth, a.tgbar_depth};
    opts.n_bar = a.nbar;
    std::vector<uint32_t> n_bars;
    const auto psi = run_circuit<T>(c, opts, [&](std::size_t, const FusedGroup&, const Partition<T>& p,
                                                 const StateVector<T>&) { n_bars.push_back(p.n_bar); });
    const bool saturated = psi.overflowed();
    if (saturated) {
        err << "warning: fixed-point saturation occurred; amplitudes are clamped\n";
    }
    std::optional<cost::CycleReport> cycles;
    if (c.n >= cost::kMinCycleQubits && c.n <= cost::kMaxCycleQubits) {
        cycles = cost::cycle_model(c.n, n_bars, opts.pe);
    }

    Sink sink(a.out, out);
    auto& os = sink.stream();
    if (fmt == Format::kJson) {
        json amps = json::array();
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const auto z = ScalarTraits<T>::to_complex(psi[i]);
            amps.push_back({{"index", i}, {"re", z.real()}, {"im", z.imag()}});
        }
        json doc = {{"circuit", c.name},      {"n", c.n},
                    {"mode", a.mode},         {"gates", c.ops.size()},
                    {"groups", n_bars.size()}, {"saturated", saturated},
                    {"amplitudes", amps},     {"cycles", cycles ? cycle_json(*cycles) : json(nullptr)}};
        os << doc.dump(2) << "\n";
        return kExitOk;
    }
    std::ostringstream estimate;
    if (cycles) {
        estimate << "# cycles: regime " << cost::to_string(cycles->regime) << " write " << cycles->c_write << " tp "
                 << cycles->c_tp << " mm " << cycles->c_mm << " read " << cycles->c_read << " total "
                 << cycles->total << " io_fraction " << num(cycles->io_fraction) << " (pes " << a.pes << ", ldm "
                 << a.ldm_depth << ")\n";
    } else {
        estimate << "# cycles: not modeled for " << c.n << " qubits (supported 2..26)\n";
    }
    if (fmt == Format::kCsv) {
        os << "index,re,im\n";
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const auto z = ScalarTraits<T>::to_complex(psi[i]);
            os << i << "," << num(z.real()) << "," << num(z.imag()) << "\n";
        }
        err << estimate.str();
        return kExitOk;
    }
    os << "# circuit " << c.name << ": " << c.n << " qubits, " << c.ops.size() << " gates, " << n_bars.size()
       << " groups, mode " << a.mode << "\n";
    os << "index re im\n";
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const auto z = ScalarTraits<T>::to_complex(psi[i]);
        os << i << " " << num(z.real()) << " " << num(z.imag()) << "\n";
    }
    os << estimate.str();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fuse

template <Scalar T>
int do_fuse(const RunArgs& a, const Circuit& c, std::ostream& out) {
    const Format fmt = parse_format(a.format);
    cost::Table t;
    t.columns = {"group", "gates", "param_count", "n_bar", "g_bar_nnz", "g_low_nnz", "g_bar_unit_row",
                 "g_bar_identity"};
    const auto groups = fuse(c);
    for (std::size_t k = 0; k < groups.size(); ++k) {
        const auto part = partition<T>(groups[k], c.n, a.nbar);
        std::string gates;
        for (const auto& g : groups[k].gates) {
            gates += (gates.empty() ? "" : " ") + describe_gate(g);
        }
        const bool identity = part.g_bar == CooMatrix<T>::identity(part.g_bar.dim());
        t.rows.push_back({uint64_t{k}, gates, uint64_t{groups[k].param_count}, uint64_t{part.n_bar},
                          uint64_t{part.g_bar.nnz()}, uint64_t{part.g_low.nnz()},
                          std::string(part.g_bar.is_unit_row() ? "true" : "false"),
                          std::string(identity ? "true" : "false")});
    }
    Sink sink(a.out, out);
    sink.stream() << render(t, fmt);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    std::string suite = "qft";
    std::string n = "2..16";
    std::vector<uint32_t> pes{16};
    uint64_t ldm_depth = uint64_t{1} << 10;
    uint64_t tgbar_depth = uint64_t{1} << 16;
    uint32_t depth = 50;
    uint64_t seed = 1;
    std::string mode = "float";
    std::string format = "text";
    std::string out;
};

template <Scalar T>
double time_run(const Circuit& c, const PEConfig& cfg) {
    RunOptions opts;
    opts.pe = cfg;
    const auto start = std::chrono::steady_clock::now();
    const auto psi = run_circuit<T>(c, opts);
    const auto stop = std::chrono::steady_clock::now();
    (void)psi;
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

int do_bench(const BenchArgs& a, std::ostream& out) {
    const Format fmt = parse_format(a.format);
    const ScalarMode mode = parse_scalar_mode(a.mode);
    if (a.suite != "qft" && a.suite != "random") {
        throw UsageError("unknown bench suite '" + a.suite + "' (expected qft or random)");
    }
    const auto range = cost::parse_range(a.n);
    if (range.lo < cost::kMinCycleQubits || range.hi > cost::kMaxCycleQubits) {
        throw UsageError("bench qubit range must lie within 2..26");
    }
    cost::Table t;
    t.columns = {"suite", "seed", "n", "gates", "groups", "pes", "ldm_depth", "wall_ms", "regime",
                 "tp_mm_cycles", "tp_mm_cycles_1pe", "speedup", "total_cycles"};
    for (uint32_t n = range.lo; n <= range.hi; ++n) {
        const Circuit c = a.suite == "qft" ? build_qft(n) : build_random(n, a.depth, a.seed + n);
        std::vector<uint32_t> n_bars;
        for (const auto& g : fuse(c)) {
            n_bars.push_back(choose_dividing_point(g, n));
        }
        for (auto p : a.pes) {
            const PEConfig cfg{p, a.ldm_depth, a.tgbar_depth};
            validate_pe_config(cfg);
            const PEConfig base{1, a.ldm_depth, a.tgbar_depth};
            const auto r = cost::cycle_model(n, n_bars, cfg);
            const auto r1 = cost::cycle_model(n, n_bars, base);
            const double ms = mode == ScalarMode::kFloat ? time_run<Complex>(c, cfg) : time_run<FixedComplex>(c, cfg);
            const uint64_t tpmm = r.c_tp + r.c_mm;
            const uint64_t tpmm1 = r1.c_tp + r1.c_mm;
            t.rows.push_back({a.suite, a.suite == "random" ? a.seed + n : uint64_t{0}, uint64_t{n},
                              uint64_t{c.ops.size()}, uint64_t{n_bars.size()}, uint64_t{p}, a.ldm_depth, ms,
                              std::string(cost::to_string(r.regime)), tpmm, tpmm1,
                              tpmm == 0 ? 0.0 : static_cast<double>(tpmm1) / static_cast<double>(tpmm), r.total});
        }
    }
    Sink sink(a.out, out);
    sink.stream() << render(t, fmt);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"EMMS quantum-circuit emulator and accelerator cost model", "emms"};
    app.require_subcommand(1);

    auto add_pe_flags = [](CLI::App* sub, uint32_t& pes, uint64_t& ldm, uint64_t& tgbar) {
        sub->add_option("--pes", pes, "Number of processing elements (power of two)")->capture_default_str();
        sub->add_option("--ldm-depth", ldm, "Per-PE local data memory depth in 128-bit words")
            ->capture_default_str();
        sub->add_option("--tgbar-depth", tgbar, "T(G_bar) memory depth in 128-bit words")->capture_default_str();
    };

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Emulate a circuit and print the final amplitudes");
    RunArgs fuse_args;
    auto* fuse_cmd = app.add_subcommand("fuse", "Show fused groups and their EMMS partitions");
    for (auto [sub, ra] : {std::pair{run_cmd, &run_args}, std::pair{fuse_cmd, &fuse_args}}) {
        sub->add_option("circuit", ra->circuit, "Circuit file (.qc)")->required();
        sub->add_option("--mode", ra->mode, "Scalar mode: float or fixed")->capture_default_str();
        add_pe_flags(sub, ra->pes, ra->ldm_depth, ra->tgbar_depth);
        sub->add_option("--nbar", ra->nbar, "Starting dividing point (default ceil(n/2))");
        sub->add_option("--format", ra->format, "Output format: text, csv or json")->capture_default_str();
        sub->add_option("--out", ra->out, "Write output to this file");
        uint64_t unused_seed = 0;
        sub->add_option("--seed", unused_seed, "Accepted for uniformity; runs are deterministic");
    }

    std::string est_kind;
    std::string est_n;
    std::string est_nbar;
    uint64_t est_m = 100;
    std::vector<uint32_t> est_pes;
    std::vector<uint64_t> est_ldm, est_tgbar;
    uint32_t est_dsp = cost::ResourceParams{}.dsp_per_multiplier;
    std::string est_format = "text", est_out;
    auto* est_cmd = app.add_subcommand("estimate", "Tabulate the memory, cycle or resource model");
    est_cmd->add_option("kind", est_kind, "memory, cycles or resources")
        ->required()
        ->check(CLI::IsMember({"memory", "cycles", "resources"}));
    est_cmd->add_option("--n", est_n, "Qubit range lo..hi");
    est_cmd->add_option("--nbar", est_nbar, "Dividing-point range lo..hi (memory; default ceil(n/2))");
    est_cmd->add_option("--m", est_m, "Number of fused steps (cycles)")->capture_default_str();
    est_cmd->add_option("--pes", est_pes, "PE counts, comma separated")->delimiter(',');
    est_cmd->add_option("--ldm-depth", est_ldm, "LDM depths, comma separated")->delimiter(',');
    est_cmd->add_option("--tgbar-depth", est_tgbar, "T(G_bar) memory depths, comma separated")->delimiter(',');
    est_cmd->add_option("--dsp-per-multiplier", est_dsp, "DSP slices per ALU multiplier")->capture_default_str();
    est_cmd->add_option("--format", est_format, "Output format: text, csv or json")->capture_default_str();
    est_cmd->add_option("--out", est_out, "Write output to this file");

    VerifyParams vp;
    std::string fault;
    std::string verify_format = "text";
    auto* verify_cmd = app.add_subcommand("verify", "Compare random circuits against the dense oracle");
    verify_cmd->add_option("--n-max", vp.n_max, "Largest qubit count (<= 10)")->capture_default_str();
    verify_cmd->add_option("--depth", vp.depth, "Largest circuit depth")->capture_default_str();
    verify_cmd->add_option("--trials", vp.trials, "Number of random circuits")->capture_default_str();
    verify_cmd->add_option("--seed", vp.seed, "Master seed")->capture_default_str();
    verify_cmd->add_option("--tolerance", vp.tolerance, "Max per-amplitude deviation")->capture_default_str();
    verify_cmd->add_option("--pes", vp.pe.pe_count, "Number of processing elements")->capture_default_str();
    verify_cmd->add_option("--fault-inject", fault, "Corrupt this gate's matrix (negative control)");
    verify_cmd->add_option("--format", verify_format, "Output format: text or json")->capture_default_str();

    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "Time circuits and report modeled cycles");
    bench_cmd->add_option("--suite", ba.suite, "qft or random")->capture_default_str();
    bench_cmd->add_option("--n", ba.n, "Qubit range lo..hi")->capture_default_str();
    bench_cmd->add_option("--pes", ba.pes, "PE counts, comma separated")->delimiter(',')->capture_default_str();
    bench_cmd->add_option("--ldm-depth", ba.ldm_depth, "Per-PE LDM depth")->capture_default_str();
    bench_cmd->add_option("--tgbar-depth", ba.tgbar_depth, "T(G_bar) memory depth")->capture_default_str();
    bench_cmd->add_option("--depth", ba.depth, "Gates per random circuit")->capture_default_str();
    bench_cmd->add_option("--seed", ba.seed, "Seed for the random suite")->capture_default_str();
    bench_cmd->add_option("--mode", ba.mode, "Scalar mode: float or fixed")->capture_default_str();
    bench_cmd->add_option("--format", ba.format, "Output format: text, csv or json")->capture_default_str();
    bench_cmd->add_option("--out", ba.out, "Write output to this file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed() || fuse_cmd->parsed()) {
            const auto& a = run_cmd->parsed() ? run_args : fuse_args;
            const Circuit c = load_circuit(a.circuit);
            const ScalarMode mode = parse_scalar_mode(a.mode);
            validate_pe_config({a.pes, a.ldm_depth, a.tgbar_depth});
            if (run_cmd->parsed()) {
                return mode == ScalarMode::kFloat ? do_run<Complex>(a, c, out, err)
                                                  : do_run<FixedComplex>(a, c, out, err);
            }
            return mode == ScalarMode::kFloat ? do_fuse<Complex>(a, c, out) : do_fuse<FixedComplex>(a, c, out);
        }

        if (est_cmd->parsed()) {
            const Format fmt = parse_format(est_format);
            cost::Table t;
            const bool custom = !est_pes.empty() || !est_ldm.empty() || !est_tgbar.empty();
            const PEConfig defaults;
            if (est_kind == "memory") {
                const auto n = cost::parse_range(est_n.empty() ? "20..32" : est_n);
                std::vector<uint32_t> bars;
                if (!est_nbar.empty()) {
                    const auto r = cost::parse_range(est_nbar);
                    for (uint32_t b = r.lo; b <= r.hi; ++b) bars.push_back(b);
                }
                if (n.lo < 1 || n.hi > 32) {
                    throw UsageError("memory sweep qubit range must lie within 1..32");
                }
                t = cost::memory_sweep(n, bars);
            } else if (est_kind == "cycles") {
                const auto n = cost::parse_range(est_n.empty() ? "2..26" : est_n);
                if (n.lo < cost::kMinCycleQubits || n.hi > cost::kMaxCycleQubits) {
                    throw UsageError("cycle sweep qubit range must lie within 2..26");
                }
                const auto configs =
                    custom ? cartesian_configs(est_pes.empty() ? std::vector<uint32_t>{defaults.pe_count} : est_pes,
                                               est_ldm.empty() ? std::vector<uint64_t>{defaults.ldm_depth} : est_ldm,
                                               est_tgbar.empty() ? std::vector<uint64_t>{defaults.tgbar_depth}
                                                                 : est_tgbar)
                           : cost::reference_configs();
                t = cost::cycle_sweep(n, est_m, configs);
            } else {
                const auto configs = cartesian_configs(
                    est_pes.empty() ? std::vector<uint32_t>{4, 8, 16, 32, 64} : est_pes,
                    est_ldm.empty() ? std::vector<uint64_t>{defaults.ldm_depth} : est_ldm,
                    est_tgbar.empty() ? std::vector<uint64_t>{1u << 12, 1u << 14, 1u << 16} : est_tgbar);
                cost::ResourceParams params;
                params.dsp_per_multiplier = est_dsp;
                t = cost::resource_sweep(configs, params);
            }
            Sink sink(est_out, out);
            sink.stream() << render(t, fmt);
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            const Format fmt = parse_format(verify_format);
            if (!fault.empty()) {
                auto kind = parse_gate_kind(fault);
                if (!kind) {
                    throw UsageError("unknown gate '" + fault + "' for --fault-inject");
                }
                vp.fault = *kind;
            }
            if (vp.n_max < 1 || vp.n_max > 10) {
                throw UsageError("--n-max must lie within 1..10");
            }
            validate_pe_config(vp.pe);
            const auto r = verify_against_oracle(vp);
            if (fmt == Format::kJson) {
                json doc = {{"passed", r.passed()},
                            {"trials", r.trials_run},
                            {"seed", vp.seed},
                            {"tolerance", vp.tolerance},
                            {"max_deviation", r.max_deviation}};
                if (r.failure) {
                    doc["failure"] = {{"trial", r.failure->trial},
                                      {"circuit_seed", r.failure->circuit_seed},
                                      {"deviation", r.failure->deviation},
                                      {"circuit", print_circuit(r.failure->circuit)}};
                }
                out << doc.dump(2) << "\n";
            } else {
                out << (r.passed() ? "PASS" : "FAIL") << ": " << r.trials_run << " trial(s), seed " << vp.seed
                    << ", max deviation " << num(r.max_deviation) << " (tolerance " << num(vp.tolerance) << ")\n";
                if (r.failure) {
                    out << "failing trial " << r.failure->trial << " circuit seed " << r.failure->circuit_seed
                        << " deviation " << num(r.failure->deviation) << "\n"
                        << print_circuit(r.failure->circuit);
                }
            }
            return r.passed() ? kExitOk : kExitVerifyFailed;
        }

        if (bench_cmd->parsed()) {
            return do_bench(ba, out);
        }
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace emms::cli
