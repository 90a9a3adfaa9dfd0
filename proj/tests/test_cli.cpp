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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "emms/circuit.hpp"
#include "emms/cli.hpp"
#include "json.hpp"

namespace emms::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string circuit_path(const std::string& name) { return std::string(EMMS_CIRCUITS) + "/" + name; }
std::string data_path(const std::string& name) { return std::string(EMMS_TEST_DATA) + "/" + name; }

class TempDir {
   public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("emms_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& contents) const {
        const auto p = path_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

   private:
    fs::path path_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    EXPECT_NE(it, header.end()) << name;
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<Complex> amplitudes_from_json(const std::string& text) {
    const auto doc = json::parse(text);
    std::vector<Complex> v;
    for (const auto& a : doc.at("amplitudes")) {
        EXPECT_EQ(a.at("index").get<std::size_t>(), v.size());
        v.emplace_back(a.at("re").get<double>(), a.at("im").get<double>());
    }
    return v;
}

TEST(CliRun, BellText) {
    const auto r = invoke({"run", circuit_path("bell.qc")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream in(r.out);
    std::vector<std::pair<std::size_t, Complex>> amps;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
        std::istringstream ls(line);
        std::size_t i;
        double re, im;
        ls >> i >> re >> im;
        amps.emplace_back(i, Complex{re, im});
    }
    ASSERT_EQ(amps.size(), 4U);
    EXPECT_NEAR(amps[0].second.real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(amps[3].second.real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(amps[1].second, Complex(0.0));
    EXPECT_NE(r.out.find("# cycles: regime resident"), std::string::npos);
}

TEST(CliRun, XOnTopQubitSwapsHalves) {
    const auto path = circuit_path("swap_halves.qc");
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    const auto c = parse_circuit(text.str());
    for (const std::string mode : {"float", "fixed"}) {
        const auto r = invoke({"run", path, "--format", "json", "--mode", mode});
        ASSERT_EQ(r.code, kExitOk) << r.err;
        const auto amps = amplitudes_from_json(r.out);
        ASSERT_EQ(amps.size(), 8U);
        const double tol = mode == "float" ? 0.0 : std::ldexp(1.0, -29);
        for (std::size_t i = 0; i < 8; ++i) {
            EXPECT_LE(std::abs(amps[i].real() - c.initial_state.at(i ^ 4U).real()), tol);
            EXPECT_LE(std::abs(amps[i].imag() - c.initial_state.at(i ^ 4U).imag()), tol);
        }
    }
}

TEST(CliRun, Qft4Uniform) {
    const auto r = invoke({"run", circuit_path("qft4.qc"), "--format", "csv", "--pes", "4"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 17U);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"index", "re", "im"}));
    for (std::size_t k = 1; k < rows.size(); ++k) {
        EXPECT_NEAR(std::stod(rows[k][1]), 0.25, 1e-12);
        EXPECT_NEAR(std::stod(rows[k][2]), 0.0, 1e-12);
    }
    // The cycle estimate goes to the diagnostic stream in CSV mode.
    EXPECT_NE(r.err.find("# cycles"), std::string::npos);
}

TEST(CliRun, JsonDocument) {
    const auto r = invoke({"run", circuit_path("bell.qc"), "--format", "json", "--pes", "2", "--ldm-depth", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["n"], 2);
    EXPECT_EQ(doc["groups"], 2);
    EXPECT_EQ(doc["circuit"], "bell");
    EXPECT_EQ(doc["cycles"]["regime"], "resident");
    EXPECT_EQ(doc["cycles"]["total"].get<uint64_t>(),
              doc["cycles"]["c_write"].get<uint64_t>() + doc["cycles"]["c_tp"].get<uint64_t>() +
                  doc["cycles"]["c_mm"].get<uint64_t>() + doc["cycles"]["c_read"].get<uint64_t>());
}

TEST(CliRun, OutFile) {
    TempDir dir;
    const auto out = dir.path("amps.json");
    const auto r = invoke({"run", circuit_path("bell.qc"), "--format", "json", "--out", out});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(out);
    std::ostringstream s;
    s << in.rdbuf();
    EXPECT_EQ(amplitudes_from_json(s.str()).size(), 4U);
}

TEST(CliRun, ParseErrorExitsTwoWithDiagnostic) {
    const auto r = invoke({"run", data_path("bad_gate.qc")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("bad_gate.qc:18:1: unknown gate 'foo'"), std::string::npos) << r.err;
}

TEST(CliRun, UsageErrors) {
    EXPECT_EQ(invoke({"run"}).code, kExitUsage);
    EXPECT_EQ(invoke({}).code, kExitUsage);
    EXPECT_EQ(invoke({"bogus"}).code, kExitUsage);
    EXPECT_EQ(invoke({"run", circuit_path("bell.qc"), "--mode", "double"}).code, kExitUsage);
    EXPECT_EQ(invoke({"run", circuit_path("bell.qc"), "--pes", "3"}).code, kExitUsage);
    EXPECT_EQ(invoke({"run", circuit_path("bell.qc"), "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(CliRun, FixedSaturationWarnsButSucceeds) {
    const auto r = invoke({"run", "--mode", "fixed", data_path("saturate.qc")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.err.find("saturation"), std::string::npos);
    const auto f = invoke({"run", data_path("saturate.qc")});
    EXPECT_EQ(f.code, kExitOk);
    EXPECT_TRUE(f.err.empty());
}

TEST(CliRun, FloatAndFixedAgreeOnFuzzCorpus) {
    TempDir dir;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const uint32_t n = 1 + static_cast<uint32_t>(seed % 8);
        const uint32_t depth = 10 + static_cast<uint32_t>(seed * 7 % 90);
        const auto path = dir.file("c" + std::to_string(seed) + ".qc", print_circuit(build_random(n, depth, seed)));
        const auto f = amplitudes_from_json(invoke({"run", path, "--format", "json"}).out);
        const auto x = amplitudes_from_json(invoke({"run", path, "--format", "json", "--mode", "fixed"}).out);
        ASSERT_EQ(f.size(), x.size());
        for (std::size_t i = 0; i < f.size(); ++i) ASSERT_LE(std::abs(f[i] - x[i]), depth * std::ldexp(1.0, -26));
    }
}

TEST(CliFuse, OneRotationThreeSparse) {
    TempDir dir;
    const auto r = invoke({"fuse", dir.file("h.qc", "qubits 4\nrz 0 0.5\nx 1\ns 2\nt 3\n"), "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2U);
    EXPECT_EQ(rows[1][column(rows[0], "gates")], "rz(0.5)@0 x@1 s@2 t@3");
    EXPECT_EQ(rows[1][column(rows[0], "param_count")], "1");
    EXPECT_EQ(rows[1][column(rows[0], "n_bar")], "2");
    EXPECT_EQ(rows[1][column(rows[0], "g_bar_nnz")], "4");
    EXPECT_EQ(rows[1][column(rows[0], "g_bar_unit_row")], "true");
    // Reusing qubit 2 closes the group.
    const auto split = invoke({"fuse", dir.file("g.qc", "qubits 4\nrz 0 0.5\nx 1\ns 2\ncz 2 3\n"), "--format", "csv"});
    EXPECT_EQ(split.code, kExitOk);
    EXPECT_EQ(parse_csv(split.out).size(), 3U);
}

TEST(CliFuse, Qft4Golden) {
    const auto r = invoke({"fuse", circuit_path("qft4.qc"), "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk);
    std::ifstream in(data_path("qft4_fuse.csv"));
    std::string golden;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') golden += line + "\n";
    }
    EXPECT_EQ(r.out, golden);
}

TEST(CliFuse, AllHadamardGroupsHaveIdentityGBar) {
    TempDir dir;
    std::string text = "qubits 5\n";
    for (int layer = 0; layer < 3; ++layer)
        for (int q = 0; q < 5; ++q) text += "h " + std::to_string(q) + "\n";
    const auto r = invoke({"fuse", dir.file("h.qc", text), "--format", "json"});
    ASSERT_EQ(r.code, kExitOk);
    const auto doc = json::parse(r.out);
    ASSERT_EQ(doc.size(), 3U);
    for (const auto& g : doc) {
        EXPECT_EQ(g["g_bar_identity"], "true");
        EXPECT_EQ(g["g_bar_unit_row"], "true");
        EXPECT_EQ(g["n_bar"], 0);
        EXPECT_EQ(g["g_low_nnz"], 32 * 32);
    }
}

TEST(CliEstimate, MemorySweep) {
    const auto r = invoke({"estimate", "memory", "--n", "20..32", "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 14U);
    const auto gb = column(rows[0], "traditional_gb");
    EXPECT_EQ(rows.back()[0], "32");
    EXPECT_NEAR(std::stod(rows.back()[gb]), 68.72, 0.01);
    EXPECT_NEAR(std::stod(rows[1][gb]), 0.0168, 0.0001);
}

TEST(CliEstimate, CyclesReferenceGrid) {
    const auto r = invoke({"estimate", "cycles", "--m", "100", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk);
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc.size(), 100U);
    const auto csv = parse_csv(invoke({"estimate", "cycles", "--format", "csv"}).out);
    EXPECT_EQ(csv.size(), 101U);
    // A custom grid is the Cartesian product of the listed values.
    const auto grid = json::parse(
        invoke({"estimate", "cycles", "--n", "4..6", "--pes", "2,4", "--ldm-depth", "64,1024", "--format", "json"})
            .out);
    EXPECT_EQ(grid.size(), 12U);
}

TEST(CliEstimate, ResourcesAtSixtyFourPes) {
    const auto r = invoke({"estimate", "resources", "--pes", "64", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = json::parse(r.out);
    ASSERT_EQ(doc.size(), 3U);
    for (const auto& row : doc) EXPECT_EQ(row["dsp_count"], 2048);
    const auto alt = json::parse(
        invoke({"estimate", "resources", "--pes", "64", "--tgbar-depth", "4096", "--dsp-per-multiplier", "2",
                "--format", "json"})
            .out);
    EXPECT_EQ(alt[0]["dsp_count"], 1024);
}

TEST(CliEstimate, BadRangesExitTwo) {
    EXPECT_EQ(invoke({"estimate", "memory", "--n", "30..20"}).code, kExitUsage);
    EXPECT_EQ(invoke({"estimate", "memory", "--n", "20..40"}).code, kExitUsage);
    EXPECT_EQ(invoke({"estimate", "cycles", "--n", "1..4"}).code, kExitUsage);
    EXPECT_EQ(invoke({"estimate", "cycles", "--n", "x"}).code, kExitUsage);
    EXPECT_EQ(invoke({"estimate", "power"}).code, kExitUsage);
    EXPECT_EQ(invoke({"estimate", "resources", "--pes", "6"}).code, kExitUsage);
}

TEST(CliVerify, PassFailAndUsage) {
    const auto pass = invoke({"verify", "--n-max", "6", "--depth", "30", "--trials", "200"});
    EXPECT_EQ(pass.code, kExitOk) << pass.out;
    EXPECT_EQ(pass.out.rfind("PASS", 0), 0U);

    const auto trivial = invoke({"verify", "--trials", "0", "--format", "json"});
    EXPECT_EQ(trivial.code, kExitOk);
    EXPECT_EQ(json::parse(trivial.out)["passed"], true);

    const auto fail = invoke({"verify", "--trials", "50", "--seed", "9", "--fault-inject", "cx", "--format", "json"});
    EXPECT_EQ(fail.code, kExitVerifyFailed);
    const auto doc = json::parse(fail.out);
    EXPECT_EQ(doc["passed"], false);
    EXPECT_EQ(doc["seed"], 9);
    // The dumped circuit reproduces itself.
    const auto dumped = parse_circuit(doc["failure"]["circuit"].get<std::string>());
    EXPECT_GE(dumped.ops.size(), 1U);

    const auto text_fail = invoke({"verify", "--trials", "50", "--fault-inject", "h"});
    EXPECT_EQ(text_fail.code, kExitVerifyFailed);
    EXPECT_NE(text_fail.out.find("circuit seed"), std::string::npos);
    EXPECT_NE(text_fail.out.find("qubits "), std::string::npos);

    EXPECT_EQ(invoke({"verify", "--n-max", "11"}).code, kExitUsage);
    EXPECT_EQ(invoke({"verify", "--fault-inject", "toffoli"}).code, kExitUsage);
}

TEST(CliBench, QftSpeedupShape) {
    const auto r = invoke({"bench", "--suite", "qft", "--n", "2..10", "--pes", "16", "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 10U);
    const auto h = rows[0];
    EXPECT_EQ(rows[1][column(h, "n")], "2");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto p16 = std::stoull(rows[k][column(h, "tp_mm_cycles")]);
        const auto p1 = std::stoull(rows[k][column(h, "tp_mm_cycles_1pe")]);
        EXPECT_GE(p16 * 16, p1);
        EXPECT_LT(p16, p1);
        EXPECT_GE(std::stod(rows[k][column(h, "wall_ms")]), 0.0);
    }
}

TEST(CliBench, RandomSuiteDeterministic) {
    auto strip_wall = [](const std::string& csv) {
        auto rows = parse_csv(csv);
        const auto w = column(rows[0], "wall_ms");
        for (auto& r : rows) r.erase(r.begin() + static_cast<std::ptrdiff_t>(w));
        return rows;
    };
    const std::vector<std::string> args{"bench", "--suite", "random", "--n", "2..6", "--depth", "30",
                                        "--seed", "5", "--pes", "1,4", "--format", "csv"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(strip_wall(a.out), strip_wall(b.out));
    EXPECT_EQ(strip_wall(a.out).size(), 11U);
    EXPECT_EQ(invoke({"bench", "--suite", "grover"}).code, kExitUsage);
    EXPECT_EQ(invoke({"bench", "--n", "1..3"}).code, kExitUsage);
}

TEST(CliBench, JsonRoundTrip) {
    const auto r = invoke({"bench", "--n", "3..4", "--mode", "fixed", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = json::parse(r.out);
    ASSERT_EQ(doc.size(), 2U);
    EXPECT_EQ(doc[0]["suite"], "qft");
    EXPECT_EQ(doc[1]["n"], 4);
}

}  // namespace
}  // namespace emms::cli
