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


#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "emms/circuit.hpp"
#include "emms/cost_model.hpp"
#include "emms/fusion.hpp"
#include "emms/oracle.hpp"
#include "emms/verify.hpp"

namespace py = pybind11;

namespace {

using emms::Circuit;
using emms::Complex;
using emms::FixedComplex;
using emms::GateKind;
using emms::GateSpec;
using emms::PEConfig;

GateKind kind_or_throw(const std::string& name) {
    auto k = emms::parse_gate_kind(name);
    if (!k) {
        throw py::value_error("unknown gate '" + name + "'");
    }
    return *k;
}

GateSpec make_gate(const std::string& name, std::vector<uint32_t> targets, std::optional<double> param) {
    GateSpec g{kind_or_throw(name), std::move(targets), param};
    emms::validate_gate(g);
    return g;
}

py::array_t<std::complex<double>> to_numpy(std::span<const Complex> amps) {
    py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(amps.size()));
    auto view = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < amps.size(); ++i) view(static_cast<py::ssize_t>(i)) = amps[i];
    return out;
}

PEConfig pe_config(uint32_t pes, uint64_t ldm_depth, uint64_t tgbar_depth) {
    PEConfig cfg{pes, ldm_depth, tgbar_depth};
    emms::validate_pe_config(cfg);
    return cfg;
}

py::array_t<std::complex<double>> run(const Circuit& c, const std::string& mode, uint32_t pes, uint64_t ldm_depth,
                                      uint64_t tgbar_depth, std::optional<uint32_t> n_bar) {
    emms::RunOptions opts;
    opts.pe = pe_config(pes, ldm_depth, tgbar_depth);
    opts.n_bar = n_bar;
    if (emms::parse_scalar_mode(mode) == emms::ScalarMode::kFloat) {
        const auto psi = emms::run_circuit<Complex>(c, opts);
        return to_numpy(psi.amps());
    }
    const auto psi = emms::run_circuit<FixedComplex>(c, opts);
    std::vector<Complex> decoded;
    decoded.reserve(psi.size());
    for (const auto& a : psi.amps()) decoded.push_back(a.decode());
    if (psi.overflowed()) {
        PyErr_WarnEx(PyExc_RuntimeWarning, "fixed-point saturation occurred; amplitudes are clamped", 1);
    }
    return to_numpy(decoded);
}

py::list fuse(const Circuit& c, std::optional<uint32_t> n_bar) {
    py::list groups;
    for (const auto& g : emms::fuse(c)) {
        const auto p = emms::partition<Complex>(g, c.n, n_bar);
        py::dict d;
        d["gates"] = g.gates;
        d["param_count"] = g.param_count;
        d["n_bar"] = p.n_bar;
        d["g_bar_nnz"] = p.g_bar.nnz();
        d["g_low_nnz"] = p.g_low.nnz();
        d["g_bar_unit_row"] = p.g_bar.is_unit_row();
        groups.append(d);
    }
    return groups;
}

py::dict cycle_dict(const emms::cost::CycleReport& r) {
    py::dict d;
    d["regime"] = std::string(emms::cost::to_string(r.regime));
    d["c_write"] = r.c_write;
    d["c_tp"] = r.c_tp;
    d["c_mm"] = r.c_mm;
    d["c_read"] = r.c_read;
    d["total"] = r.total;
    d["io_fraction"] = r.io_fraction;
    return d;
}

}  // namespace

PYBIND11_MODULE(emms, m) {
    m.doc() = "Sparse-operator quantum-circuit emulator and accelerator cost model";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::out_of_range& e) {
            py::set_error(PyExc_ValueError, e.what());
        }
    });
    py::register_exception<emms::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<GateSpec>(m, "Gate")
        .def(py::init(&make_gate), py::arg("name"), py::arg("targets"), py::arg("param") = std::nullopt)
        .def_property_readonly("name", [](const GateSpec& g) { return std::string(emms::gate_name(g.kind)); })
        .def_readonly("targets", &GateSpec::targets)
        .def_readonly("param", &GateSpec::param)
        .def("__eq__", [](const GateSpec& a, const GateSpec& b) { return a == b; })
        .def("__repr__", [](const GateSpec& g) {
            std::string s = "Gate('" + std::string(emms::gate_name(g.kind)) + "', [";
            for (std::size_t k = 0; k < g.targets.size(); ++k) s += (k ? ", " : "") + std::to_string(g.targets[k]);
            s += "]";
            if (g.param) s += ", " + py::repr(py::float_(*g.param)).cast<std::string>();
            return s + ")";
        });

    py::class_<Circuit>(m, "Circuit")
        .def(py::init([](uint32_t n, std::vector<GateSpec> ops, std::string name) {
                 Circuit c;
                 c.n = n;
                 c.ops = std::move(ops);
                 c.name = std::move(name);
                 emms::validate_circuit(c);
                 return c;
             }),
             py::arg("n"), py::arg("ops") = std::vector<GateSpec>{}, py::arg("name") = "")
        .def_readonly("n", &Circuit::n)
        .def_readonly("ops", &Circuit::ops)
        .def_readwrite("name", &Circuit::name)
        .def_readonly("initial_state", &Circuit::initial_state)
        .def("__eq__", [](const Circuit& a, const Circuit& b) { return a == b; })
        .def("__len__", [](const Circuit& c) { return c.ops.size(); })
        .def("__str__", &emms::print_circuit);

    m.def("parse_circuit", &emms::parse_circuit, py::arg("text"), py::arg("source") = "<input>");
    m.def("print_circuit", &emms::print_circuit, py::arg("circuit"));
    m.def(
        "build_qft", [](uint32_t n, bool final_swaps) { return emms::build_qft(n, {final_swaps}); }, py::arg("n"),
        py::arg("final_swaps") = false);
    m.def("build_ghz", &emms::build_ghz, py::arg("n"));
    m.def("build_random", &emms::build_random, py::arg("n"), py::arg("depth"), py::arg("seed"));

    m.def("run", &run, py::arg("circuit"), py::arg("mode") = "float", py::arg("pes") = 1,
          py::arg("ldm_depth") = PEConfig{}.ldm_depth, py::arg("tgbar_depth") = PEConfig{}.tgbar_depth,
          py::arg("n_bar") = std::nullopt, "Emulate a circuit; returns the final amplitudes as complex128.");
    m.def(
        "dense_run", [](const Circuit& c) { return to_numpy(emms::oracle::dense_run(c)); }, py::arg("circuit"),
        "Dense reference evolution (n <= 14).");
    m.def("fuse", &fuse, py::arg("circuit"), py::arg("n_bar") = std::nullopt);

    m.def(
        "gate_matrix",
        [](const std::string& name, std::optional<double> param, const std::string& mode) {
            std::vector<std::tuple<uint32_t, uint32_t, Complex>> out;
            const auto k = kind_or_throw(name);
            if (emms::parse_scalar_mode(mode) == emms::ScalarMode::kFloat) {
                const auto m = emms::gate_matrix<Complex>(k, param);
                for (const auto& t : m.tuples()) out.emplace_back(t.row, t.col, t.val);
            } else {
                const auto m = emms::gate_matrix<FixedComplex>(k, param);
                for (const auto& t : m.tuples()) out.emplace_back(t.row, t.col, t.val.decode());
            }
            return out;
        },
        py::arg("name"), py::arg("param") = std::nullopt, py::arg("mode") = "float",
        "COO tuples (row, col, value) of a gate in its canonical orientation.");
    m.def("is_sparse", [](const std::string& name) { return emms::is_sparse(kind_or_throw(name)); });

    m.def(
        "memory_model",
        [](uint32_t n, uint32_t n_bar) {
            const auto r = emms::cost::memory_model(n, n_bar);
            py::dict d;
            d["n"] = r.n;
            d["n_bar"] = r.n_bar;
            d["traditional_bytes"] = r.traditional_bytes;
            d["emms_bytes"] = r.emms_bytes;
            d["efficiency_factor"] = r.efficiency_factor;
            return d;
        },
        py::arg("n"), py::arg("n_bar"));
    m.def(
        "cycle_model",
        [](uint32_t n, uint64_t m_steps, uint32_t pes, uint64_t ldm_depth, uint64_t tgbar_depth,
           std::optional<uint32_t> n_bar) {
            const auto cfg = pe_config(pes, ldm_depth, tgbar_depth);
            return cycle_dict(emms::cost::cycle_model(n, m_steps, cfg, n_bar.value_or((n + 1) / 2)));
        },
        py::arg("n"), py::arg("m"), py::arg("pes"), py::arg("ldm_depth"), py::arg("tgbar_depth") = PEConfig{}.tgbar_depth,
        py::arg("n_bar") = std::nullopt);
    m.def(
        "resource_model",
        [](uint32_t pes, uint64_t ldm_depth, uint64_t tgbar_depth, uint32_t dsp_per_multiplier) {
            emms::cost::ResourceParams params;
            params.dsp_per_multiplier = dsp_per_multiplier;
            const auto r = emms::cost::resource_model(pe_config(pes, ldm_depth, tgbar_depth), params);
            py::dict d;
            d["bram_blocks"] = r.bram_blocks;
            d["dsp_count"] = r.dsp_count;
            d["max_resident_qubits"] = r.max_resident_qubits;
            return d;
        },
        py::arg("pes"), py::arg("ldm_depth"), py::arg("tgbar_depth"), py::arg("dsp_per_multiplier") = 4);

    m.def(
        "verify",
        [](uint32_t n_max, uint32_t depth, uint32_t trials, uint64_t seed, double tolerance) {
            emms::VerifyParams p;
            p.n_max = n_max;
            p.depth = depth;
            p.trials = trials;
            p.seed = seed;
            p.tolerance = tolerance;
            const auto r = emms::verify_against_oracle(p);
            py::dict d;
            d["passed"] = r.passed();
            d["trials"] = r.trials_run;
            d["max_deviation"] = r.max_deviation;
            return d;
        },
        py::arg("n_max") = 6, py::arg("depth") = 30, py::arg("trials") = 200, py::arg("seed") = 1,
        py::arg("tolerance") = 1e-10);
}
