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

#include "emms/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emms::oracle {

namespace {

using namespace std::complex_literals;

DenseOperator from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    DenseOperator m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (const auto& v : row) {
            m.at(i, j++) = v;
        }
        ++i;
    }
    return m;
}

DenseOperator controlled(const DenseOperator& u) {
    DenseOperator m = DenseOperator::identity(4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            m.at(2 + i, 2 + j) = u.at(i, j);
        }
    }
    return m;
}

DenseOperator single(GateKind kind, double angle) {
    const double h = 1.0 / std::sqrt(2.0);
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    switch (kind) {
        case GateKind::I: return DenseOperator::identity(2);
        case GateKind::X: return from_rows({{0, 1}, {1, 0}});
        case GateKind::Y: return from_rows({{0, -1i}, {1i, 0}});
        case GateKind::Z: return from_rows({{1, 0}, {0, -1}});
        case GateKind::S: return from_rows({{1, 0}, {0, 1i}});
        case GateKind::SDG: return from_rows({{1, 0}, {0, -1i}});
        case GateKind::T: return from_rows({{1, 0}, {0, std::exp(1i * (std::numbers::pi / 4))}});
        case GateKind::TDG: return from_rows({{1, 0}, {0, std::exp(-1i * (std::numbers::pi / 4))}});
        case GateKind::P: return from_rows({{1, 0}, {0, std::exp(1i * angle)}});
        case GateKind::RZ: return from_rows({{std::exp(-0.5i * angle), 0}, {0, std::exp(0.5i * angle)}});
        case GateKind::RX: return from_rows({{c, -1i * s}, {-1i * s, c}});
        case GateKind::RY: return from_rows({{c, -s}, {s, c}});
        case GateKind::H: return from_rows({{h, h}, {h, -h}});
        case GateKind::SX: return from_rows({{0.5 + 0.5i, 0.5 - 0.5i}, {0.5 - 0.5i, 0.5 + 0.5i}});
        default: break;
    }
    throw std::invalid_argument("not a single-qubit gate");
}

DenseOperator canonical(GateKind kind, double angle) {
    switch (kind) {
        case GateKind::CX: return controlled(single(GateKind::X, angle));
        case GateKind::CY: return controlled(single(GateKind::Y, angle));
        case GateKind::CZ: return controlled(single(GateKind::Z, angle));
        case GateKind::CP: return controlled(single(GateKind::P, angle));
        case GateKind::CRX: return controlled(single(GateKind::RX, angle));
        case GateKind::CRY: return controlled(single(GateKind::RY, angle));
        case GateKind::CRZ: return controlled(single(GateKind::RZ, angle));
        case GateKind::CH: return controlled(single(GateKind::H, angle));
        default: return single(kind, angle);
    }
}

}  // namespace

DenseOperator::DenseOperator(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0, 0}) {}

DenseOperator DenseOperator::identity(std::size_t dim) {
    DenseOperator m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i, i) = 1;
    }
    return m;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
    DenseOperator out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < b.dim(); ++k)
                for (std::size_t l = 0; l < b.dim(); ++l)
                    out.at(i * b.dim() + k, j * b.dim() + l) = a.at(i, j) * b.at(k, l);
    return out;
}

DenseOperator matmul(const DenseOperator& a, const DenseOperator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("matmul dimension mismatch");
    }
    const std::size_t d = a.dim();
    DenseOperator out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex aik = a.at(i, k);
            for (std::size_t j = 0; j < d; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

DenseOperator adjoint(const DenseOperator& a) {
    DenseOperator out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) out.at(j, i) = std::conj(a.at(i, j));
    return out;
}

std::vector<Complex> apply(const DenseOperator& u, const std::vector<Complex>& psi) {
    if (psi.size() != u.dim()) {
        throw std::invalid_argument("dense apply dimension mismatch");
    }
    std::vector<Complex> out(u.dim(), Complex{0, 0});
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < u.dim(); ++j) out[i] += u.at(i, j) * psi[j];
    return out;
}

double unitarity_error(const DenseOperator& u) {
    const auto prod = matmul(u, adjoint(u));
    double worst = 0;
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < u.dim(); ++j)
            worst = std::max(worst, std::abs(prod.at(i, j) - Complex(i == j ? 1.0 : 0.0, 0.0)));
    return worst;
}

DenseOperator gate_operator(const GateSpec& spec) {
    validate_gate(spec);
    auto g = canonical(spec.kind, spec.param.value_or(0.0));
    if (spec.targets.size() == 2 && spec.targets[0] > spec.targets[1]) {
        const auto swap = from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
        g = matmul(swap, matmul(g, swap));
    }
    return g;
}

DenseOperator embed(const GateSpec& spec, uint32_t n) {
    const uint32_t lo = spec.first_qubit();
    const uint32_t width = static_cast<uint32_t>(spec.targets.size());
    if (lo + width > n) {
        throw std::invalid_argument("gate outside register");
    }
    const auto above = DenseOperator::identity(std::size_t{1} << lo);
    const auto below = DenseOperator::identity(std::size_t{1} << (n - lo - width));
    return kron(above, kron(gate_operator(spec), below));
}

std::vector<Complex> dense_run(const Circuit& circuit, const std::vector<Complex>& initial) {
    validate_circuit(circuit);
    if (circuit.n > kMaxRunQubits) {
        throw std::invalid_argument("dense oracle limited to " + std::to_string(kMaxRunQubits) + " qubits");
    }
    if (initial.size() != (std::size_t{1} << circuit.n)) {
        throw std::invalid_argument("initial state has the wrong length");
    }
    std::vector<Complex> psi = initial;
    for (const auto& op : circuit.ops) {
        psi = oracle::apply(embed(op, circuit.n), psi);
    }
    return psi;
}

std::vector<Complex> dense_run(const Circuit& circuit) {
    std::vector<Complex> psi(std::size_t{1} << circuit.n, Complex{0, 0});
    if (circuit.initial_state.empty()) {
        psi[0] = 1;
    } else {
        for (const auto& [index, amp] : circuit.initial_state) {
            psi.at(index) = amp;
        }
    }
    return dense_run(circuit, psi);
}

DenseOperator dense_unitary(const Circuit& circuit) {
    validate_circuit(circuit);
    if (circuit.n > kMaxUnitaryQubits) {
        throw std::invalid_argument("dense unitary limited to " + std::to_string(kMaxUnitaryQubits) + " qubits");
    }
    auto u = DenseOperator::identity(std::size_t{1} << circuit.n);
    for (const auto& op : circuit.ops) {
        u = matmul(embed(op, circuit.n), u);
    }
    return u;
}

DenseOperator dense_unitary(const FusedGroup& group, uint32_t n) {
    Circuit c;
    c.n = n;
    c.ops = group.gates;
    return dense_unitary(c);
}

DenseOperator from_coo(const CooMatrix<Complex>& m) {
    DenseOperator d(m.dim());
    for (const auto& t : m.tuples()) {
        d.at(t.row, t.col) = t.val;
    }
    return d;
}

}  // namespace emms::oracle
