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

#include "emms/circuit.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace emms {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') {
            break;
        }
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != '#' && !std::isspace(static_cast<unsigned char>(line[j]))) {
            ++j;
        }
        tokens.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return tokens;
}

std::optional<uint64_t> parse_uint(std::string_view s) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

std::optional<double> parse_plain_double(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    // from_chars rejects a leading '+'.
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

// NUMBER | [-]pi[/NUMBER] | NUMBER*pi[/NUMBER]
std::optional<double> parse_angle(std::string_view s) {
    const auto pi_at = s.find("pi");
    if (pi_at == std::string_view::npos) {
        return parse_plain_double(s);
    }
    double factor = 1.0;
    std::string_view head = s.substr(0, pi_at);
    if (head == "-") {
        factor = -1.0;
    } else if (!head.empty()) {
        if (head.back() != '*') {
            return std::nullopt;
        }
        auto f = parse_plain_double(head.substr(0, head.size() - 1));
        if (!f) {
            return std::nullopt;
        }
        factor = *f;
    }
    std::string_view tail = s.substr(pi_at + 2);
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') {
            return std::nullopt;
        }
        auto d = parse_plain_double(tail.substr(1));
        if (!d || *d == 0.0) {
            return std::nullopt;
        }
        divisor = *d;
    }
    return factor * std::numbers::pi / divisor;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

class RandomSource {
   public:
    explicit RandomSource(uint64_t seed) : engine_(seed) {}

    uint64_t below(uint64_t bound) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
    }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

   private:
    std::mt19937_64 engine_;
};

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column),
      message_(message) {}

void validate_circuit(const Circuit& circuit) {
    if (circuit.n == 0 || circuit.n > kMaxCircuitQubits) {
        throw std::invalid_argument("circuit qubit count " + std::to_string(circuit.n) + " outside [1, " +
                                    std::to_string(kMaxCircuitQubits) + "]");
    }
    for (std::size_t k = 0; k < circuit.ops.size(); ++k) {
        const auto& op = circuit.ops[k];
        try {
            validate_gate(op);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("gate #" + std::to_string(k) + ": " + e.what());
        }
        for (auto t : op.targets) {
            if (t >= circuit.n) {
                throw std::invalid_argument("gate #" + std::to_string(k) + ": qubit " + std::to_string(t) +
                                            " out of range for " + std::to_string(circuit.n) + " qubits");
            }
        }
    }
    const uint64_t dim = uint64_t{1} << circuit.n;
    for (const auto& [index, amp] : circuit.initial_state) {
        if (index >= dim) {
            throw std::invalid_argument("initial state index " + std::to_string(index) + " out of range");
        }
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw std::invalid_argument("initial state amplitude is not finite");
        }
    }
}

Circuit parse_circuit(std::string_view text, std::string source) {
    Circuit circuit;
    bool have_header = false;
    std::size_t line_no = 0;
    auto fail = [&](std::size_t column, const std::string& message) -> ParseError {
        return ParseError(source, line_no, column, message);
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        const auto tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        const auto& head = tokens[0];

        if (head.text == "qubits") {
            if (have_header) {
                throw fail(head.column, "duplicate 'qubits' header");
            }
            if (tokens.size() != 2) {
                throw fail(head.column, "expected 'qubits <n>'");
            }
            auto n = parse_uint(tokens[1].text);
            if (!n || *n == 0 || *n > kMaxCircuitQubits) {
                throw fail(tokens[1].column, "qubit count must be an integer in [1, " +
                                                 std::to_string(kMaxCircuitQubits) + "]");
            }
            circuit.n = static_cast<uint32_t>(*n);
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw fail(head.column, "expected 'qubits <n>' before any other statement");
        }

        if (head.text == "state") {
            if (tokens.size() != 4) {
                throw fail(head.column, "expected 'state <index> <re> <im>'");
            }
            auto index = parse_uint(tokens[1].text);
            if (!index || *index >= (uint64_t{1} << circuit.n)) {
                throw fail(tokens[1].column, "state index must be an integer below 2^" + std::to_string(circuit.n));
            }
            auto re = parse_plain_double(tokens[2].text);
            if (!re) {
                throw fail(tokens[2].column, "invalid real part '" + std::string(tokens[2].text) + "'");
            }
            auto im = parse_plain_double(tokens[3].text);
            if (!im) {
                throw fail(tokens[3].column, "invalid imaginary part '" + std::string(tokens[3].text) + "'");
            }
            if (!circuit.initial_state.emplace(*index, Complex{*re, *im}).second) {
                throw fail(tokens[1].column, "duplicate state index " + std::to_string(*index));
            }
            continue;
        }

        auto kind = parse_gate_kind(head.text);
        if (!kind) {
            throw fail(head.column, "unknown gate '" + std::string(head.text) + "'");
        }
        GateSpec spec{*kind, {}, std::nullopt};
        const std::size_t arity = gate_arity(*kind);
        const std::size_t expected = 1 + arity + (is_parameterized(*kind) ? 1 : 0);
        for (std::size_t t = 0; t < arity; ++t) {
            if (1 + t >= tokens.size()) {
                throw fail(line.size() + 1, "gate '" + std::string(gate_name(*kind)) + "' expects " +
                                                std::to_string(arity) + " qubit index(es)");
            }
            const auto& tok = tokens[1 + t];
            auto q = parse_uint(tok.text);
            if (!q) {
                throw fail(tok.column, "invalid qubit index '" + std::string(tok.text) + "'");
            }
            if (*q >= circuit.n) {
                throw fail(tok.column, "qubit index " + std::string(tok.text) + " out of range for " +
                                           std::to_string(circuit.n) + " qubits");
            }
            spec.targets.push_back(static_cast<uint32_t>(*q));
        }
        if (arity == 2) {
            const auto a = spec.targets[0], b = spec.targets[1];
            if (a == b) {
                throw fail(tokens[2].column, "two-qubit gate repeats qubit " + std::to_string(a));
            }
            if ((a > b ? a - b : b - a) != 1) {
                throw fail(tokens[2].column, "two-qubit gate on non-adjacent qubits " + std::to_string(a) +
                                                 " and " + std::to_string(b));
            }
        }
        if (is_parameterized(*kind)) {
            if (tokens.size() < expected) {
                throw fail(line.size() + 1, "gate '" + std::string(gate_name(*kind)) + "' is missing its angle");
            }
            const auto& tok = tokens[1 + arity];
            auto angle = parse_angle(tok.text);
            if (!angle) {
                throw fail(tok.column, "invalid angle '" + std::string(tok.text) + "'");
            }
            spec.param = *angle;
        }
        if (tokens.size() > expected) {
            throw fail(tokens[expected].column, "unexpected token '" + std::string(tokens[expected].text) + "'");
        }
        circuit.ops.push_back(std::move(spec));
    }
    if (!have_header) {
        throw ParseError(source, line_no == 0 ? 1 : line_no, 1, "missing 'qubits <n>' header");
    }
    validate_circuit(circuit);
    return circuit;
}

std::string print_circuit(const Circuit& circuit) {
    std::ostringstream out;
    if (!circuit.name.empty()) {
        out << "# " << circuit.name << "\n";
    }
    out << "qubits " << circuit.n << "\n";
    for (const auto& op : circuit.ops) {
        out << gate_name(op.kind);
        for (auto t : op.targets) {
            out << ' ' << t;
        }
        if (op.param) {
            out << ' ' << format_double(*op.param);
        }
        out << "\n";
    }
    for (const auto& [index, amp] : circuit.initial_state) {
        out << "state " << index << ' ' << format_double(amp.real()) << ' ' << format_double(amp.imag()) << "\n";
    }
    return out.str();
}

void append_swap(Circuit& circuit, uint32_t a) {
    circuit.ops.push_back({GateKind::CX, {a, a + 1}, std::nullopt});
    circuit.ops.push_back({GateKind::CX, {a + 1, a}, std::nullopt});
    circuit.ops.push_back({GateKind::CX, {a, a + 1}, std::nullopt});
}

Circuit build_qft(uint32_t n, QftOptions options) {
    if (n < 2 || n > kMaxCircuitQubits) {
        throw std::out_of_range("QFT size " + std::to_string(n) + " outside [2, 32]");
    }
    Circuit c;
    c.n = n;
    c.name = "qft" + std::to_string(n);
    for (uint32_t q = 0; q < n; ++q) {
        c.ops.push_back({GateKind::H, {q}, std::nullopt});
        for (uint32_t k = 1; q + k < n; ++k) {
            const double angle = std::numbers::pi / std::ldexp(1.0, static_cast<int>(k));
            // Walk qubit q+k down next to q, apply, then walk it back.
            for (uint32_t a = q + k - 1; a > q; --a) {
                append_swap(c, a);
            }
            c.ops.push_back({GateKind::CP, {q, q + 1}, angle});
            for (uint32_t a = q + 1; a < q + k; ++a) {
                append_swap(c, a);
            }
        }
    }
    if (options.final_swaps) {
        for (uint32_t pass = 0; pass + 1 < n; ++pass) {
            for (uint32_t a = 0; a + 1 < n - pass; ++a) {
                append_swap(c, a);
            }
        }
    }
    return c;
}

Circuit build_ghz(uint32_t n) {
    if (n < 1 || n > kMaxCircuitQubits) {
        throw std::out_of_range("GHZ size " + std::to_string(n) + " outside [1, 32]");
    }
    Circuit c;
    c.n = n;
    c.name = "ghz" + std::to_string(n);
    c.ops.push_back({GateKind::H, {0}, std::nullopt});
    for (uint32_t q = 0; q + 1 < n; ++q) {
        c.ops.push_back({GateKind::CX, {q, q + 1}, std::nullopt});
    }
    return c;
}

Circuit build_random(uint32_t n, uint32_t depth, uint64_t seed) {
    if (n < 1 || n > kMaxCircuitQubits || depth < 1) {
        throw std::out_of_range("random circuit needs 1 <= n <= 32 and depth >= 1");
    }
    std::vector<GateKind> pool;
    for (auto k : table_gate_kinds()) {
        if (n >= 2 || gate_arity(k) == 1) {
            pool.push_back(k);
        }
    }
    RandomSource rng(seed);
    Circuit c;
    c.n = n;
    c.name = "random_n" + std::to_string(n) + "_d" + std::to_string(depth) + "_s" + std::to_string(seed);
    for (uint32_t g = 0; g < depth; ++g) {
        GateSpec spec;
        spec.kind = pool[rng.below(pool.size())];
        if (gate_arity(spec.kind) == 1) {
            spec.targets = {static_cast<uint32_t>(rng.below(n))};
        } else {
            const auto a = static_cast<uint32_t>(rng.below(n - 1));
            spec.targets = rng.below(2) == 0 ? std::vector<uint32_t>{a, a + 1} : std::vector<uint32_t>{a + 1, a};
        }
        if (is_parameterized(spec.kind)) {
            spec.param = (2.0 * rng.unit() - 1.0) * std::numbers::pi;
        }
        c.ops.push_back(std::move(spec));
    }
    return c;
}

}  // namespace emms
