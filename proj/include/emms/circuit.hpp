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

#ifndef EMMS_CIRCUIT_HPP
#define EMMS_CIRCUIT_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emms/gates.hpp"

namespace emms {

inline constexpr uint32_t kMaxCircuitQubits = 32;

/// Ordered gate list over n qubits. Qubit 0 is the most significant bit of a
/// basis-state index.
///
/// `initial_state` holds explicit starting amplitudes keyed by basis index;
/// empty means |0...0>.
struct Circuit {
    uint32_t n = 0;
    std::vector<GateSpec> ops;
    std::string name;
    std::map<uint64_t, Complex> initial_state;

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.n == b.n && a.ops == b.ops && a.initial_state == b.initial_state;
    }
};

/// Throws std::invalid_argument on any violated circuit invariant.
void validate_circuit(const Circuit& circuit);

class ParseError : public std::runtime_error {
   public:
    ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message);

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    /// Bare message without the "source:line:col:" prefix.
    const std::string& message() const { return message_; }

   private:
    std::string source_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

/// Parses the `.qc` text format:
///
///     # comment
///     qubits 3
///     h 0
///     cx 0 1
///     rz 2 1.5707963267948966
///     state 0 0.7071067811865476 0
///     state 7 0.7071067811865476 0
///
/// One statement per line. The `qubits` header must precede every gate and
/// state line. Throws ParseError with 1-based line/column on failure.
Circuit parse_circuit(std::string_view text, std::string source = "<input>");

/// Serializes back to the `.qc` format; parse_circuit(print_circuit(c)) == c.
std::string print_circuit(const Circuit& circuit);

struct QftOptions {
    /// Append the qubit-reversal network so the output is in natural order.
    bool final_swaps = false;
};

/// QFT without the final reversal by default: for each qubit q, H on q then
/// CP(pi/2^k) between q and q+k. Non-adjacent CP pairs are brought together by
/// adjacent SWAPs (three CX each) and moved back afterwards.
/// Requires 2 <= n <= 32.
Circuit build_qft(uint32_t n, QftOptions options = {});

/// H on 0 followed by a CX ladder.
Circuit build_ghz(uint32_t n);

/// Deterministic random circuit of `depth` gates drawn uniformly from the
/// table gate set. Independent of the standard library's distribution
/// implementations, so golden outputs are portable.
Circuit build_random(uint32_t n, uint32_t depth, uint64_t seed);

/// Appends the three-CX SWAP of adjacent qubits a and a+1.
void append_swap(Circuit& circuit, uint32_t a);

}  // namespace emms

#endif  // EMMS_CIRCUIT_HPP
