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

#ifndef EMMS_ORACLE_HPP
#define EMMS_ORACLE_HPP

// Dense double-precision reference simulator. Deliberately naive and
// independent of the COO kernels and the gate table: gate matrices are
// rebuilt here from their closed forms.

#include <cstdint>
#include <vector>

#include "emms/circuit.hpp"
#include "emms/coo.hpp"
#include "emms/fusion.hpp"

namespace emms::oracle {

inline constexpr uint32_t kMaxRunQubits = 14;
inline constexpr uint32_t kMaxUnitaryQubits = 10;

class DenseOperator {
   public:
    explicit DenseOperator(std::size_t dim);
    static DenseOperator identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Complex& at(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

   private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
DenseOperator matmul(const DenseOperator& a, const DenseOperator& b);
DenseOperator adjoint(const DenseOperator& a);
std::vector<Complex> apply(const DenseOperator& u, const std::vector<Complex>& psi);

/// max |(U U^dagger - I)_{ij}|
double unitarity_error(const DenseOperator& u);

/// 2x2 or 4x4 matrix of one gate application, orientation included.
DenseOperator gate_operator(const GateSpec& spec);

/// Full 2^n operator of one gate: I (x) g (x) I.
DenseOperator embed(const GateSpec& spec, uint32_t n);

/// Reference evolution; requires n <= 14.
std::vector<Complex> dense_run(const Circuit& circuit, const std::vector<Complex>& initial);
/// Reference evolution from the circuit's own initial state.
std::vector<Complex> dense_run(const Circuit& circuit);

/// Product of all gate operators (later gates on the left); requires n <= 10.
DenseOperator dense_unitary(const Circuit& circuit);
DenseOperator dense_unitary(const FusedGroup& group, uint32_t n);

/// Dense copy of a COO operator.
DenseOperator from_coo(const CooMatrix<Complex>& m);

}  // namespace emms::oracle

#endif  // EMMS_ORACLE_HPP
