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

#ifndef EMMS_COO_HPP
#define EMMS_COO_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "emms/scalar.hpp"

namespace emms {

inline constexpr uint64_t kMaxCooDim = uint64_t{1} << 32;

template <Scalar T>
struct CooTuple {
    uint32_t row;
    uint32_t col;
    T val;

    friend bool operator==(const CooTuple&, const CooTuple&) = default;
};

/// Square sparse operator stored as (row, col, value) tuples.
///
/// Tuples are kept sorted row-major with no duplicate coordinates and no
/// exact zeros. The constructor normalizes arbitrary input into that form:
/// duplicates are merged by summation and zero results dropped.
template <Scalar T>
class CooMatrix {
   public:
    using Tuple = CooTuple<T>;

    CooMatrix() : dim_(1) {}

    CooMatrix(uint64_t dim, std::vector<Tuple> tuples) : dim_(dim) {
        check_dim(dim);
        for (const auto& t : tuples) {
            if (t.row >= dim || t.col >= dim) {
                throw std::out_of_range("COO tuple (" + std::to_string(t.row) + ", " +
                                        std::to_string(t.col) + ") outside dimension " +
                                        std::to_string(dim));
            }
        }
        std::stable_sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        tuples_.reserve(tuples.size());
        for (const auto& t : tuples) {
            if (!tuples_.empty() && tuples_.back().row == t.row && tuples_.back().col == t.col) {
                tuples_.back().val = ScalarTraits<T>::add(tuples_.back().val, t.val);
            } else {
                tuples_.push_back(t);
            }
        }
        std::erase_if(tuples_, [](const Tuple& t) { return ScalarTraits<T>::is_zero(t.val); });
    }

    static CooMatrix identity(uint64_t dim) {
        check_dim(dim);
        CooMatrix m;
        m.dim_ = dim;
        m.tuples_.reserve(dim);
        for (uint64_t i = 0; i < dim; ++i) {
            m.tuples_.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(i), ScalarTraits<T>::one()});
        }
        return m;
    }

    /// Wraps tuples the caller guarantees are already normalized.
    static CooMatrix from_sorted(uint64_t dim, std::vector<Tuple> tuples) {
        CooMatrix m;
        m.dim_ = dim;
        m.tuples_ = std::move(tuples);
        return m;
    }

    uint64_t dim() const { return dim_; }
    std::size_t nnz() const { return tuples_.size(); }
    const std::vector<Tuple>& tuples() const { return tuples_; }

    /// Largest number of non-zeros found in any single row.
    std::size_t max_row_nnz() const {
        std::size_t best = 0, run = 0;
        for (std::size_t k = 0; k < tuples_.size(); ++k) {
            run = (k > 0 && tuples_[k].row == tuples_[k - 1].row) ? run + 1 : 1;
            best = std::max(best, run);
        }
        return best;
    }

    /// True when every row holds exactly one non-zero.
    bool is_unit_row() const {
        if (tuples_.size() != dim_) {
            return false;
        }
        for (std::size_t k = 0; k < tuples_.size(); ++k) {
            if (tuples_[k].row != k) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const CooMatrix&, const CooMatrix&) = default;

   private:
    static void check_dim(uint64_t dim) {
        if (dim == 0 || dim > kMaxCooDim || !std::has_single_bit(dim)) {
            throw std::invalid_argument("COO dimension " + std::to_string(dim) +
                                        " is not a power of two in [1, 2^32]");
        }
    }

    uint64_t dim_;
    std::vector<Tuple> tuples_;
};

/// Dense 2^n amplitude vector.
template <Scalar T>
class StateVector {
   public:
    StateVector() : StateVector(0) {}

    /// |0...0> on n qubits.
    explicit StateVector(uint32_t n) : n_(n) {
        check_n(n);
        amps_.assign(std::size_t{1} << n, ScalarTraits<T>::zero());
        amps_[0] = ScalarTraits<T>::one();
    }

    StateVector(uint32_t n, std::vector<T> amps) : n_(n), amps_(std::move(amps)) {
        check_n(n);
        if (amps_.size() != (std::size_t{1} << n)) {
            throw std::invalid_argument("state vector of " + std::to_string(amps_.size()) +
                                        " amplitudes does not match " + std::to_string(n) + " qubits");
        }
    }

    static StateVector basis(uint32_t n, uint64_t index) {
        StateVector s(n);
        if (index >= s.size()) {
            throw std::out_of_range("basis index " + std::to_string(index) + " out of range");
        }
        s.amps_[0] = ScalarTraits<T>::zero();
        s.amps_[index] = ScalarTraits<T>::one();
        return s;
    }

    uint32_t n() const { return n_; }
    std::size_t size() const { return amps_.size(); }
    std::span<const T> amps() const { return amps_; }
    std::span<T> amps() { return amps_; }
    const T& operator[](std::size_t i) const { return amps_[i]; }
    T& operator[](std::size_t i) { return amps_[i]; }

    bool overflowed() const {
        return std::any_of(amps_.begin(), amps_.end(), [](const T& a) { return ScalarTraits<T>::overflowed(a); });
    }

    friend bool operator==(const StateVector&, const StateVector&) = default;

   private:
    static void check_n(uint32_t n) {
        if (n > 40) {
            throw std::invalid_argument("state vector of " + std::to_string(n) + " qubits is too large");
        }
    }

    uint32_t n_;
    std::vector<T> amps_;
};

/// Kronecker product g (x) h. The entry built from g(i,j) and h(k,l) lands at
/// (i*|h| + k, j*|h| + l). Tuples are emitted directly in row-major order.
///
/// Throws std::length_error when the result would exceed dimension 2^32.
template <Scalar T>
CooMatrix<T> tensor_product(const CooMatrix<T>& g, const CooMatrix<T>& h) {
    if (g.dim() > kMaxCooDim / h.dim()) {
        throw std::length_error("tensor product dimension " + std::to_string(g.dim()) + " x " +
                                std::to_string(h.dim()) + " exceeds 2^32");
    }
    const uint64_t hd = h.dim();
    const auto& gt = g.tuples();
    const auto& ht = h.tuples();
    std::vector<CooTuple<T>> out;
    out.reserve(gt.size() * ht.size());

    // Walk row runs of g and h so the output is already sorted.
    for (std::size_t gb = 0; gb < gt.size();) {
        std::size_t ge = gb;
        while (ge < gt.size() && gt[ge].row == gt[gb].row) ++ge;
        for (std::size_t hb = 0; hb < ht.size();) {
            std::size_t he = hb;
            while (he < ht.size() && ht[he].row == ht[hb].row) ++he;
            const auto row = static_cast<uint32_t>(gt[gb].row * hd + ht[hb].row);
            for (std::size_t a = gb; a < ge; ++a) {
                for (std::size_t b = hb; b < he; ++b) {
                    auto v = ScalarTraits<T>::mul(gt[a].val, ht[b].val);
                    if (!ScalarTraits<T>::is_zero(v)) {
                        out.push_back({row, static_cast<uint32_t>(gt[a].col * hd + ht[b].col), v});
                    }
                }
            }
            hb = he;
        }
        gb = ge;
    }
    return CooMatrix<T>::from_sorted(g.dim() * hd, std::move(out));
}

/// Multiplies every stored value by c.
template <Scalar T>
CooMatrix<T> scale(const CooMatrix<T>& m, const T& c) {
    std::vector<CooTuple<T>> out;
    out.reserve(m.nnz());
    for (const auto& t : m.tuples()) {
        auto v = ScalarTraits<T>::mul(c, t.val);
        if (!ScalarTraits<T>::is_zero(v)) {
            out.push_back({t.row, t.col, v});
        }
    }
    return CooMatrix<T>::from_sorted(m.dim(), std::move(out));
}

/// out = U * in over raw spans. Each output row accumulates its products in
/// ascending column order and is rounded once, so results do not depend on
/// how rows are split across workers.
template <Scalar T>
void matvec_into(const CooMatrix<T>& u, std::span<const T> in, std::span<T> out) {
    if (in.size() != u.dim() || out.size() != u.dim()) {
        throw std::invalid_argument("matvec shape mismatch: operator dim " + std::to_string(u.dim()) +
                                    ", input " + std::to_string(in.size()) + ", output " +
                                    std::to_string(out.size()));
    }
    std::fill(out.begin(), out.end(), ScalarTraits<T>::zero());
    const auto& tuples = u.tuples();
    for (std::size_t k = 0; k < tuples.size();) {
        const uint32_t row = tuples[k].row;
        typename ScalarTraits<T>::Accumulator acc;
        for (; k < tuples.size() && tuples[k].row == row; ++k) {
            acc.mac(tuples[k].val, in[tuples[k].col]);
        }
        out[row] = acc.finish();
    }
}

template <Scalar T>
StateVector<T> matvec(const CooMatrix<T>& u, const StateVector<T>& psi) {
    if (u.dim() != psi.size()) {
        throw std::invalid_argument("matvec shape mismatch: operator dim " + std::to_string(u.dim()) +
                                    " vs state of " + std::to_string(psi.n()) + " qubits");
    }
    StateVector<T> out(psi.n());
    matvec_into<T>(u, psi.amps(), out.amps());
    return out;
}

template <Scalar T>
using DenseRows = std::vector<std::vector<T>>;

/// Drops exact zeros only. Throws std::invalid_argument on non-square or
/// non-power-of-two input.
template <Scalar T>
CooMatrix<T> coo_from_dense(const DenseRows<T>& dense) {
    const std::size_t dim = dense.size();
    for (const auto& row : dense) {
        if (row.size() != dim) {
            throw std::invalid_argument("dense matrix is not square");
        }
    }
    std::vector<CooTuple<T>> tuples;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (!ScalarTraits<T>::is_zero(dense[i][j])) {
                tuples.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), dense[i][j]});
            }
        }
    }
    return CooMatrix<T>(dim, std::move(tuples));
}

template <Scalar T>
DenseRows<T> dense_from_coo(const CooMatrix<T>& m) {
    DenseRows<T> dense(m.dim(), std::vector<T>(m.dim(), ScalarTraits<T>::zero()));
    for (const auto& t : m.tuples()) {
        dense[t.row][t.col] = t.val;
    }
    return dense;
}

}  // namespace emms

#endif  // EMMS_COO_HPP
