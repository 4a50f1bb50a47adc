/*
 * Copyright 2026 The qwalk Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "qwalk/errors.hpp"
#include "qwalk/model.hpp"

namespace qwalk {

/// Single-photon Heisenberg propagator, a_j(t) = sum_k U_{j,k}(t) a_k(0).
struct TransferMatrix {
    double t = 0.0;
    ComplexMatrix u;

    /// 1-based element U_{j,k}(t).
    Complex at(std::size_t j, std::size_t k) const { return u(j - 1, k - 1); }
};

/// U(t) = V exp(-i Lambda t) V^dagger, summed spectrally.
TransferMatrix transfer_matrix(const EigenSystem& es, double t);

/// n-fold composition p_n; negative n composes the inverse |n| times.
Permutation compose(const Permutation& p, long long n);

enum class PermuteSide { rows, cols, both };

/// Relabel matrix indices through p: M'_{r,s} = M_{p^-1(r), p^-1(s)} for
/// `both`; `rows` / `cols` relabel one index only.
template <typename T>
Matrix<T> permute_modes(const Matrix<T>& m, const Permutation& p, PermuteSide side) {
    const bool rows = side != PermuteSide::cols;
    const bool cols = side != PermuteSide::rows;
    if ((rows && m.rows() != p.size()) || (cols && m.cols() != p.size()))
        throw PreconditionError("permute_modes: dimension mismatch");
    const Permutation inv = p.inverse();
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t r = 1; r <= m.rows(); ++r) {
        const std::size_t src_r = rows ? inv(r) : r;
        for (std::size_t s = 1; s <= m.cols(); ++s) {
            const std::size_t src_s = cols ? inv(s) : s;
            out(r - 1, s - 1) = m(src_r - 1, src_s - 1);
        }
    }
    return out;
}

}  // namespace qwalk
