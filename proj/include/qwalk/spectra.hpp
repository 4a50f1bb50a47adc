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

#include <cstddef>
#include <span>

#include "qwalk/model.hpp"

namespace qwalk {

/// Open-boundary nearest-neighbour array: omega on the diagonal, g on the
/// first off-diagonals.
CouplingMatrix build_tridiagonal(std::size_t n, double omega, double g);

/// Circulant coupling matrix, G_{r,c} = g_{c-r+1 mod N}. Throws ConfigError
/// if the vector length differs from N or g_j != g_{N-j+2} for j > N/2 + 1.
CouplingMatrix build_circulant(std::size_t n, std::span<const double> g_vector);

/// Closed-form eigensystem of build_tridiagonal(n, omega, g), columns in
/// index order j = 1..N: lambda_j = omega + 2g cos(j pi / (N+1)).
EigenSystem eigen_tridiagonal(std::size_t n, double omega, double g);

/// DFT eigensystem of build_circulant(n, g_vector), columns in index order.
EigenSystem eigen_circulant(std::size_t n, std::span<const double> g_vector);

struct JacobiOptions {
    int max_sweeps = 100;
};

/// Cyclic Jacobi diagonalization. Eigenvalues ascending; eigenvectors real.
/// Throws NumericError if the off-diagonal mass does not vanish within the
/// sweep budget.
EigenSystem eigen_numeric(const CouplingMatrix& g, JacobiOptions opts = {});

}  // namespace qwalk
