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
#include <vector>

#include "qwalk/model.hpp"

namespace qwalk {

/// Probability that a post-selected photon pair survives n-1 coupler passes
/// and then both exit: cos^{4(n-1)}(theta) sin^4(theta).
double coupler_prefactor(double theta, int n);

/// The shared angle of a uniform coupler array. Throws UnsupportedConfigError
/// for an empty or non-uniform array.
double uniform_theta(std::span<const double> theta);

/// Quantum two-photon correlation at t = n tau for simultaneous input into
/// guides j and k. n = 0 is accepted only with `rescaled` and yields the input
/// snapshot. Requires the permutation to be a symmetry of the coupling matrix
/// (otherwise the per-transit propagators do not collapse to U(n tau)).
CorrelationMatrix gamma_simultaneous(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                                     double tau, int n, std::size_t j, std::size_t k, bool rescaled);

/// gamma_simultaneous with n = 1, physical scale.
CorrelationMatrix gamma_one_step(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                                 double tau, std::size_t j, std::size_t k);

/// Distinguishable-particle counterpart: moduli are squared before adding.
CorrelationMatrix classical_p(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                              double tau, int n, std::size_t j, std::size_t k, bool rescaled);

/// Correlation n transits after the second photon (guide k) was injected,
/// n_d transits after the first (guide j). The normalization cos^{4(n-1)} sin^4
/// / (1 + delta_rs) is applied as written; it ignores the first photon's
/// extra coupler passes and any overlap of the two wavepackets at injection.
CorrelationMatrix gamma_delayed(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                                double tau, int n, int n_d, std::size_t j, std::size_t k, bool rescaled);

/// arccos(sqrt((n-1)/n)), the maximizer of coupler_prefactor over [0, pi/2].
double optimal_theta(int n);

/// Relabeling that maps the reference device's correlation matrix (same local
/// Hamiltonian, no permutation) onto this topology's at step n:
/// Gamma_topology = permute_modes(Gamma_reference, symmetry_map(cfg, n), both).
/// Only moebius and twisted_circle are supported.
Permutation symmetry_map(const DeviceConfig& cfg, int n);

struct InvarianceOptions {
    /// Entrywise tolerance on v_{p^-1(k)} - v_k.
    double tol = 1e-9;
    /// Eigenvalues closer than this times max|lambda| form one cluster.
    double degeneracy = 1e-9;
};

/// One eigenvalue cluster and its permutation-invariant part.
struct ModeCluster {
    double eigenvalue = 0.0;
    /// 1-based eigenvector (column) indices that make up the cluster.
    std::vector<std::size_t> modes;
    /// Orthonormal basis of the invariant subspace of the cluster's eigenspace.
    std::vector<ComplexVector> invariant_basis;

    bool degenerate() const noexcept { return modes.size() > 1; }
    bool invariant() const noexcept { return !invariant_basis.empty(); }
};

/// Simultaneous eigenmodes of the coupling matrix and the transit permutation.
std::vector<ModeCluster> invariant_modes(const EigenSystem& es, const Permutation& p, InvarianceOptions opts = {});

struct InvarianceCheck {
    bool constant = false;
    /// Largest entrywise deviation of any step's rescaled matrix from step 1.
    double max_deviation = 0.0;
    /// Rescaled correlation for n = 1..steps.
    std::vector<RealMatrix> rescaled;
};

/// Launch one photon in each of the normal modes `x` and `y` (directly inside
/// the array), run the oracle for `steps` transits and test whether the
/// rescaled correlation is identical at every step. Throws PreconditionError
/// if either vector is not a normal mode of the coupling matrix or the angle
/// makes the rescaling undefined.
InvarianceCheck two_photon_invariant_check(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                                           double tau, std::span<const Complex> x, std::span<const Complex> y,
                                           int steps = 4, double tol = 1e-9);

}  // namespace qwalk
