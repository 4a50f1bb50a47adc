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

// Brute-force simulation of the full device on the exact few-photon Fock
// space over 2N modes: array modes a_1..a_N (indices 0..N-1) followed by the
// input/output modes b_1..b_N (indices N..2N-1).
//
// Deliberately independent of spectra/propagate: the coupling matrix is
// assembled from the Hamiltonian definitions and exponentiated by a scaled
// Taylor series.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "qwalk/model.hpp"

namespace qwalk::oracle {

/// Pure state with a fixed photon number (0, 1 or 2). Two-photon amplitudes
/// are stored in lexicographic order over unordered mode pairs m1 <= m2 and
/// refer to the normalized occupation states |1_m1 1_m2> / |2_m>.
class FockState {
public:
    static FockState vacuum(std::size_t n_array);
    /// Normalized c_x^dagger c_y^dagger |0>, c_x^dagger = sum_k x_k a_k^dagger.
    static FockState from_array_modes(std::size_t n_array, std::span<const Complex> x, std::span<const Complex> y);

    std::size_t n_array() const noexcept { return n_array_; }
    std::size_t n_modes() const noexcept { return 2 * n_array_; }
    int photons() const noexcept { return photons_; }
    const ComplexVector& amplitudes() const noexcept { return amps_; }
    ComplexVector& amplitudes() noexcept { return amps_; }
    double norm2() const;

    /// Amplitude on |1_m1 1_m2> (or |2_m> when equal); 0-based modes.
    Complex pair_amplitude(std::size_t m1, std::size_t m2) const;
    /// True if any basis state with nonzero amplitude occupies `mode`.
    bool occupied(std::size_t mode) const;

private:
    FockState(std::size_t n_array, int photons, ComplexVector amps)
        : n_array_(n_array), photons_(photons), amps_(std::move(amps)) {}
    friend class StateOps;

    std::size_t n_array_ = 0;
    int photons_ = 0;
    ComplexVector amps_;
};

/// Lexicographic index of the unordered pair (m1 <= m2) among `modes` modes.
std::size_t pair_index(std::size_t m1, std::size_t m2, std::size_t modes);
std::size_t pair_dimension(std::size_t modes);

struct Evolve {
    double tau;
};
struct Permute {
    Permutation perm;
};
struct Couple {
    std::vector<double> theta;
};
/// Measure the b modes and keep the all-vacuum outcome. With `condition` the
/// kept state is renormalized (a post-selection); otherwise it stays
/// sub-normalized. Either way the probability is recorded.
struct ProjectBVacuum {
    bool condition = false;
};
/// Add one photon to b_mode (1-based).
struct InjectB {
    std::size_t mode;
};

using PipelineStep = std::variant<Evolve, Permute, Couple, ProjectBVacuum, InjectB>;

/// Coupling matrix assembled directly from the Hamiltonian definitions.
RealMatrix hamiltonian_matrix(const DeviceConfig& cfg);

/// exp(-i G t) by scaling and squaring of a truncated Taylor series.
ComplexMatrix expm_series(const RealMatrix& g, double t);

/// Single-particle map S over all 2N modes, a_i^dagger -> sum_o S(o, i) a_o^dagger,
/// for Evolve / Permute / Couple. Throws PreconditionError for other steps or
/// out-of-range operands.
ComplexMatrix single_particle_step_matrix(const PipelineStep& step, const DeviceConfig& cfg);

/// Explicit action of S on the symmetric two-photon subspace, in FockState's
/// pair basis: entries are 2×2 permanents with sqrt(2) corrections for
/// doubly occupied modes.
ComplexMatrix lift_to_two_photon(const ComplexMatrix& single);

/// Apply a single-particle map to a state of any supported photon number.
FockState apply(const ComplexMatrix& single, const FockState& state);

struct PipelineRecord {
    /// Index of the ProjectBVacuum step in the schedule.
    std::size_t step_index = 0;
    /// Unrenormalized b-mode coincidence distribution, full N×N symmetric.
    RealMatrix coincidences;
    /// Probability that the b modes were found empty.
    double survival = 0.0;
    /// Product of all survival probabilities so far.
    double cumulative_postselection = 1.0;
    /// In-array state after the projection.
    FockState surviving = FockState::vacuum(0);
};

struct PipelineResult {
    std::vector<PipelineRecord> records;
    FockState final_state = FockState::vacuum(0);
};

/// Run `schedule` from `initial`. One record per ProjectBVacuum step. Throws
/// PreconditionError unless exactly two photons are present after all
/// injections, or when a photon is injected into an occupied b mode after the
/// evolution has started.
PipelineResult run_pipeline(const DeviceConfig& cfg, std::span<const PipelineStep> schedule, FockState initial);
PipelineResult run_pipeline(const DeviceConfig& cfg, std::span<const PipelineStep> schedule);

/// `count` transits: Evolve, Permute, Couple, ProjectBVacuum(no condition).
std::vector<PipelineStep> transit_steps(const DeviceConfig& cfg, int count);

/// Inject into b_j and b_k, couple into the array, post-select entry, then
/// `count` transits.
std::vector<PipelineStep> simultaneous_schedule(const DeviceConfig& cfg, std::size_t j, std::size_t k, int count);

/// Inject b_j and post-select its entry; for n_d transits condition on the
/// photon staying inside, injecting b_k before the last of those couplers;
/// then `count` recorded transits.
std::vector<PipelineStep> delayed_schedule(const DeviceConfig& cfg, std::size_t j, std::size_t k, int n_d, int count);

/// Convenience: oracle correlation matrices for n = 1..count after the photon
/// pair is inside the array, plus the entry post-selection probability.
struct OracleRun {
    double entry_probability = 0.0;
    std::vector<CorrelationMatrix> steps;
};
OracleRun oracle_correlations(const DeviceConfig& cfg, std::size_t j, std::size_t k, int n_d, int count);

}  // namespace qwalk::oracle
