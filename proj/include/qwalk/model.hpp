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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/matrix.hpp"

namespace qwalk {

/// Real symmetric matrix of inter-waveguide coupling rates. Diagonal entries
/// hold the on-site frequencies. Immutable once constructed.
class CouplingMatrix {
public:
    /// Throws ConfigError unless `g` is square, exactly symmetric and finite.
    explicit CouplingMatrix(RealMatrix g);

    std::size_t n_modes() const noexcept { return g_.rows(); }
    const RealMatrix& matrix() const noexcept { return g_; }

    /// 1-based entry G_{n,m}.
    double at(std::size_t n, std::size_t m) const { return g_(n - 1, m - 1); }

private:
    RealMatrix g_;
};

/// Eigen-decomposition G = V diag(eigenvalues) V^dagger. Column k of
/// `eigenvectors` is the k-th eigenvector; no ordering is implied.
struct EigenSystem {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    std::size_t size() const noexcept { return eigenvalues.size(); }
    /// 1-based element v_{j,k}: row j of eigenvector k.
    Complex v(std::size_t j, std::size_t k) const { return eigenvectors(j - 1, k - 1); }
};

/// max |V diag(lambda) V^dagger - G|.
double reconstruction_residual(const EigenSystem& es, const CouplingMatrix& g);
/// max |V^dagger V - I|.
double unitarity_residual(const EigenSystem& es);
/// Real part of V diag(lambda) V^dagger.
RealMatrix reconstruct(const EigenSystem& es);

/// Bijection on mode labels 1..N, p(j) = map[j-1].
class Permutation {
public:
    Permutation() = default;
    /// Throws ConfigError if `map` is not a bijection on 1..N.
    explicit Permutation(std::vector<std::size_t> map);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator()(std::size_t j) const { return map_[j - 1]; }
    const std::vector<std::size_t>& map() const noexcept { return map_; }

    Permutation inverse() const;
    /// (this ∘ other)(j) = this(other(j)).
    Permutation after(const Permutation& other) const;
    bool is_identity() const noexcept;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> map_;
};

enum class Topology { cylinder, moebius, twisted_circle, custom };

std::string_view to_string(Topology t) noexcept;
/// Throws ConfigError for unknown names.
Topology topology_from_string(std::string_view name);

/// Everything needed to describe one experiment.
struct DeviceConfig {
    Topology topology = Topology::cylinder;
    std::size_t n_modes = 1;
    /// Coupler angle per guide (radians). A single entry means every guide
    /// uses the same angle.
    std::vector<double> theta{0.7853981633974483};
    double tau = 1.0;
    double omega = 0.0;
    /// Nearest-neighbour rate for the open-boundary (cylinder / moebius) array.
    double g = 1.0;
    std::optional<long long> shift_c;
    std::optional<std::vector<double>> g_vector;
    /// Row-major N×N coupling matrix for the custom topology.
    std::optional<std::vector<double>> custom_g;
    std::optional<std::vector<long long>> custom_perm;

    /// Angles expanded to one entry per guide.
    std::vector<double> thetas() const;
    bool uniform_theta() const noexcept;
};

/// Default circulant vector: nearest-neighbour ring with rate `g`.
std::vector<double> ring_g_vector(std::size_t n, double g);

struct Violation {
    std::string rule;
    std::string message;
};

/// Every violated invariant of `cfg`; empty when valid.
std::vector<Violation> validate_device(const DeviceConfig& cfg);

/// Human-readable multi-line report of violations.
std::string format_violations(const std::vector<Violation>& v);

/// Mode permutation induced by one transit of the loop.
Permutation permutation_for(const DeviceConfig& cfg);

enum class CorrelationKind { quantum, classical };
std::string_view to_string(CorrelationKind k) noexcept;
CorrelationKind correlation_kind_from_string(std::string_view name);

/// Coincidence probabilities over output pairs (r, s) at one discrete time.
struct CorrelationMatrix {
    RealMatrix values;
    int step = 0;
    int delay = 0;
    std::size_t input_j = 1;
    std::size_t input_k = 1;
    CorrelationKind kind = CorrelationKind::quantum;
    bool rescaled = false;

    std::size_t n_modes() const noexcept { return values.rows(); }
    double at(std::size_t r, std::size_t s) const { return values(r - 1, s - 1); }
    /// Sum over unordered pairs r <= s.
    double total() const;
};

}  // namespace qwalk
