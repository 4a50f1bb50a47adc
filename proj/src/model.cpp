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

#include "qwalk/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

CouplingMatrix::CouplingMatrix(RealMatrix g) : g_(std::move(g)) {
    if (!g_.square() || g_.rows() == 0) throw ConfigError("coupling matrix must be square and non-empty");
    for (std::size_t r = 0; r < g_.rows(); ++r) {
        for (std::size_t c = 0; c < g_.cols(); ++c) {
            if (!std::isfinite(g_(r, c))) throw ConfigError("coupling matrix has a non-finite entry");
            if (g_(r, c) != g_(c, r)) throw ConfigError("coupling matrix is not symmetric");
        }
    }
}

RealMatrix reconstruct(const EigenSystem& es) {
    const std::size_t n = es.size();
    RealMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex acc = 0.0;
            for (std::size_t p = 0; p < n; ++p)
                acc += es.eigenvectors(r, p) * es.eigenvalues[p] * std::conj(es.eigenvectors(c, p));
            out(r, c) = acc.real();
        }
    }
    return out;
}

double reconstruction_residual(const EigenSystem& es, const CouplingMatrix& g) {
    const std::size_t n = es.size();
    if (g.n_modes() != n) throw PreconditionError("eigensystem / coupling matrix size mismatch");
    double worst = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Complex acc = 0.0;
            for (std::size_t p = 0; p < n; ++p)
                acc += es.eigenvectors(r, p) * es.eigenvalues[p] * std::conj(es.eigenvectors(c, p));
            worst = std::max(worst, std::abs(acc - g.matrix()(r, c)));
        }
    }
    return worst;
}

double unitarity_residual(const EigenSystem& es) {
    const std::size_t n = es.size();
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                acc += std::conj(es.eigenvectors(r, a)) * es.eigenvectors(r, b);
            worst = std::max(worst, std::abs(acc - (a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (auto v : map_) {
        if (v < 1 || v > map_.size() || seen[v - 1])
            throw ConfigError("permutation is not a bijection on 1..N");
        seen[v - 1] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t j = 0; j < n; ++j) m[j] = j + 1;
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t j = 0; j < map_.size(); ++j) inv[map_[j] - 1] = j + 1;
    return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& other) const {
    if (other.size() != size()) throw PreconditionError("permutation size mismatch");
    std::vector<std::size_t> out(map_.size());
    for (std::size_t j = 1; j <= map_.size(); ++j) out[j - 1] = (*this)(other(j));
    return Permutation(std::move(out));
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t j = 0; j < map_.size(); ++j)
        if (map_[j] != j + 1) return false;
    return true;
}

std::string_view to_string(Topology t) noexcept {
    switch (t) {
        case Topology::cylinder: return "cylinder";
        case Topology::moebius: return "moebius";
        case Topology::twisted_circle: return "twisted_circle";
        case Topology::custom: return "custom";
    }
    return "unknown";
}

Topology topology_from_string(std::string_view name) {
    if (name == "cylinder") return Topology::cylinder;
    if (name == "moebius") return Topology::moebius;
    if (name == "twisted_circle") return Topology::twisted_circle;
    if (name == "custom") return Topology::custom;
    throw ConfigError("unknown topology '" + std::string(name) + "'");
}

std::vector<double> DeviceConfig::thetas() const {
    if (theta.size() == 1) return std::vector<double>(n_modes, theta.front());
    return theta;
}

bool DeviceConfig::uniform_theta() const noexcept {
    return std::all_of(theta.begin(), theta.end(), [&](double t) { return t == theta.front(); });
}

std::vector<double> ring_g_vector(std::size_t n, double g) {
    std::vector<double> v(n, 0.0);
    if (n >= 2) {
        v[1] = g;
        v[n - 1] = g;
    }
    return v;
}

namespace {

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<Violation> validate_device(const DeviceConfig& cfg) {
    std::vector<Violation> out;
    auto add = [&](std::string rule, std::string msg) { out.push_back({std::move(rule), std::move(msg)}); };
    const std::size_t n = cfg.n_modes;

    if (n < 1) add("mode count", "n_modes must be at least 1");
    if (cfg.theta.size() != 1 && cfg.theta.size() != n)
        add("coupler angle count", "theta must be a single value or one value per guide");
    for (std::size_t i = 0; i < cfg.theta.size(); ++i) {
        const double t = cfg.theta[i];
        if (!(t >= 0.0 && t <= std::numbers::pi / 2))
            add("coupler angle range", "theta[" + std::to_string(i + 1) + "] = " + std::to_string(t) +
                                           " is outside [0, pi/2]");
    }
    if (!(std::isfinite(cfg.tau) && cfg.tau > 0.0)) add("transit time", "tau must be finite and > 0");
    if (!std::isfinite(cfg.omega)) add("frequency", "omega must be finite");
    if (!std::isfinite(cfg.g)) add("coupling rate", "g must be finite");

    if (cfg.topology != Topology::twisted_circle) {
        if (cfg.shift_c) add("unused key", "shift_c only applies to twisted_circle");
        if (cfg.g_vector) add("unused key", "g_vector only applies to twisted_circle");
    }
    if (cfg.topology != Topology::custom) {
        if (cfg.custom_g) add("unused key", "custom_G only applies to custom");
        if (cfg.custom_perm) add("unused key", "custom_perm only applies to custom");
    }

    if (cfg.topology == Topology::twisted_circle) {
        const long long c = cfg.shift_c.value_or(0);
        if (n >= 1 && (c < 0 || c >= static_cast<long long>(n)))
            add("shift range", "shift_c must be an integer in 0..N-1");
        if (cfg.g_vector) {
            const auto& gv = *cfg.g_vector;
            if (gv.size() != n) {
                add("circulant length", "g_vector must have n_modes entries");
            } else if (!all_finite(gv)) {
                add("finite", "g_vector has a non-finite entry");
            } else {
                // g_j must equal g_{N-j+2} for every j > N/2 + 1 (1-based).
                for (std::size_t j = 1; j <= n; ++j) {
                    if (2 * j <= n + 2) continue;
                    const std::size_t mirror = n - j + 2;
                    if (gv[j - 1] != gv[mirror - 1])
                        add("circulant symmetry", "g_" + std::to_string(j) + " != g_" + std::to_string(mirror));
                }
            }
        }
    }

    if (cfg.topology == Topology::custom) {
        if (!cfg.custom_g) {
            add("custom coupling", "custom topology requires custom_G");
        } else if (cfg.custom_g->size() != n * n) {
            add("custom coupling", "custom_G must have n_modes^2 entries");
        } else {
            const auto& g = *cfg.custom_g;
            if (!all_finite(g)) add("finite", "custom_G has a non-finite entry");
            bool symmetric = true;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = r + 1; c < n; ++c)
                    if (g[r * n + c] != g[c * n + r]) symmetric = false;
            if (!symmetric) add("custom symmetry", "custom_G must be symmetric");
        }
        if (!cfg.custom_perm) {
            add("custom permutation", "custom topology requires custom_perm");
        } else {
            const auto& p = *cfg.custom_perm;
            std::vector<bool> seen(n, false);
            bool ok = p.size() == n;
            for (std::size_t i = 0; ok && i < p.size(); ++i) {
                if (p[i] < 1 || p[i] > static_cast<long long>(n) || seen[p[i] - 1])
                    ok = false;
                else
                    seen[p[i] - 1] = true;
            }
            if (!ok) add("custom permutation", "custom_perm must be a bijection on 1..N");
        }
    }
    return out;
}

std::string format_violations(const std::vector<Violation>& v) {
    std::ostringstream os;
    for (const auto& x : v) os << x.rule << ": " << x.message << '\n';
    return os.str();
}

Permutation permutation_for(const DeviceConfig& cfg) {
    const std::size_t n = cfg.n_modes;
    std::vector<std::size_t> map(n);
    switch (cfg.topology) {
        case Topology::cylinder:
            return Permutation::identity(n);
        case Topology::moebius:
            for (std::size_t j = 1; j <= n; ++j) map[j - 1] = n + 1 - j;
            return Permutation(std::move(map));
        case Topology::twisted_circle: {
            const long long c = cfg.shift_c.value_or(0);
            if (c < 0 || c >= static_cast<long long>(n)) throw ConfigError("shift_c must be an integer in 0..N-1");
            for (std::size_t j = 1; j <= n; ++j) map[j - 1] = (j - 1 + static_cast<std::size_t>(c)) % n + 1;
            return Permutation(std::move(map));
        }
        case Topology::custom: {
            if (!cfg.custom_perm) throw ConfigError("custom topology requires custom_perm");
            for (std::size_t j = 0; j < cfg.custom_perm->size(); ++j) {
                const long long v = (*cfg.custom_perm)[j];
                if (v < 1) throw ConfigError("permutation is not a bijection on 1..N");
                if (j < n) map[j] = static_cast<std::size_t>(v);
            }
            if (cfg.custom_perm->size() != n) throw ConfigError("custom_perm must have n_modes entries");
            return Permutation(std::move(map));
        }
    }
    throw ConfigError("unknown topology");
}

std::string_view to_string(CorrelationKind k) noexcept {
    return k == CorrelationKind::quantum ? "quantum" : "classical";
}

CorrelationKind correlation_kind_from_string(std::string_view name) {
    if (name == "quantum") return CorrelationKind::quantum;
    if (name == "classical") return CorrelationKind::classical;
    throw ConfigError("unknown correlation kind '" + std::string(name) + "'");
}

double CorrelationMatrix::total() const {
    double sum = 0.0;
    for (std::size_t r = 0; r < values.rows(); ++r)
        for (std::size_t s = r; s < values.cols(); ++s) sum += values(r, s);
    return sum;
}

}  // namespace qwalk
