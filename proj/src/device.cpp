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

#include "qwalk/device.hpp"

#include "qwalk/errors.hpp"
#include "qwalk/spectra.hpp"

namespace qwalk {

namespace {

std::vector<double> effective_g_vector(const DeviceConfig& cfg) {
    auto gv = cfg.g_vector.value_or(ring_g_vector(cfg.n_modes, cfg.g));
    if (!gv.empty()) gv[0] += cfg.omega;
    return gv;
}

}  // namespace

CouplingMatrix coupling_matrix(const DeviceConfig& cfg) {
    switch (cfg.topology) {
        case Topology::cylinder:
        case Topology::moebius:
            return build_tridiagonal(cfg.n_modes, cfg.omega, cfg.g);
        case Topology::twisted_circle: {
            const auto gv = effective_g_vector(cfg);
            return build_circulant(cfg.n_modes, gv);
        }
        case Topology::custom: {
            if (!cfg.custom_g || cfg.custom_g->size() != cfg.n_modes * cfg.n_modes)
                throw ConfigError("custom topology requires an N×N custom_G");
            RealMatrix m(cfg.n_modes, cfg.n_modes);
            m.data() = *cfg.custom_g;
            for (std::size_t i = 0; i < cfg.n_modes; ++i) m(i, i) += cfg.omega;
            return CouplingMatrix(std::move(m));
        }
    }
    throw ConfigError("unknown topology");
}

EigenSystem eigensystem_for(const DeviceConfig& cfg) {
    switch (cfg.topology) {
        case Topology::cylinder:
        case Topology::moebius:
            return eigen_tridiagonal(cfg.n_modes, cfg.omega, cfg.g);
        case Topology::twisted_circle: {
            const auto gv = effective_g_vector(cfg);
            return eigen_circulant(cfg.n_modes, gv);
        }
        case Topology::custom:
            return eigen_numeric(coupling_matrix(cfg));
    }
    throw ConfigError("unknown topology");
}

Device make_device(const DeviceConfig& cfg) {
    const auto violations = validate_device(cfg);
    if (!violations.empty()) throw ConfigError("invalid device configuration:\n" + format_violations(violations));
    return Device{cfg, coupling_matrix(cfg), eigensystem_for(cfg), permutation_for(cfg)};
}

}  // namespace qwalk
