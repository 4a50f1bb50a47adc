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

#include "qwalk/model.hpp"

namespace qwalk {

/// Coupling matrix of the local Hamiltonian described by `cfg`. omega is
/// added to every diagonal entry, whatever the topology.
CouplingMatrix coupling_matrix(const DeviceConfig& cfg);

/// Eigensystem of coupling_matrix(cfg): closed form for the tridiagonal and
/// circulant families, Jacobi for custom matrices.
EigenSystem eigensystem_for(const DeviceConfig& cfg);

/// A validated configuration together with its derived quantities.
struct Device {
    DeviceConfig config;
    CouplingMatrix coupling;
    EigenSystem eigensystem;
    Permutation permutation;
};

/// Throws ConfigError carrying the full violation report if `cfg` is invalid.
Device make_device(const DeviceConfig& cfg);

}  // namespace qwalk
