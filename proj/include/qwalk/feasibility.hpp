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

#include <optional>
#include <string>
#include <vector>

#include "qwalk/model.hpp"

namespace qwalk {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Scalar design inputs for a looped waveguide device. Waveguide-theory
/// quantities (bend attenuation, dispersion) are taken as given.
struct PhysicalParams {
    double wavelength_m = 800e-9;
    double n_bg = 1.44;
    /// Defaults to n_bg when absent.
    std::optional<double> group_index;
    double loop_radius_m = 0.20;
    double bend_attenuation_per_cm = 6.8e-7;
    double pulse_width_s = 20e-12;
    /// Exactly one of the two bandwidth forms must be set.
    std::optional<double> bandwidth_hz;
    std::optional<double> bandwidth_m;
    /// Group-velocity dispersion in ps/(nm km); the sign is irrelevant here.
    double dispersion_ps_nm_km = -150.0;
    double coupler_separation_m = 10e-6;
    int transits = 100;

    double effective_group_index() const { return group_index.value_or(n_bg); }
};

/// Reference design: 800 nm, R_c = 20 cm, 20 ps pulses, 17 pm bandwidth.
PhysicalParams reference_params();

std::vector<Violation> validate_params(const PhysicalParams& p);

struct LoopBudget {
    double loop_length_m = 0.0;
    double transit_time_s = 0.0;
    double loss_fraction = 0.0;
    double pulse_length_m = 0.0;
    double broadening_fraction = 0.0;
    double bandwidth_m = 0.0;
    double bandwidth_hz = 0.0;
    double relative_bandwidth = 0.0;
};

/// Throws ConfigError on invalid parameters.
LoopBudget loop_budget(const PhysicalParams& p);

struct DiscretenessReport {
    double ratio = 0.0;        ///< l / L at injection
    double worst_ratio = 0.0;  ///< l / L after the pulse has broadened over `transits`
    double threshold = 0.0;
    double margin = 0.0;       ///< threshold - worst_ratio
    int transits = 0;
    bool pass = false;
};

/// Pulse must stay short compared with the loop for the whole run of
/// `transits` round trips.
DiscretenessReport discreteness_check(const PhysicalParams& p, int transits, double threshold = 0.05);

}  // namespace qwalk
