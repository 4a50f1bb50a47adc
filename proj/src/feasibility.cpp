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

#include "qwalk/feasibility.hpp"

#include <cmath>
#include <numbers>

#include "qwalk/errors.hpp"

namespace qwalk {

PhysicalParams reference_params() {
    PhysicalParams p;
    p.bandwidth_m = 17e-12;
    return p;
}

std::vector<Violation> validate_params(const PhysicalParams& p) {
    std::vector<Violation> out;
    auto positive = [&](double v, const char* name) {
        if (!(std::isfinite(v) && v > 0.0)) out.push_back({"positive", std::string(name) + " must be finite and > 0"});
    };
    positive(p.wavelength_m, "wavelength");
    positive(p.n_bg, "n_bg");
    if (p.group_index) positive(*p.group_index, "group_index");
    positive(p.loop_radius_m, "loop_radius");
    positive(p.bend_attenuation_per_cm, "bend_attenuation");
    positive(p.pulse_width_s, "pulse_width");
    positive(p.coupler_separation_m, "coupler_separation");
    if (!std::isfinite(p.dispersion_ps_nm_km)) out.push_back({"finite", "dispersion must be finite"});
    if (p.transits < 1) out.push_back({"positive", "transits must be >= 1"});
    if (p.bandwidth_hz.has_value() == p.bandwidth_m.has_value())
        out.push_back({"bandwidth", "give exactly one of bandwidth_hz / bandwidth_m"});
    if (p.bandwidth_hz) positive(*p.bandwidth_hz, "bandwidth_hz");
    if (p.bandwidth_m) positive(*p.bandwidth_m, "bandwidth_m");
    return out;
}

LoopBudget loop_budget(const PhysicalParams& p) {
    const auto violations = validate_params(p);
    if (!violations.empty()) throw ConfigError("invalid physical parameters:\n" + format_violations(violations));

    LoopBudget b;
    const double ng = p.effective_group_index();
    const double vg = kSpeedOfLight / ng;
    b.loop_length_m = 2.0 * std::numbers::pi * p.loop_radius_m;
    b.transit_time_s = b.loop_length_m / vg;

    const double path_cm = 100.0 * b.loop_length_m * p.transits;
    b.loss_fraction = -std::expm1(-p.bend_attenuation_per_cm * path_cm);
    b.pulse_length_m = vg * p.pulse_width_s;

    const double lambda2 = p.wavelength_m * p.wavelength_m;
    if (p.bandwidth_m) {
        b.bandwidth_m = *p.bandwidth_m;
        b.bandwidth_hz = kSpeedOfLight * b.bandwidth_m / lambda2;
    } else {
        b.bandwidth_hz = *p.bandwidth_hz;
        b.bandwidth_m = lambda2 * b.bandwidth_hz / kSpeedOfLight;
    }
    b.relative_bandwidth = b.bandwidth_m / p.wavelength_m;

    // |D| [ps/(nm km)] * dlambda [nm] * path [km] -> spread in ps.
    const double spread_ps = std::abs(p.dispersion_ps_nm_km) * (b.bandwidth_m * 1e9) * (b.loop_length_m * p.transits * 1e-3);
    b.broadening_fraction = spread_ps / (p.pulse_width_s * 1e12);
    return b;
}

DiscretenessReport discreteness_check(const PhysicalParams& p, int transits, double threshold) {
    if (transits < 1) throw PreconditionError("transits must be >= 1");
    PhysicalParams q = p;
    q.transits = transits;
    const LoopBudget b = loop_budget(q);

    DiscretenessReport r;
    r.transits = transits;
    r.threshold = threshold;
    r.ratio = b.pulse_length_m / b.loop_length_m;
    r.worst_ratio = r.ratio * (1.0 + b.broadening_fraction);
    r.margin = threshold - r.worst_ratio;
    r.pass = r.worst_ratio < threshold;
    return r;
}

}  // namespace qwalk
