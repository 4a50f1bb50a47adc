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

#include "qwalk/io.hpp"

#include <set>

#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) throw ConfigError(std::string("unknown key '") + key + "' in " + what);
}

template <typename T>
T get_as(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad or missing '") + key + "': " + e.what());
    }
}

void check_schema(const json& j) {
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion)
        throw ConfigError("unsupported schema_version");
}

}  // namespace

DeviceConfig device_config_from_json(const json& j) {
    reject_unknown(j,
                   {"schema_version", "topology", "n_modes", "theta", "tau", "omega", "g", "shift_c", "g_vector",
                    "custom_G", "custom_perm"},
                   "device config");
    check_schema(j);
    DeviceConfig cfg;
    cfg.topology = topology_from_string(get_as<std::string>(j, "topology"));
    const auto n = get_as<long long>(j, "n_modes");
    if (n < 1) throw ConfigError("n_modes must be at least 1");
    cfg.n_modes = static_cast<std::size_t>(n);
    if (j.contains("theta")) {
        const auto& t = j.at("theta");
        if (t.is_number())
            cfg.theta = {t.get<double>()};
        else
            cfg.theta = get_as<std::vector<double>>(j, "theta");
    }
    if (j.contains("tau")) cfg.tau = get_as<double>(j, "tau");
    if (j.contains("omega")) cfg.omega = get_as<double>(j, "omega");
    if (j.contains("g")) cfg.g = get_as<double>(j, "g");
    if (j.contains("shift_c")) cfg.shift_c = get_as<long long>(j, "shift_c");
    if (j.contains("g_vector")) cfg.g_vector = get_as<std::vector<double>>(j, "g_vector");
    if (j.contains("custom_G")) cfg.custom_g = get_as<std::vector<double>>(j, "custom_G");
    if (j.contains("custom_perm")) cfg.custom_perm = get_as<std::vector<long long>>(j, "custom_perm");
    return cfg;
}

json to_json(const DeviceConfig& cfg) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["topology"] = std::string(to_string(cfg.topology));
    j["n_modes"] = cfg.n_modes;
    if (cfg.theta.size() == 1)
        j["theta"] = cfg.theta.front();
    else
        j["theta"] = cfg.theta;
    j["tau"] = cfg.tau;
    j["omega"] = cfg.omega;
    j["g"] = cfg.g;
    if (cfg.shift_c) j["shift_c"] = *cfg.shift_c;
    if (cfg.g_vector) j["g_vector"] = *cfg.g_vector;
    if (cfg.custom_g) j["custom_G"] = *cfg.custom_g;
    if (cfg.custom_perm) j["custom_perm"] = *cfg.custom_perm;
    return j;
}

CorrelationMatrix correlation_from_json(const json& j) {
    check_schema(j);
    CorrelationMatrix m;
    m.kind = correlation_kind_from_string(get_as<std::string>(j, "kind"));
    m.step = get_as<int>(j, "step");
    m.delay = get_as<int>(j, "delay");
    const auto inputs = get_as<std::vector<std::size_t>>(j, "inputs");
    if (inputs.size() != 2) throw ConfigError("inputs must hold two guide indices");
    m.input_j = inputs[0];
    m.input_k = inputs[1];
    m.rescaled = get_as<bool>(j, "rescaled");
    const auto rows = get_as<std::vector<std::vector<double>>>(j, "values");
    const std::size_t n = rows.size();
    m.values = RealMatrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) throw ConfigError("values must be square");
        for (std::size_t s = 0; s < n; ++s) {
            if (rows[r][s] < 0.0) throw ConfigError("correlation values must be non-negative");
            m.values(r, s) = rows[r][s];
        }
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
            if (m.values(r, s) != m.values(s, r)) throw ConfigError("correlation matrix must be symmetric");
    return m;
}

json to_json(const CorrelationMatrix& m) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["record"] = "correlation_matrix";
    j["kind"] = std::string(to_string(m.kind));
    j["step"] = m.step;
    j["delay"] = m.delay;
    j["inputs"] = {m.input_j, m.input_k};
    j["rescaled"] = m.rescaled;
    j["n_modes"] = m.n_modes();
    json rows = json::array();
    for (std::size_t r = 0; r < m.values.rows(); ++r) {
        json row = json::array();
        for (std::size_t s = 0; s < m.values.cols(); ++s) row.push_back(m.values(r, s));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j;
}

EigenSystem eigensystem_from_json(const json& j) {
    check_schema(j);
    EigenSystem es;
    es.eigenvalues = get_as<std::vector<double>>(j, "eigenvalues");
    const auto re = get_as<std::vector<std::vector<double>>>(j, "eigenvectors_re");
    const auto im = get_as<std::vector<std::vector<double>>>(j, "eigenvectors_im");
    const std::size_t n = es.eigenvalues.size();
    if (re.size() != n || im.size() != n) throw ConfigError("eigenvector matrix must be N×N");
    es.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        if (re[r].size() != n || im[r].size() != n) throw ConfigError("eigenvector matrix must be N×N");
        for (std::size_t c = 0; c < n; ++c) es.eigenvectors(r, c) = Complex(re[r][c], im[r][c]);
    }
    if (unitarity_residual(es) > 1e-12) throw ConfigError("eigenvector matrix is not unitary");
    return es;
}

json to_json(const EigenSystem& es) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["record"] = "eigensystem";
    j["eigenvalues"] = es.eigenvalues;
    json re = json::array();
    json im = json::array();
    for (std::size_t r = 0; r < es.size(); ++r) {
        json rr = json::array();
        json ii = json::array();
        for (std::size_t c = 0; c < es.size(); ++c) {
            rr.push_back(es.eigenvectors(r, c).real());
            ii.push_back(es.eigenvectors(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    j["eigenvectors_re"] = std::move(re);
    j["eigenvectors_im"] = std::move(im);
    return j;
}

PhysicalParams physical_params_from_json(const json& j) {
    reject_unknown(j,
                   {"schema_version", "wavelength_m", "n_bg", "group_index", "loop_radius_m",
                    "bend_attenuation_per_cm", "pulse_width_s", "bandwidth_hz", "bandwidth_m",
                    "dispersion_ps_nm_km", "coupler_separation_m", "transits"},
                   "physical parameters");
    check_schema(j);
    PhysicalParams p;
    p.wavelength_m = get_as<double>(j, "wavelength_m");
    p.n_bg = get_as<double>(j, "n_bg");
    if (j.contains("group_index")) p.group_index = get_as<double>(j, "group_index");
    p.loop_radius_m = get_as<double>(j, "loop_radius_m");
    p.bend_attenuation_per_cm = get_as<double>(j, "bend_attenuation_per_cm");
    p.pulse_width_s = get_as<double>(j, "pulse_width_s");
    if (j.contains("bandwidth_hz")) p.bandwidth_hz = get_as<double>(j, "bandwidth_hz");
    if (j.contains("bandwidth_m")) p.bandwidth_m = get_as<double>(j, "bandwidth_m");
    p.dispersion_ps_nm_km = get_as<double>(j, "dispersion_ps_nm_km");
    if (j.contains("coupler_separation_m")) p.coupler_separation_m = get_as<double>(j, "coupler_separation_m");
    p.transits = get_as<int>(j, "transits");
    return p;
}

json to_json(const PhysicalParams& p) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["wavelength_m"] = p.wavelength_m;
    j["n_bg"] = p.n_bg;
    if (p.group_index) j["group_index"] = *p.group_index;
    j["loop_radius_m"] = p.loop_radius_m;
    j["bend_attenuation_per_cm"] = p.bend_attenuation_per_cm;
    j["pulse_width_s"] = p.pulse_width_s;
    if (p.bandwidth_hz) j["bandwidth_hz"] = *p.bandwidth_hz;
    if (p.bandwidth_m) j["bandwidth_m"] = *p.bandwidth_m;
    j["dispersion_ps_nm_km"] = p.dispersion_ps_nm_km;
    j["coupler_separation_m"] = p.coupler_separation_m;
    j["transits"] = p.transits;
    return j;
}

json to_json(const LoopBudget& b) {
    return json{{"loop_length_m", b.loop_length_m},
                {"transit_time_s", b.transit_time_s},
                {"loss_fraction", b.loss_fraction},
                {"pulse_length_m", b.pulse_length_m},
                {"broadening_fraction", b.broadening_fraction},
                {"bandwidth_m", b.bandwidth_m},
                {"bandwidth_hz", b.bandwidth_hz},
                {"relative_bandwidth", b.relative_bandwidth}};
}

json to_json(const DiscretenessReport& r) {
    return json{{"ratio", r.ratio},         {"worst_ratio", r.worst_ratio}, {"threshold", r.threshold},
                {"margin", r.margin},       {"transits", r.transits},       {"pass", r.pass}};
}

}  // namespace qwalk
