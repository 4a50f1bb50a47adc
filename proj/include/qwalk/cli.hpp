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

// Library side of the `qwalk` command-line tool: run manifests, sweeps and
// the text/JSON renderings of the thin wrapper commands.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwalk/correlations.hpp"
#include "qwalk/feasibility.hpp"
#include "qwalk/model.hpp"

namespace qwalk::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// One correlate run: a device plus the sweep axes.
struct RunManifest {
    DeviceConfig device;
    std::vector<int> steps{0, 1, 2, 3};
    std::vector<int> delays{0};
    std::vector<std::pair<std::size_t, std::size_t>> inputs{{1, 7}};
    /// Uniform coupler angles to sweep; empty means use the device's own.
    std::vector<double> thetas;
    std::vector<CorrelationKind> kinds{CorrelationKind::quantum};
    bool rescaled = true;
    bool oracle = false;
    std::string output_dir = "qwalk_out";
    std::vector<std::string> formats{"csv", "json"};
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned jobs = 0;
};

std::vector<Violation> validate_manifest(const RunManifest& m);

/// Accepts either an inline `device` object or a `device_file` path
/// (resolved relative to `base_dir`).
RunManifest manifest_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
nlohmann::json to_json(const RunManifest& m);

struct CorrelateOutcome {
    /// Written artifacts, relative to the output directory, in sweep order.
    std::vector<std::string> files;
    /// Present when the manifest asked for oracle comparisons.
    nlohmann::json oracle_report;
    /// Cells that were not produced (e.g. classical with delayed input).
    std::vector<std::string> skipped;
};

/// Evaluate every sweep cell on a bounded worker pool and write one artifact
/// per cell and format. Throws ConfigError on an invalid manifest or device.
CorrelateOutcome cmd_correlate(const RunManifest& m);

std::string cmd_spectra(const DeviceConfig& cfg, bool as_json);
std::string cmd_modes(const DeviceConfig& cfg, const InvarianceOptions& opts, bool as_json);
std::string cmd_theta_opt(int n);
std::string cmd_feasibility(const PhysicalParams& p, double threshold);

/// Renderers shared with the tests.
std::string render_csv(const CorrelationMatrix& m);
std::string render_pgm(const CorrelationMatrix& m);

/// Parse "a..b" or "a,b,c" into integers.
std::vector<int> parse_int_list(const std::string& text);
/// Parse "j,k" into a 1-based pair.
std::pair<std::size_t, std::size_t> parse_pair(const std::string& text);

}  // namespace qwalk::cli
