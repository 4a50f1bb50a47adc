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

// qwalk: command-line front end for the looped waveguide-array simulator.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/io.hpp"

namespace {

using nlohmann::json;
using namespace qwalk;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

/// Device flags shared by every device-driven subcommand.
struct DeviceFlags {
    std::string config;
    std::string topology = "cylinder";
    std::size_t n_modes = 0;
    long long shift_c = 0;
    std::vector<double> theta;
    double tau = 1.0;
    double omega = 0.0;
    double g = 1.0;
    std::vector<double> g_vector;
    CLI::Option* c_opt = nullptr;
    CLI::Option* g_vector_opt = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "Device config JSON file (other device flags are then ignored)");
        app->add_option("--topology", topology, "cylinder | moebius | twisted_circle")
            ->check(CLI::IsMember({"cylinder", "moebius", "twisted_circle"}));
        app->add_option("--n-modes", n_modes, "Number of guides (default 21, or 12 for twisted_circle)");
        c_opt = app->add_option("--c", shift_c, "Cyclic shift per transit for twisted_circle");
        app->add_option("--theta", theta, "Coupler angle(s) in radians; one value or one per guide");
        app->add_option("--tau", tau, "Transit time in units of 1/g");
        app->add_option("--omega", omega, "Common mode frequency");
        app->add_option("--g", g, "Nearest-neighbour coupling rate");
        g_vector_opt = app->add_option("--g-vector", g_vector, "Circulant coupling vector for twisted_circle");
    }

    DeviceConfig build() const {
        if (!config.empty()) return device_config_from_json(read_json(config));
        DeviceConfig cfg;
        cfg.topology = topology_from_string(topology);
        cfg.n_modes = n_modes ? n_modes : (cfg.topology == Topology::twisted_circle ? 12 : 21);
        if (!theta.empty()) cfg.theta = theta;
        cfg.tau = tau;
        cfg.omega = omega;
        cfg.g = g;
        if (cfg.topology == Topology::twisted_circle) {
            cfg.shift_c = shift_c;
            if (*g_vector_opt) cfg.g_vector = g_vector;
        } else if (*c_opt || *g_vector_opt) {
            throw ConfigError("--c and --g-vector apply to twisted_circle only");
        }
        return cfg;
    }
};

void write_stdout(const std::string& s) { std::fwrite(s.data(), 1, s.size(), stdout); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon quantum walks on looped waveguide arrays"};
    app.set_version_flag("--version", std::string(cli::kToolVersion));
    app.require_subcommand(1);

    // correlate
    auto* correlate = app.add_subcommand("correlate", "Correlation matrices over a sweep of steps, delays and inputs");
    DeviceFlags corr_dev;
    corr_dev.attach(correlate);
    std::string manifest_path, steps_text, delay_text, kind_text, format_text, out_dir;
    std::vector<std::string> input_texts;
    std::vector<double> theta_sweep;
    bool physical = false, rescaled_flag = false, oracle = false;
    unsigned jobs = 0;
    std::uint64_t seed = 0;
    correlate->add_option("--manifest", manifest_path, "Run manifest JSON; explicit flags override its fields");
    auto* inputs_opt = correlate->add_option("--inputs", input_texts, "Input guide pair 'j,k' (repeatable)");
    auto* steps_opt = correlate->add_option("--steps", steps_text, "Steps as 'a..b' or 'a,b,c'");
    auto* delay_opt = correlate->add_option("--delay", delay_text, "Second-photon delays in transits, 'a..b' or 'a,b'");
    auto* sweep_opt = correlate->add_option("--theta-sweep", theta_sweep, "Uniform coupler angles to sweep");
    auto* kind_opt = correlate->add_option("--kind", kind_text, "quantum | classical | both");
    auto* format_opt = correlate->add_option("--format", format_text, "Comma list of csv, json, pgm");
    correlate->add_option("--out", out_dir, "Output directory (overrides QWALK_OUT)");
    auto* rescaled_opt = correlate->add_flag("--rescaled", rescaled_flag, "Divide out the coupler prefactor (default)");
    auto* physical_opt = correlate->add_flag("--physical", physical, "Keep the physical coincidence probabilities");
    rescaled_opt->excludes(physical_opt);
    correlate->add_flag("--oracle", oracle, "Also run the Fock-space oracle and report the differences");
    auto* jobs_opt = correlate->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");
    auto* seed_opt = correlate->add_option("--seed", seed, "Recorded in the manifest");

    // spectra
    auto* spectra = app.add_subcommand("spectra", "Eigenvalues of the coupling matrix");
    DeviceFlags spec_dev;
    spec_dev.attach(spectra);
    bool spectra_json = false;
    spectra->add_flag("--json", spectra_json, "Emit the full eigensystem as JSON");

    // modes
    auto* modes = app.add_subcommand("modes", "Normal modes that are also fixed by the transit permutation");
    DeviceFlags modes_dev;
    modes_dev.attach(modes);
    bool modes_json = false;
    InvarianceOptions inv;
    modes->add_flag("--json", modes_json, "Emit JSON");
    modes->add_option("--tol", inv.tol, "Entrywise invariance tolerance");
    modes->add_option("--degeneracy", inv.degeneracy, "Relative eigenvalue clustering threshold");

    // theta-opt
    auto* theta_opt = app.add_subcommand("theta-opt", "Coupler angle maximizing the exit probability at step n");
    int theta_n = 1;
    theta_opt->add_option("--n", theta_n, "Step")->required();

    // feasibility
    auto* feas = app.add_subcommand("feasibility", "Loss, pulse length and dispersion budget of a physical loop");
    std::string params_path;
    double threshold = 0.05;
    feas->add_option("--params", params_path, "PhysicalParams JSON (default: reference design)");
    feas->add_option("--threshold", threshold, "Upper bound on pulse length / loop length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*correlate) {
            cli::RunManifest m;
            if (!manifest_path.empty()) {
                const auto base = std::filesystem::path(manifest_path).parent_path().string();
                m = cli::manifest_from_json(read_json(manifest_path), base.empty() ? "." : base);
                if (!corr_dev.config.empty()) m.device = corr_dev.build();
            } else {
                m.device = corr_dev.build();
            }
            if (*inputs_opt) {
                m.inputs.clear();
                for (const auto& t : input_texts) m.inputs.push_back(cli::parse_pair(t));
            }
            if (*steps_opt) m.steps = cli::parse_int_list(steps_text);
            if (*delay_opt) m.delays = cli::parse_int_list(delay_text);
            if (*sweep_opt) m.thetas = theta_sweep;
            if (*kind_opt) {
                m.kinds.clear();
                if (kind_text == "both")
                    m.kinds = {CorrelationKind::quantum, CorrelationKind::classical};
                else
                    m.kinds.push_back(correlation_kind_from_string(kind_text));
            }
            if (*format_opt) {
                m.formats.clear();
                std::stringstream ss(format_text);
                for (std::string f; std::getline(ss, f, ',');) m.formats.push_back(f);
            }
            if (physical) m.rescaled = false;
            if (rescaled_flag) m.rescaled = true;
            if (oracle) m.oracle = true;
            if (*jobs_opt) m.jobs = jobs;
            if (*seed_opt) m.seed = seed;
            if (!out_dir.empty())
                m.output_dir = out_dir;
            else if (const char* env = std::getenv("QWALK_OUT"); env && *env)
                m.output_dir = env;

            const auto outcome = cli::cmd_correlate(m);
            std::printf("wrote %zu files to %s\n", outcome.files.size(), m.output_dir.c_str());
            for (const auto& s : outcome.skipped) std::printf("skipped %s\n", s.c_str());
            if (m.oracle)
                std::printf("oracle max |diff| = %.3e\n", outcome.oracle_report.at("max_abs_diff").get<double>());
        } else if (*spectra) {
            write_stdout(cli::cmd_spectra(spec_dev.build(), spectra_json));
        } else if (*modes) {
            write_stdout(cli::cmd_modes(modes_dev.build(), inv, modes_json));
        } else if (*theta_opt) {
            write_stdout(cli::cmd_theta_opt(theta_n));
        } else if (*feas) {
            const PhysicalParams p = params_path.empty() ? reference_params()
                                                         : physical_params_from_json(read_json(params_path));
            write_stdout(cli::cmd_feasibility(p, threshold));
        }
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return 0;
}
