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

#include "qwalk/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qwalk/device.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/fock_oracle.hpp"
#include "qwalk/io.hpp"

namespace qwalk::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const int lo = std::stoi(text.substr(0, dots));
            const int hi = std::stoi(text.substr(dots + 2));
            if (hi < lo) throw ConfigError("empty range '" + text + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
            return out;
        }
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse integer list '" + text + "'");
    }
    return out;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text) {
    const auto v = parse_int_list(text);
    if (v.size() != 2 || v[0] < 1 || v[1] < 1) throw ConfigError("input pair must look like 'j,k' (1-based)");
    return {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1])};
}

std::vector<Violation> validate_manifest(const RunManifest& m) {
    std::vector<Violation> out = validate_device(m.device);
    if (m.steps.empty()) out.push_back({"sweep axes", "steps must not be empty"});
    if (m.delays.empty()) out.push_back({"sweep axes", "delays must not be empty"});
    if (m.inputs.empty()) out.push_back({"sweep axes", "inputs must not be empty"});
    if (m.kinds.empty()) out.push_back({"sweep axes", "kinds must not be empty"});
    if (m.formats.empty()) out.push_back({"formats", "at least one output format is required"});
    for (const auto& f : m.formats)
        if (f != "csv" && f != "json" && f != "pgm") out.push_back({"formats", "unknown format '" + f + "'"});
    for (int n : m.steps) {
        if (n < 0) out.push_back({"steps", "steps must be >= 0"});
        if (n == 0 && !m.rescaled) out.push_back({"steps", "step 0 is only defined for rescaled output"});
    }
    for (int d : m.delays)
        if (d < 0) out.push_back({"delays", "delays must be >= 0"});
    for (const auto& [j, k] : m.inputs)
        if (j < 1 || k < 1 || j > m.device.n_modes || k > m.device.n_modes)
            out.push_back({"inputs", "input guides must lie in 1..N"});
    for (double t : m.thetas)
        if (!(t >= 0.0 && t <= 1.5707963267948966)) out.push_back({"coupler angle range", "swept theta outside [0, pi/2]"});
    return out;
}

RunManifest manifest_from_json(const json& j, const std::string& base_dir) {
    static const std::vector<std::string> allowed{"schema_version", "device", "device_file", "steps",  "delays",
                                                  "inputs",         "thetas", "kinds",       "rescaled", "oracle",
                                                  "output_dir",     "formats", "seed",       "tool_version", "jobs"};
    if (!j.is_object()) throw ConfigError("manifest must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in manifest");

    RunManifest m;
    try {
        if (j.contains("device")) {
            m.device = device_config_from_json(j.at("device"));
        } else if (j.contains("device_file")) {
            const fs::path path = fs::path(base_dir) / j.at("device_file").get<std::string>();
            std::ifstream in(path);
            if (!in) throw ConfigError("cannot open device file " + path.string());
            m.device = device_config_from_json(json::parse(in));
        } else {
            throw ConfigError("manifest needs 'device' or 'device_file'");
        }
        if (j.contains("steps")) m.steps = j.at("steps").get<std::vector<int>>();
        if (j.contains("delays")) m.delays = j.at("delays").get<std::vector<int>>();
        if (j.contains("inputs")) {
            m.inputs.clear();
            for (const auto& p : j.at("inputs")) {
                const auto v = p.get<std::vector<std::size_t>>();
                if (v.size() != 2) throw ConfigError("each input must be a [j, k] pair");
                m.inputs.emplace_back(v[0], v[1]);
            }
        }
        if (j.contains("thetas")) m.thetas = j.at("thetas").get<std::vector<double>>();
        if (j.contains("kinds")) {
            m.kinds.clear();
            for (const auto& k : j.at("kinds")) m.kinds.push_back(correlation_kind_from_string(k.get<std::string>()));
        }
        if (j.contains("rescaled")) m.rescaled = j.at("rescaled").get<bool>();
        if (j.contains("oracle")) m.oracle = j.at("oracle").get<bool>();
        if (j.contains("output_dir")) m.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("formats")) m.formats = j.at("formats").get<std::vector<std::string>>();
        if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("tool_version")) m.tool_version = j.at("tool_version").get<std::string>();
        if (j.contains("jobs")) m.jobs = j.at("jobs").get<unsigned>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
    return m;
}

json to_json(const RunManifest& m) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["device"] = qwalk::to_json(m.device);
    j["steps"] = m.steps;
    j["delays"] = m.delays;
    json inputs = json::array();
    for (const auto& [a, b] : m.inputs) inputs.push_back({a, b});
    j["inputs"] = inputs;
    j["thetas"] = m.thetas;
    json kinds = json::array();
    for (auto k : m.kinds) kinds.push_back(std::string(to_string(k)));
    j["kinds"] = kinds;
    j["rescaled"] = m.rescaled;
    j["oracle"] = m.oracle;
    j["output_dir"] = m.output_dir;
    j["formats"] = m.formats;
    j["seed"] = m.seed;
    j["tool_version"] = m.tool_version;
    return j;
}

std::string render_csv(const CorrelationMatrix& m) {
    std::string out = "r,s,value\n";
    for (std::size_t r = 1; r <= m.n_modes(); ++r)
        for (std::size_t s = 1; s <= m.n_modes(); ++s)
            out += std::to_string(r) + "," + std::to_string(s) + "," + format_double("%.17g", m.at(r, s)) + "\n";
    return out;
}

std::string render_pgm(const CorrelationMatrix& m) {
    const std::size_t n = m.n_modes();
    const double peak = max_abs(m.values);
    std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
            const double scaled = peak > 0.0 ? 255.0 * m.values(r, s) / peak : 0.0;
            out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(std::clamp(scaled, 0.0, 255.0)))));
        }
    return out;
}

namespace {

struct Group {
    std::size_t theta_index;
    double theta;
    int delay;
    std::pair<std::size_t, std::size_t> inputs;
};

struct GroupResult {
    std::vector<std::string> files;
    std::vector<std::string> skipped;
    json oracle_cells = json::array();
    double entry_probability = 0.0;
    double worst = 0.0;
};

std::string stem_for(const RunManifest& m, const Group& g, CorrelationKind kind, int n) {
    std::string s = std::string(to_string(m.device.topology)) + "_" + std::string(to_string(kind)) + "_j" +
                    std::to_string(g.inputs.first) + "_k" + std::to_string(g.inputs.second) + "_nd" +
                    std::to_string(g.delay) + "_n" + std::to_string(n);
    if (m.thetas.size() > 1) s += "_t" + std::to_string(g.theta_index);
    return s;
}

std::vector<std::string> write_matrix(const RunManifest& m, const fs::path& dir, const std::string& stem,
                                      const CorrelationMatrix& cm, double theta) {
    std::vector<std::string> files;
    for (const auto& f : m.formats) {
        const std::string name = stem + "." + f;
        if (f == "csv") {
            write_file(dir / name, render_csv(cm));
        } else if (f == "json") {
            json j = qwalk::to_json(cm);
            j["topology"] = std::string(to_string(m.device.topology));
            j["theta"] = theta;
            j["tau"] = m.device.tau;
            write_file(dir / name, j.dump(2) + "\n");
        } else {
            write_file(dir / name, render_pgm(cm));
        }
        files.push_back(name);
    }
    return files;
}

double unit_sum_diff(const CorrelationMatrix& a, const CorrelationMatrix& b) {
    const double ta = a.total();
    const double tb = b.total();
    if (ta == 0.0 || tb == 0.0) return ta == tb ? 0.0 : 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.data().size(); ++i)
        worst = std::max(worst, std::abs(a.values.data()[i] / ta - b.values.data()[i] / tb));
    return worst;
}

GroupResult run_group(const RunManifest& m, const Device& dev, const Group& g, const fs::path& dir) {
    GroupResult out;
    const auto thetas = dev.config.thetas();
    const auto& es = dev.eigensystem;
    const auto& p = dev.permutation;
    const auto [j, k] = g.inputs;

    int max_step = 0;
    for (int n : m.steps) max_step = std::max(max_step, n);
    oracle::OracleRun oracle_run;
    const bool use_oracle = m.oracle && max_step >= 1;
    if (use_oracle) {
        oracle_run = oracle::oracle_correlations(dev.config, j, k, g.delay, max_step);
        out.entry_probability = oracle_run.entry_probability;
    }

    for (auto kind : m.kinds) {
        for (int n : m.steps) {
            const std::string stem = stem_for(m, g, kind, n);
            if (kind == CorrelationKind::classical && g.delay != 0) {
                out.skipped.push_back(stem + ": classical correlation is defined for simultaneous input only");
                continue;
            }
            const CorrelationMatrix cm = kind == CorrelationKind::quantum
                                             ? gamma_delayed(es, p, thetas, dev.config.tau, n, g.delay, j, k, m.rescaled)
                                             : classical_p(es, p, thetas, dev.config.tau, n, j, k, m.rescaled);
            auto files = write_matrix(m, dir, stem, cm, g.theta);
            out.files.insert(out.files.end(), files.begin(), files.end());

            if (!use_oracle || kind != CorrelationKind::quantum || n < 1) continue;
            CorrelationMatrix ref = oracle_run.steps[static_cast<std::size_t>(n - 1)];
            const double pref = coupler_prefactor(g.theta, n);
            json cell{{"file", stem}, {"step", n}, {"delay", g.delay}, {"inputs", {j, k}}};
            double diff = 0.0;
            if (g.delay == 0) {
                if (m.rescaled) {
                    if (pref == 0.0) {
                        cell["comparison"] = "skipped: zero prefactor";
                        out.oracle_cells.push_back(cell);
                        continue;
                    }
                    for (auto& v : ref.values.data()) v /= pref;
                    ref.rescaled = true;
                }
                cell["comparison"] = m.rescaled ? "rescaled" : "physical";
                diff = max_abs_diff(cm.values, ref.values);
            } else {
                cell["comparison"] = "unit_sum_shape";
                diff = unit_sum_diff(cm, ref);
                const double physical_total = m.rescaled ? cm.total() * pref : cm.total();
                cell["scale_ratio"] = physical_total > 0.0 ? ref.total() / physical_total : 0.0;
                const double scale = ref.total() > 0.0 ? cm.total() / ref.total() : 0.0;
                for (auto& v : ref.values.data()) v *= scale;
                ref.rescaled = m.rescaled;
            }
            cell["max_abs_diff"] = diff;
            out.worst = std::max(out.worst, diff);
            out.oracle_cells.push_back(cell);
            auto ofiles = write_matrix(m, dir, stem + "_oracle", ref, g.theta);
            out.files.insert(out.files.end(), ofiles.begin(), ofiles.end());
        }
    }
    return out;
}

}  // namespace

CorrelateOutcome cmd_correlate(const RunManifest& m) {
    const auto violations = validate_manifest(m);
    if (!violations.empty()) throw ConfigError("invalid run manifest:\n" + format_violations(violations));

    std::vector<double> theta_axis = m.thetas;
    if (theta_axis.empty()) theta_axis.push_back(uniform_theta(m.device.theta));

    std::vector<Device> devices;
    for (double t : theta_axis) {
        DeviceConfig cfg = m.device;
        cfg.theta = {t};
        devices.push_back(make_device(cfg));
    }

    std::vector<Group> groups;
    for (std::size_t ti = 0; ti < theta_axis.size(); ++ti)
        for (int d : m.delays)
            for (const auto& in : m.inputs) groups.push_back(Group{ti, theta_axis[ti], d, in});

    const fs::path dir = m.output_dir;
    fs::create_directories(dir);

    std::vector<GroupResult> results(groups.size());
    std::vector<std::exception_ptr> errors(groups.size());
    std::atomic<std::size_t> next{0};
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<std::size_t>(m.jobs ? m.jobs : hw, std::max<std::size_t>(groups.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < groups.size(); i = next++) {
                    try {
                        results[i] = run_group(m, devices[groups[i].theta_index], groups[i], dir);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    CorrelateOutcome out;
    json cells = json::array();
    json entries = json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        auto& r = results[i];
        out.files.insert(out.files.end(), r.files.begin(), r.files.end());
        out.skipped.insert(out.skipped.end(), r.skipped.begin(), r.skipped.end());
        for (auto& c : r.oracle_cells) cells.push_back(std::move(c));
        entries.push_back({{"theta", groups[i].theta},
                           {"delay", groups[i].delay},
                           {"inputs", {groups[i].inputs.first, groups[i].inputs.second}},
                           {"entry_probability", r.entry_probability}});
        worst = std::max(worst, r.worst);
    }

    write_file(dir / "manifest.json", to_json(m).dump(2) + "\n");
    out.files.push_back("manifest.json");
    if (m.oracle) {
        out.oracle_report = json{{"schema_version", kSchemaVersion},
                                 {"max_abs_diff", worst},
                                 {"entries", entries},
                                 {"cells", cells}};
        write_file(dir / "oracle_report.json", out.oracle_report.dump(2) + "\n");
        out.files.push_back("oracle_report.json");
    }

    // Timestamps live only in the log so the artifacts stay byte-stable.
    std::ofstream log(dir / "run.log", std::ios::app);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    log << stamp << " qwalk " << m.tool_version << " correlate: " << out.files.size() << " files";
    if (!out.skipped.empty()) log << ", " << out.skipped.size() << " skipped";
    log << '\n';
    for (const auto& s : out.skipped) log << "  skipped " << s << '\n';
    return out;
}

std::string cmd_spectra(const DeviceConfig& cfg, bool as_json) {
    const Device dev = make_device(cfg);
    if (as_json) return qwalk::to_json(dev.eigensystem).dump(2) + "\n";
    std::string out = "# " + std::string(to_string(cfg.topology)) + " N=" + std::to_string(cfg.n_modes) + "\n";
    for (std::size_t j = 1; j <= dev.eigensystem.size(); ++j)
        out += "lambda_" + std::to_string(j) + " = " + format_double("%.12f", dev.eigensystem.eigenvalues[j - 1]) + "\n";
    return out;
}

std::string cmd_modes(const DeviceConfig& cfg, const InvarianceOptions& opts, bool as_json) {
    const Device dev = make_device(cfg);
    const auto clusters = invariant_modes(dev.eigensystem, dev.permutation, opts);
    if (as_json) {
        json arr = json::array();
        for (const auto& c : clusters) {
            json basis = json::array();
            for (const auto& v : c.invariant_basis) {
                json re = json::array();
                json im = json::array();
                for (const auto& z : v) {
                    re.push_back(z.real());
                    im.push_back(z.imag());
                }
                basis.push_back({{"re", re}, {"im", im}});
            }
            arr.push_back({{"eigenvalue", c.eigenvalue},
                           {"modes", c.modes},
                           {"invariant", c.invariant()},
                           {"invariant_dimension", c.invariant_basis.size()},
                           {"basis", basis}});
        }
        return json{{"schema_version", kSchemaVersion}, {"clusters", arr}}.dump(2) + "\n";
    }
    std::string out = "# " + std::string(to_string(cfg.topology)) + " N=" + std::to_string(cfg.n_modes) + "\n";
    for (const auto& c : clusters) {
        std::string modes;
        for (auto m : c.modes) modes += (modes.empty() ? "" : ",") + std::to_string(m);
        out += "mode " + modes + "  lambda = " + format_double("%.12f", c.eigenvalue);
        if (c.degenerate())
            out += "  invariant subspace dim " + std::to_string(c.invariant_basis.size()) + "/" +
                   std::to_string(c.modes.size());
        else
            out += c.invariant() ? "  invariant" : "  not invariant";
        out += "\n";
    }
    return out;
}

std::string cmd_theta_opt(int n) { return format_double("%.12f", optimal_theta(n)) + "\n"; }

std::string cmd_feasibility(const PhysicalParams& p, double threshold) {
    const LoopBudget b = loop_budget(p);
    const DiscretenessReport d = discreteness_check(p, p.transits, threshold);
    json j{{"schema_version", kSchemaVersion},
           {"params", qwalk::to_json(p)},
           {"budget", qwalk::to_json(b)},
           {"discreteness", qwalk::to_json(d)}};
    return j.dump(2) + "\n";
}

}  // namespace qwalk::cli
