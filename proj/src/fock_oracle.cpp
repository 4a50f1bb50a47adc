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

#include "qwalk/fock_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk::oracle {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

}  // namespace

std::size_t pair_dimension(std::size_t modes) { return modes * (modes + 1) / 2; }

std::size_t pair_index(std::size_t m1, std::size_t m2, std::size_t modes) {
    if (m1 > m2) std::swap(m1, m2);
    // Rows m < m1 contribute (modes - m) pairs each.
    return m1 * modes - m1 * (m1 - 1) / 2 + (m2 - m1);
}

// Access to FockState internals for the pipeline operations.
class StateOps {
public:
    static FockState make(std::size_t n_array, int photons, ComplexVector amps) {
        return FockState(n_array, photons, std::move(amps));
    }
};

FockState FockState::vacuum(std::size_t n_array) { return FockState(n_array, 0, ComplexVector{1.0}); }

FockState FockState::from_array_modes(std::size_t n_array, std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != n_array || y.size() != n_array) throw PreconditionError("mode vectors must have N entries");
    const std::size_t modes = 2 * n_array;
    ComplexVector amps(pair_dimension(modes), 0.0);
    for (std::size_t i = 0; i < n_array; ++i) {
        amps[pair_index(i, i, modes)] = kSqrt2 * x[i] * y[i];
        for (std::size_t j = i + 1; j < n_array; ++j) amps[pair_index(i, j, modes)] = x[i] * y[j] + x[j] * y[i];
    }
    double nrm = 0.0;
    for (const auto& a : amps) nrm += std::norm(a);
    if (nrm == 0.0) throw PreconditionError("two-photon state has zero norm");
    for (auto& a : amps) a /= std::sqrt(nrm);
    return FockState(n_array, 2, std::move(amps));
}

double FockState::norm2() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

Complex FockState::pair_amplitude(std::size_t m1, std::size_t m2) const {
    if (photons_ != 2) throw PreconditionError("pair amplitude needs a two-photon state");
    return amps_[pair_index(m1, m2, n_modes())];
}

bool FockState::occupied(std::size_t mode) const {
    const std::size_t modes = n_modes();
    switch (photons_) {
        case 1:
            return amps_[mode] != Complex{};
        case 2:
            for (std::size_t m = 0; m < modes; ++m)
                if (amps_[pair_index(m, mode, modes)] != Complex{}) return true;
            return false;
        default:
            return false;
    }
}

RealMatrix hamiltonian_matrix(const DeviceConfig& cfg) {
    const std::size_t n = cfg.n_modes;
    RealMatrix g(n, n);
    switch (cfg.topology) {
        case Topology::cylinder:
        case Topology::moebius:
            for (std::size_t j = 0; j + 1 < n; ++j) {
                g(j, j + 1) += cfg.g;
                g(j + 1, j) += cfg.g;
            }
            break;
        case Topology::twisted_circle: {
            // H = sum_alpha sum_n g_alpha a_n^dagger a_{n+alpha-1 mod N}
            const auto gv = cfg.g_vector.value_or(ring_g_vector(n, cfg.g));
            if (gv.size() != n) throw ConfigError("g_vector must have N entries");
            for (std::size_t alpha = 0; alpha < n; ++alpha)
                for (std::size_t row = 0; row < n; ++row) g(row, (row + alpha) % n) += gv[alpha];
            break;
        }
        case Topology::custom:
            if (!cfg.custom_g || cfg.custom_g->size() != n * n) throw ConfigError("custom_G must be N×N");
            g.data() = *cfg.custom_g;
            break;
    }
    for (std::size_t j = 0; j < n; ++j) g(j, j) += cfg.omega;
    return g;
}

ComplexMatrix expm_series(const RealMatrix& g, double t) {
    const std::size_t n = g.rows();
    ComplexMatrix a(n, n);
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            a(r, c) = Complex(0.0, -g(r, c) * t);
            row += std::abs(g(r, c) * t);
        }
        norm = std::max(norm, row);
    }
    int squarings = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    for (auto& x : a.data()) x *= scale;

    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = multiply(term, a);
        for (auto& x : term.data()) x /= static_cast<double>(k);
        for (std::size_t i = 0; i < result.data().size(); ++i) result.data()[i] += term.data()[i];
        if (max_abs(term) < 1e-20) break;
    }
    for (int s = 0; s < squarings; ++s) result = multiply(result, result);
    return result;
}

ComplexMatrix single_particle_step_matrix(const PipelineStep& step, const DeviceConfig& cfg) {
    const std::size_t n = cfg.n_modes;
    ComplexMatrix s = ComplexMatrix::identity(2 * n);
    if (const auto* ev = std::get_if<Evolve>(&step)) {
        const ComplexMatrix u = expm_series(hamiltonian_matrix(cfg), ev->tau);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) s(r, c) = u(r, c);
    } else if (const auto* pm = std::get_if<Permute>(&step)) {
        if (pm->perm.size() != n) throw PreconditionError("permutation size does not match the array");
        for (std::size_t i = 0; i < n; ++i) s(i, i) = 0.0;
        for (std::size_t i = 1; i <= n; ++i) s(pm->perm(i) - 1, i - 1) = 1.0;
    } else if (const auto* cp = std::get_if<Couple>(&step)) {
        if (cp->theta.size() != n && cp->theta.size() != 1)
            throw PreconditionError("coupler angles must be one per guide");
        for (std::size_t j = 0; j < n; ++j) {
            const double th = cp->theta.size() == 1 ? cp->theta.front() : cp->theta[j];
            const Complex c = std::cos(th);
            const Complex is = Complex(0.0, std::sin(th));
            // a_j^dagger -> cos a_j^dagger + i sin b_j^dagger, b_j^dagger -> i sin a_j^dagger + cos b_j^dagger
            s(j, j) = c;
            s(n + j, j) = is;
            s(j, n + j) = is;
            s(n + j, n + j) = c;
        }
    } else {
        throw PreconditionError("step has no single-particle matrix");
    }
    return s;
}

ComplexMatrix lift_to_two_photon(const ComplexMatrix& single) {
    const std::size_t modes = single.rows();
    const std::size_t dim = pair_dimension(modes);
    ComplexMatrix out(dim, dim);
    for (std::size_t o1 = 0; o1 < modes; ++o1) {
        for (std::size_t o2 = o1; o2 < modes; ++o2) {
            const std::size_t row = pair_index(o1, o2, modes);
            for (std::size_t i1 = 0; i1 < modes; ++i1) {
                for (std::size_t i2 = i1; i2 < modes; ++i2) {
                    Complex perm = single(o1, i1) * single(o2, i2) + single(o1, i2) * single(o2, i1);
                    if (o1 == o2) perm /= kSqrt2;
                    if (i1 == i2) perm /= kSqrt2;
                    out(row, pair_index(i1, i2, modes)) = perm;
                }
            }
        }
    }
    return out;
}

FockState apply(const ComplexMatrix& single, const FockState& state) {
    if (single.rows() != state.n_modes()) throw PreconditionError("step matrix does not match the mode count");
    const auto& in = state.amplitudes();
    switch (state.photons()) {
        case 0:
            return state;
        case 1: {
            ComplexVector out(in.size(), 0.0);
            for (std::size_t o = 0; o < in.size(); ++o)
                for (std::size_t i = 0; i < in.size(); ++i) out[o] += single(o, i) * in[i];
            return StateOps::make(state.n_array(), 1, std::move(out));
        }
        case 2: {
            const ComplexMatrix lifted = lift_to_two_photon(single);
            ComplexVector out(in.size(), 0.0);
            for (std::size_t o = 0; o < in.size(); ++o)
                for (std::size_t i = 0; i < in.size(); ++i) out[o] += lifted(o, i) * in[i];
            return StateOps::make(state.n_array(), 2, std::move(out));
        }
        default:
            throw PreconditionError("unsupported photon number");
    }
}

namespace {

FockState inject(const FockState& state, std::size_t mode) {
    const std::size_t modes = state.n_modes();
    const double before = state.norm2();
    const auto& in = state.amplitudes();
    ComplexVector out;
    int photons = 0;
    if (state.photons() == 0) {
        out.assign(modes, 0.0);
        out[mode] = in[0];
        photons = 1;
    } else if (state.photons() == 1) {
        out.assign(pair_dimension(modes), 0.0);
        for (std::size_t m = 0; m < modes; ++m) out[pair_index(m, mode, modes)] += (m == mode ? kSqrt2 : 1.0) * in[m];
        photons = 2;
    } else {
        throw PreconditionError("oracle supports at most two photons");
    }
    // Adding a photon is a preparation step: keep the probability weight of the
    // branch unchanged (only matters when the mode was already occupied).
    double after = 0.0;
    for (const auto& a : out) after += std::norm(a);
    if (after > 0.0) {
        const double f = std::sqrt(before / after);
        for (auto& a : out) a *= f;
    }
    return StateOps::make(state.n_array(), photons, std::move(out));
}

}  // namespace

PipelineResult run_pipeline(const DeviceConfig& cfg, std::span<const PipelineStep> schedule) {
    return run_pipeline(cfg, schedule, FockState::vacuum(cfg.n_modes));
}

PipelineResult run_pipeline(const DeviceConfig& cfg, std::span<const PipelineStep> schedule, FockState initial) {
    const std::size_t n = cfg.n_modes;
    if (initial.n_array() != n) throw PreconditionError("initial state does not match the array size");
    const auto injections = std::count_if(schedule.begin(), schedule.end(),
                                          [](const PipelineStep& s) { return std::holds_alternative<InjectB>(s); });
    if (initial.photons() + injections != 2) throw PreconditionError("schedule must bring exactly two photons");

    PipelineResult result;
    FockState state = std::move(initial);
    double cumulative = 1.0;
    bool started = false;

    for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
        const auto& step = schedule[idx];
        if (const auto* inj = std::get_if<InjectB>(&step)) {
            if (inj->mode < 1 || inj->mode > n) throw PreconditionError("injection mode out of range");
            const std::size_t mode = n + inj->mode - 1;
            if (started && state.occupied(mode)) throw PreconditionError("injection into an occupied b mode");
            state = inject(state, mode);
        } else if (const auto* proj = std::get_if<ProjectBVacuum>(&step)) {
            PipelineRecord rec;
            rec.step_index = idx;
            rec.coincidences = RealMatrix(n, n);
            const double before = state.norm2();
            auto& amps = state.amplitudes();
            if (state.photons() == 2) {
                const std::size_t modes = 2 * n;
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t s = r; s < n; ++s) {
                        const double p = std::norm(amps[pair_index(n + r, n + s, modes)]);
                        rec.coincidences(r, s) = p;
                        rec.coincidences(s, r) = p;
                    }
                for (std::size_t m1 = 0; m1 < modes; ++m1)
                    for (std::size_t m2 = std::max(m1, n); m2 < modes; ++m2) amps[pair_index(m1, m2, modes)] = 0.0;
            } else if (state.photons() == 1) {
                for (std::size_t m = n; m < 2 * n; ++m) amps[m] = 0.0;
            }
            const double kept = state.norm2();
            rec.survival = before > 0.0 ? kept / before : 0.0;
            cumulative *= rec.survival;
            rec.cumulative_postselection = cumulative;
            if (proj->condition) {
                if (kept == 0.0) throw PreconditionError("post-selected event has zero probability");
                const double f = std::sqrt(before / kept);
                for (auto& a : amps) a *= f;
            }
            rec.surviving = state;
            result.records.push_back(std::move(rec));
        } else {
            started = true;
            state = oracle::apply(single_particle_step_matrix(step, cfg), state);
        }
    }
    result.final_state = std::move(state);
    return result;
}

std::vector<PipelineStep> transit_steps(const DeviceConfig& cfg, int count) {
    std::vector<PipelineStep> out;
    const Permutation p = permutation_for(cfg);
    for (int i = 0; i < count; ++i) {
        out.emplace_back(Evolve{cfg.tau});
        out.emplace_back(Permute{p});
        out.emplace_back(Couple{cfg.thetas()});
        out.emplace_back(ProjectBVacuum{false});
    }
    return out;
}

std::vector<PipelineStep> simultaneous_schedule(const DeviceConfig& cfg, std::size_t j, std::size_t k, int count) {
    std::vector<PipelineStep> out{InjectB{j}, InjectB{k}, Couple{cfg.thetas()}, ProjectBVacuum{true}};
    const auto rest = transit_steps(cfg, count);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

std::vector<PipelineStep> delayed_schedule(const DeviceConfig& cfg, std::size_t j, std::size_t k, int n_d, int count) {
    if (n_d < 0) throw PreconditionError("delay must be >= 0");
    if (n_d == 0) return simultaneous_schedule(cfg, j, k, count);
    const Permutation p = permutation_for(cfg);
    std::vector<PipelineStep> out{InjectB{j}, Couple{cfg.thetas()}, ProjectBVacuum{true}};
    for (int step = 1; step <= n_d; ++step) {
        out.emplace_back(Evolve{cfg.tau});
        out.emplace_back(Permute{p});
        if (step == n_d) out.emplace_back(InjectB{k});
        out.emplace_back(Couple{cfg.thetas()});
        out.emplace_back(ProjectBVacuum{true});
    }
    const auto rest = transit_steps(cfg, count);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

OracleRun oracle_correlations(const DeviceConfig& cfg, std::size_t j, std::size_t k, int n_d, int count) {
    const auto schedule = delayed_schedule(cfg, j, k, n_d, count);
    const auto result = run_pipeline(cfg, schedule);
    const std::size_t entry_records = n_d == 0 ? 1 : static_cast<std::size_t>(n_d) + 1;
    OracleRun out;
    out.entry_probability = result.records[entry_records - 1].cumulative_postselection;
    for (int s = 1; s <= count; ++s) {
        CorrelationMatrix m;
        m.values = result.records[entry_records - 1 + static_cast<std::size_t>(s)].coincidences;
        m.step = s;
        m.delay = n_d;
        m.input_j = j;
        m.input_k = k;
        m.kind = CorrelationKind::quantum;
        m.rescaled = false;
        out.steps.push_back(std::move(m));
    }
    return out;
}

}  // namespace qwalk::oracle
