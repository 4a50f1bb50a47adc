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

#include "qwalk/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwalk/errors.hpp"
#include "qwalk/fock_oracle.hpp"
#include "qwalk/propagate.hpp"
#include "qwalk/spectra.hpp"

namespace qwalk {

double coupler_prefactor(double theta, int n) {
    if (n < 1) throw PreconditionError("coupler prefactor needs n >= 1");
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    return std::pow(c2 * c2, n - 1) * s2 * s2;
}

double uniform_theta(std::span<const double> theta) {
    if (theta.empty()) throw UnsupportedConfigError("no coupler angle given");
    for (double t : theta)
        if (t != theta.front())
            throw UnsupportedConfigError("closed-form correlations require a uniform coupler angle");
    return theta.front();
}

namespace {

void check_inputs(std::size_t n_modes, std::size_t j, std::size_t k) {
    if (j < 1 || j > n_modes || k < 1 || k > n_modes)
        throw PreconditionError("input guides must lie in 1..N");
}

void check_step(int n, bool rescaled) {
    if (n < 0) throw PreconditionError("step n must be >= 0");
    if (n == 0 && !rescaled) throw PreconditionError("n = 0 is only defined for rescaled output");
}

// The closed forms fold n transits into U(n tau) and p_n, which is only valid
// when the permutation commutes with the coupling matrix.
void check_symmetry(const EigenSystem& es, const Permutation& p) {
    if (p.size() != es.size()) throw PreconditionError("permutation / eigensystem size mismatch");
    if (p.is_identity()) return;
    const RealMatrix g = reconstruct(es);
    const double tol = 1e-10 * std::max(1.0, max_abs(g));
    for (std::size_t a = 1; a <= g.rows(); ++a)
        for (std::size_t b = 1; b <= g.cols(); ++b)
            if (std::abs(g(p(a) - 1, p(b) - 1) - g(a - 1, b - 1)) > tol)
                throw UnsupportedConfigError(
                    "transit permutation is not a symmetry of the coupling matrix; use the oracle instead");
}

struct Amplitudes {
    TransferMatrix first;
    TransferMatrix second;
    Permutation first_inv;
    Permutation second_inv;

    Complex direct(std::size_t j, std::size_t k, std::size_t r, std::size_t s) const {
        return first.at(j, first_inv(r)) * second.at(k, second_inv(s));
    }
};

// First photon has made `n_first` transits, second photon `n_second`.
Amplitudes amplitudes(const EigenSystem& es, const Permutation& p, double tau, int n_first, int n_second) {
    return Amplitudes{transfer_matrix(es, n_first * tau), transfer_matrix(es, n_second * tau),
                      compose(p, -static_cast<long long>(n_first)), compose(p, -static_cast<long long>(n_second))};
}

CorrelationMatrix quantum(const EigenSystem& es, const Permutation& p, std::span<const double> theta, double tau,
                          int n, int n_d, std::size_t j, std::size_t k, bool rescaled) {
    const double th = uniform_theta(theta);
    check_step(n, rescaled);
    if (n_d < 0) throw PreconditionError("delay n_d must be >= 0");
    const std::size_t size = es.size();
    check_inputs(size, j, k);
    check_symmetry(es, p);

    const auto amp = amplitudes(es, p, tau, n + n_d, n);
    double scale = rescaled ? 1.0 : coupler_prefactor(th, n);
    // Two simultaneous photons in one guide form a state of norm sqrt(2).
    if (n_d == 0 && j == k) scale *= 0.5;

    CorrelationMatrix out;
    out.values = RealMatrix(size, size);
    out.step = n;
    out.delay = n_d;
    out.input_j = j;
    out.input_k = k;
    out.kind = CorrelationKind::quantum;
    out.rescaled = rescaled;
    for (std::size_t r = 1; r <= size; ++r) {
        for (std::size_t s = r; s <= size; ++s) {
            const Complex a = amp.direct(j, k, r, s) + amp.direct(j, k, s, r);
            const double v = scale * std::norm(a) / (r == s ? 2.0 : 1.0);
            out.values(r - 1, s - 1) = v;
            out.values(s - 1, r - 1) = v;
        }
    }
    return out;
}

}  // namespace

CorrelationMatrix gamma_simultaneous(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                                     double tau, int n, std::size_t j, std::size_t k, bool rescaled) {
    return quantum(es, p, theta, tau, n, 0, j, k, rescaled);
}

CorrelationMatrix gamma_one_step(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                                 double tau, std::size_t j, std::size_t k) {
    return gamma_simultaneous(es, p, theta, tau, 1, j, k, false);
}

CorrelationMatrix gamma_delayed(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                                double tau, int n, int n_d, std::size_t j, std::size_t k, bool rescaled) {
    return quantum(es, p, theta, tau, n, n_d, j, k, rescaled);
}

CorrelationMatrix classical_p(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                              double tau, int n, std::size_t j, std::size_t k, bool rescaled) {
    const double th = uniform_theta(theta);
    check_step(n, rescaled);
    const std::size_t size = es.size();
    check_inputs(size, j, k);
    check_symmetry(es, p);

    const auto amp = amplitudes(es, p, tau, n, n);
    const double scale = rescaled ? 1.0 : coupler_prefactor(th, n);

    CorrelationMatrix out;
    out.values = RealMatrix(size, size);
    out.step = n;
    out.input_j = j;
    out.input_k = k;
    out.kind = CorrelationKind::classical;
    out.rescaled = rescaled;
    for (std::size_t r = 1; r <= size; ++r) {
        for (std::size_t s = r; s <= size; ++s) {
            const double sum = std::norm(amp.direct(j, k, r, s)) + std::norm(amp.direct(j, k, s, r));
            const double v = scale * sum / (r == s ? 2.0 : 1.0);
            out.values(r - 1, s - 1) = v;
            out.values(s - 1, r - 1) = v;
        }
    }
    return out;
}

double optimal_theta(int n) {
    if (n < 1) throw PreconditionError("optimal_theta needs n >= 1");
    return std::acos(std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n)));
}

Permutation symmetry_map(const DeviceConfig& cfg, int n) {
    if (cfg.topology != Topology::moebius && cfg.topology != Topology::twisted_circle)
        throw UnsupportedConfigError("symmetry_map supports moebius and twisted_circle only");
    if (n < 0) throw PreconditionError("step n must be >= 0");
    return compose(permutation_for(cfg), n);
}

namespace {

// Orthonormal basis of the null space of a Hermitian PSD matrix, via the real
// symmetric embedding [[Re, -Im], [Im, Re]].
std::vector<ComplexVector> hermitian_null_space(const ComplexMatrix& a, double threshold) {
    const std::size_t m = a.rows();
    RealMatrix embed(2 * m, 2 * m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = r; c < m; ++c) {
            // Average with the conjugate partner so the embedding is exactly symmetric.
            const Complex h = 0.5 * (a(r, c) + std::conj(a(c, r)));
            const double re = h.real();
            const double im = r == c ? 0.0 : h.imag();
            embed(r, c) = embed(c, r) = re;
            embed(m + r, m + c) = embed(m + c, m + r) = re;
            embed(m + r, c) = im;
            embed(c, m + r) = im;
            embed(r, m + c) = -im;
            embed(m + c, r) = -im;
        }
    }
    const EigenSystem es = eigen_numeric(CouplingMatrix(std::move(embed)));
    std::vector<ComplexVector> out;
    for (std::size_t col = 0; col < es.size(); ++col) {
        if (es.eigenvalues[col] > threshold) continue;
        ComplexVector c(m);
        for (std::size_t i = 0; i < m; ++i)
            c[i] = Complex(es.eigenvectors(i, col).real(), es.eigenvectors(m + i, col).real());
        out.push_back(std::move(c));
    }
    return out;
}

double mismatch_under(const Permutation& p_inv, const ComplexVector& x) {
    double worst = 0.0;
    for (std::size_t k = 1; k <= x.size(); ++k) worst = std::max(worst, std::abs(x[p_inv(k) - 1] - x[k - 1]));
    return worst;
}

// Gram-Schmidt against `basis`; appends the normalized remainder if it is
// not (numerically) dependent.
void orthonormal_append(std::vector<ComplexVector>& basis, ComplexVector x) {
    for (const auto& b : basis) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) dot += std::conj(b[i]) * x[i];
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dot * b[i];
    }
    double norm = 0.0;
    for (const auto& z : x) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm < 0.5) return;
    for (auto& z : x) z /= norm;
    basis.push_back(std::move(x));
}

}  // namespace

std::vector<ModeCluster> invariant_modes(const EigenSystem& es, const Permutation& p, InvarianceOptions opts) {
    const std::size_t n = es.size();
    if (p.size() != n) throw PreconditionError("permutation / eigensystem size mismatch");
    const Permutation p_inv = p.inverse();

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return es.eigenvalues[a] < es.eigenvalues[b]; });
    double scale = 0.0;
    for (double l : es.eigenvalues) scale = std::max(scale, std::abs(l));
    const double gap = opts.degeneracy * scale;

    std::vector<ModeCluster> clusters;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t col = order[i];
        if (clusters.empty() || es.eigenvalues[col] - es.eigenvalues[clusters.back().modes.back() - 1] > gap) {
            clusters.push_back(ModeCluster{es.eigenvalues[col], {}, {}});
        }
        clusters.back().modes.push_back(col + 1);
    }

    for (auto& cl : clusters) {
        if (!cl.degenerate()) {
            ComplexVector v(n);
            for (std::size_t r = 0; r < n; ++r) v[r] = es.eigenvectors(r, cl.modes.front() - 1);
            if (mismatch_under(p_inv, v) <= opts.tol) cl.invariant_basis.push_back(std::move(v));
            continue;
        }
        double sum = 0.0;
        for (auto m : cl.modes) sum += es.eigenvalues[m - 1];
        cl.eigenvalue = sum / static_cast<double>(cl.modes.size());

        // B = (P - I) W with (P x)_r = x_{p^-1(r)}; null space of B^dagger B.
        const std::size_t m = cl.modes.size();
        ComplexMatrix b(n, m);
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t r = 1; r <= n; ++r)
                b(r - 1, c) = es.eigenvectors(p_inv(r) - 1, cl.modes[c] - 1) - es.eigenvectors(r - 1, cl.modes[c] - 1);
        ComplexMatrix gram(m, m);
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y) {
                Complex acc = 0.0;
                for (std::size_t r = 0; r < n; ++r) acc += std::conj(b(r, x)) * b(r, y);
                gram(x, y) = acc;
            }
        for (auto& coeffs : hermitian_null_space(gram, static_cast<double>(n) * opts.tol * opts.tol)) {
            ComplexVector v(n, 0.0);
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t r = 0; r < n; ++r) v[r] += coeffs[c] * es.eigenvectors(r, cl.modes[c] - 1);
            orthonormal_append(cl.invariant_basis, std::move(v));
        }
        std::erase_if(cl.invariant_basis, [&](const ComplexVector& v) { return mismatch_under(p_inv, v) > opts.tol; });
    }
    return clusters;
}

InvarianceCheck two_photon_invariant_check(const EigenSystem& es, const Permutation& p, std::span<const double> theta,
                                           double tau, std::span<const Complex> x, std::span<const Complex> y,
                                           int steps, double tol) {
    const std::size_t n = es.size();
    if (x.size() != n || y.size() != n) throw PreconditionError("mode vectors must have N entries");
    if (steps < 1) throw PreconditionError("need at least one step");
    const double th = uniform_theta(theta);
    for (int s = 1; s <= steps; ++s)
        if (coupler_prefactor(th, s) == 0.0) throw PreconditionError("coupler angle leaves no coincidences to rescale");

    RealMatrix g = reconstruct(es);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) g(r, c) = g(c, r) = 0.5 * (g(r, c) + g(c, r));

    const double gscale = std::max(1.0, max_abs(g));
    for (auto vec : {x, y}) {
        double nrm = 0.0;
        for (const auto& z : vec) nrm += std::norm(z);
        if (nrm == 0.0) throw PreconditionError("mode vector is zero");
        // Rayleigh quotient then residual |G x - lambda x| on the normalized vector.
        ComplexVector gx(n, 0.0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) gx[r] += g(r, c) * vec[c];
        Complex rq = 0.0;
        for (std::size_t r = 0; r < n; ++r) rq += std::conj(vec[r]) * gx[r];
        rq /= nrm;
        double resid = 0.0;
        for (std::size_t r = 0; r < n; ++r) resid = std::max(resid, std::abs(gx[r] - rq * vec[r]) / std::sqrt(nrm));
        if (resid > 1e-9 * gscale) throw PreconditionError("mode vector is not a normal mode of the coupling matrix");
    }

    DeviceConfig cfg;
    cfg.topology = Topology::custom;
    cfg.n_modes = n;
    cfg.theta.assign(theta.begin(), theta.end());
    cfg.tau = tau;
    cfg.custom_g = g.data();
    std::vector<long long> perm(n);
    for (std::size_t j = 1; j <= n; ++j) perm[j - 1] = static_cast<long long>(p(j));
    cfg.custom_perm = perm;

    const auto initial = oracle::FockState::from_array_modes(n, x, y);
    const auto schedule = oracle::transit_steps(cfg, steps);
    const auto result = oracle::run_pipeline(cfg, schedule, initial);

    InvarianceCheck out;
    for (int s = 1; s <= steps; ++s) {
        RealMatrix m = result.records[static_cast<std::size_t>(s - 1)].coincidences;
        const double pref = coupler_prefactor(th, s);
        for (auto& v : m.data()) v /= pref;
        out.rescaled.push_back(std::move(m));
    }
    for (const auto& m : out.rescaled) out.max_deviation = std::max(out.max_deviation, max_abs_diff(m, out.rescaled.front()));
    out.constant = out.max_deviation <= tol;
    return out;
}

}  // namespace qwalk
