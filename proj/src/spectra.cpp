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

#include "qwalk/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void check_circulant(std::size_t n, std::span<const double> gv) {
    if (gv.size() != n) throw ConfigError("circulant vector must have N entries");
    for (std::size_t j = 1; j <= n; ++j) {
        if (2 * j <= n + 2) continue;
        if (gv[j - 1] != gv[n - j + 1])
            throw ConfigError("circulant symmetry violated: g_" + std::to_string(j) + " != g_" +
                              std::to_string(n - j + 2));
    }
}

}  // namespace

CouplingMatrix build_tridiagonal(std::size_t n, double omega, double g) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = omega;
        if (i + 1 < n) {
            m(i, i + 1) = g;
            m(i + 1, i) = g;
        }
    }
    return CouplingMatrix(std::move(m));
}

CouplingMatrix build_circulant(std::size_t n, std::span<const double> g_vector) {
    check_circulant(n, g_vector);
    RealMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = g_vector[(c + n - r) % n];
    return CouplingMatrix(std::move(m));
}

EigenSystem eigen_tridiagonal(std::size_t n, double omega, double g) {
    EigenSystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors = ComplexMatrix(n, n);
    const double denom = static_cast<double>(n + 1);
    const double norm = std::sqrt(2.0 / denom);
    for (std::size_t j = 1; j <= n; ++j) {
        es.eigenvalues[j - 1] = omega + 2.0 * g * std::cos(static_cast<double>(j) * std::numbers::pi / denom);
        for (std::size_t k = 1; k <= n; ++k) {
            // Reduce jk mod 2(N+1) so the sine argument stays in [0, 2pi).
            const std::size_t jk = (j * k) % (2 * (n + 1));
            es.eigenvectors(j - 1, k - 1) = norm * std::sin(static_cast<double>(jk) * std::numbers::pi / denom);
        }
    }
    return es;
}

EigenSystem eigen_circulant(std::size_t n, std::span<const double> g_vector) {
    check_circulant(n, g_vector);
    EigenSystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors = ComplexMatrix(n, n);
    const double two_pi_over_n = 2.0 * std::numbers::pi / static_cast<double>(n);
    const double scale = std::max(1.0, std::accumulate(g_vector.begin(), g_vector.end(), 0.0,
                                                       [](double a, double b) { return a + std::abs(b); }));
    for (std::size_t j = 0; j < n; ++j) {
        Complex lambda = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            lambda += g_vector[k] * std::polar(1.0, two_pi_over_n * static_cast<double>((j * k) % n));
        if (std::abs(lambda.imag()) > 1e-12 * scale)
            throw NumericError("circulant eigenvalue is not real", std::abs(lambda.imag()));
        es.eigenvalues[j] = lambda.real();
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            es.eigenvectors(j, k) = std::polar(norm, -two_pi_over_n * static_cast<double>((j * k) % n));
    return es;
}

EigenSystem eigen_numeric(const CouplingMatrix& g, JacobiOptions opts) {
    const std::size_t n = g.n_modes();
    RealMatrix a = g.matrix();
    RealMatrix v = RealMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
        return std::sqrt(s);
    };
    double frob = 0.0;
    for (double x : a.data()) frob += x * x;
    frob = std::sqrt(frob);
    const double target = 1e-15 * std::max(frob, 1e-300);

    int sweep = 0;
    for (; sweep < opts.max_sweeps; ++sweep) {
        if (off_norm() <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // Rotation angle that annihilates a(p,q); smaller root for stability.
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (off_norm() > target) throw NumericError("Jacobi sweep budget exhausted", off_norm());

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    EigenSystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        es.eigenvalues[col] = a(order[col], order[col]);
        for (std::size_t r = 0; r < n; ++r) es.eigenvectors(r, col) = v(r, order[col]);
    }
    return es;
}

}  // namespace qwalk
