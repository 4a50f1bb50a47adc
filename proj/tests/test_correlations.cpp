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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/correlations.hpp"
#include "qwalk/device.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/propagate.hpp"
#include "qwalk/spectra.hpp"

using namespace qwalk;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;

DeviceConfig config(Topology topo, std::size_t n, double theta = kPi / 4, double tau = 1.0) {
    DeviceConfig cfg;
    cfg.topology = topo;
    cfg.n_modes = n;
    cfg.theta = {theta};
    cfg.tau = tau;
    if (topo == Topology::twisted_circle) cfg.shift_c = 0;
    return cfg;
}

DeviceConfig twisted(std::size_t n, long long c) {
    DeviceConfig cfg = config(Topology::twisted_circle, n);
    cfg.shift_c = c;
    return cfg;
}

CorrelationMatrix gamma(const Device& d, int n, std::size_t j, std::size_t k, bool rescaled) {
    return gamma_simultaneous(d.eigensystem, d.permutation, d.config.thetas(), d.config.tau, n, j, k, rescaled);
}

CorrelationMatrix classical(const Device& d, int n, std::size_t j, std::size_t k, bool rescaled) {
    return classical_p(d.eigensystem, d.permutation, d.config.thetas(), d.config.tau, n, j, k, rescaled);
}

CorrelationMatrix delayed(const Device& d, int n, int n_d, std::size_t j, std::size_t k, bool rescaled) {
    return gamma_delayed(d.eigensystem, d.permutation, d.config.thetas(), d.config.tau, n, n_d, j, k, rescaled);
}

/// Random device from one of the three built-in families.
Device random_device(std::mt19937_64& rng, std::size_t max_n = 12) {
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::uniform_real_distribution<double> angle(0.05, kPi / 2);
    std::uniform_real_distribution<double> tau(0.1, 2.0);
    const Topology topos[] = {Topology::cylinder, Topology::moebius, Topology::twisted_circle};
    DeviceConfig cfg = config(topos[rng() % 3], size(rng), angle(rng), tau(rng));
    cfg.omega = u(rng);
    cfg.g = u(rng);
    if (cfg.topology == Topology::twisted_circle) {
        cfg.shift_c = static_cast<long long>(rng() % cfg.n_modes);
        std::vector<double> gv(cfg.n_modes);
        for (std::size_t j = 1; j <= cfg.n_modes; ++j)
            gv[j - 1] = 2 * j > cfg.n_modes + 2 ? gv[cfg.n_modes - j + 1] : u(rng);
        cfg.g_vector = gv;
    }
    return make_device(cfg);
}

double prefactor(double theta, int n) { return std::pow(std::cos(theta), 4 * (n - 1)) * std::pow(std::sin(theta), 4); }

}  // namespace

TEST_CASE("step 0 is the input snapshot") {
    for (auto topo : {Topology::cylinder, Topology::moebius, Topology::twisted_circle}) {
        const auto d = make_device(config(topo, 9));
        const auto m = gamma(d, 0, 1, 7, true);
        for (std::size_t r = 1; r <= 9; ++r)
            for (std::size_t s = 1; s <= 9; ++s) {
                const bool hit = (r == 1 && s == 7) || (r == 7 && s == 1);
                CHECK(std::abs(m.at(r, s) - (hit ? 1.0 : 0.0)) <= 1e-14);
            }
    }
    const auto d = make_device(config(Topology::cylinder, 5));
    CHECK_THROWS_AS(gamma(d, 0, 1, 2, false), PreconditionError);
}

TEST_CASE("two guides at a quarter period show the HOM dip") {
    DeviceConfig cfg = config(Topology::cylinder, 2, kPi / 4, kPi / 4);
    const auto d = make_device(cfg);

    // U(pi/4) = exp(-i (pi/4) sigma_x), substituted by hand.
    const double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
    const Complex u[2][2] = {{c, -1i * s}, {-1i * s, c}};
    auto expected = [&](int r, int t) {
        const Complex a = u[0][r] * u[1][t] + u[0][t] * u[1][r];
        return std::norm(a) / (r == t ? 2.0 : 1.0);
    };
    const auto q = gamma(d, 1, 1, 2, true);
    CHECK(std::abs(q.at(1, 2) - expected(0, 1)) <= 1e-12);
    CHECK(std::abs(q.at(1, 1) - expected(0, 0)) <= 1e-12);
    CHECK(std::abs(q.at(1, 2)) <= 1e-12);
    CHECK(std::abs(q.at(1, 1) - 0.5) <= 1e-12);
    CHECK(std::abs(q.at(2, 2) - 0.5) <= 1e-12);

    const auto p = classical(d, 1, 1, 2, true);
    CHECK(std::abs(p.at(1, 2) - 0.5) <= 1e-12);
    CHECK(std::abs(p.at(1, 1) - 0.25) <= 1e-12);
}

TEST_CASE("one-step correlation is the n = 1 case bit for bit") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_device(rng);
        const std::size_t j = 1 + rng() % d.config.n_modes, k = 1 + rng() % d.config.n_modes;
        const auto one = gamma_one_step(d.eigensystem, d.permutation, d.config.thetas(), d.config.tau, j, k);
        CHECK(one.values == gamma(d, 1, j, k, false).values);
    }
}

TEST_CASE("coupler angle extremes") {
    const auto open = make_device(config(Topology::cylinder, 6, kPi / 2));
    CHECK(gamma(open, 1, 2, 4, false).values == gamma(open, 1, 2, 4, true).values);

    const auto closed = make_device(config(Topology::cylinder, 6, 0.0));
    CHECK(max_abs(gamma(closed, 1, 2, 4, false).values) == 0.0);
    CHECK(coupler_prefactor(0.0, 1) == 0.0);
    CHECK(coupler_prefactor(kPi / 2, 1) == 1.0);
    CHECK(coupler_prefactor(kPi / 2, 2) < 1e-60);
}

TEST_CASE("non-uniform couplers are rejected by the closed forms") {
    DeviceConfig cfg = config(Topology::cylinder, 3);
    cfg.theta = {0.3, 0.4, 0.3};
    const auto d = make_device(cfg);
    CHECK_THROWS_AS(gamma(d, 1, 1, 2, false), UnsupportedConfigError);
    CHECK_THROWS_AS(classical(d, 1, 1, 2, false), UnsupportedConfigError);
    CHECK_THROWS_AS(delayed(d, 1, 1, 1, 2, false), UnsupportedConfigError);
    const std::vector<double> same(3, 0.4);
    CHECK(uniform_theta(same) == 0.4);
}

TEST_CASE("a transit permutation that does not commute with G is rejected") {
    DeviceConfig cfg = config(Topology::custom, 3);
    cfg.custom_g = std::vector<double>{0, 1, 0, 1, 0, 2, 0, 2, 0};
    cfg.custom_perm = std::vector<long long>{3, 2, 1};
    const auto d = make_device(cfg);
    CHECK_THROWS_AS(gamma(d, 1, 1, 2, false), UnsupportedConfigError);
}

TEST_CASE("decoupled guides have no interference") {
    DeviceConfig cfg = config(Topology::cylinder, 4, kPi / 2);
    cfg.g = 0.0;
    const auto d = make_device(cfg);
    const auto q = gamma(d, 1, 1, 2, false);
    const auto p = classical(d, 1, 1, 2, false);
    CHECK(max_abs_diff(q.values, p.values) <= 1e-15);
    CHECK(std::abs(q.at(1, 2) - 1.0) <= 1e-15);
    CHECK(std::abs(q.total() - 1.0) <= 1e-15);
}

TEST_CASE("interference separates quantum and classical statistics") {
    const auto d = make_device(config(Topology::cylinder, 21));
    const auto q = gamma(d, 1, 1, 7, false);
    const auto p = classical(d, 1, 1, 7, false);
    CHECK(max_abs_diff(q.values, p.values) > 1e-6);
}

TEST_CASE("delayed input without delay reproduces simultaneous input") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random_device(rng);
        const std::size_t j = 1 + rng() % d.config.n_modes, k = 1 + rng() % d.config.n_modes;
        const int n = 1 + static_cast<int>(rng() % 4);
        const bool rescaled = rng() % 2;
        CHECK(delayed(d, n, 0, j, k, rescaled).values == gamma(d, n, j, k, rescaled).values);
    }
}

TEST_CASE("one transit of delay on two guides") {
    const auto d = make_device(config(Topology::cylinder, 2, kPi / 4, kPi / 4));
    // U(pi/4) and U(pi/2) = -i sigma_x, substituted by hand.
    const double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
    const Complex u1[2][2] = {{c, -1i * s}, {-1i * s, c}};
    const Complex u2[2][2] = {{0.0, -1i}, {-1i, 0.0}};
    auto expected = [&](int r, int t) {
        const Complex a = u2[0][r] * u1[1][t] + u2[0][t] * u1[1][r];
        return std::norm(a) / (r == t ? 2.0 : 1.0);
    };
    const auto m = delayed(d, 1, 1, 1, 2, true);
    for (int r = 0; r < 2; ++r)
        for (int t = 0; t < 2; ++t) CHECK(std::abs(m.values(r, t) - expected(r, t)) <= 1e-12);
    CHECK(std::abs(m.at(1, 1)) <= 1e-12);
    CHECK(std::abs(m.at(1, 2) - 0.5) <= 1e-12);
    CHECK(std::abs(m.at(2, 2) - 1.0) <= 1e-12);
}

TEST_CASE("optimal coupler angle") {
    CHECK(std::abs(optimal_theta(1) - kPi / 2) <= 1e-15);
    CHECK(std::abs(optimal_theta(2) - kPi / 4) <= 1e-15);
    CHECK_THROWS_AS(optimal_theta(0), PreconditionError);

    const int grid = 1'000'000;
    for (int n = 1; n <= 10; ++n) {
        const double best = coupler_prefactor(optimal_theta(n), n);
        double argmax = 0.0, peak = -1.0;
        bool beaten = false;
        for (int i = 0; i < grid; ++i) {
            const double th = (kPi / 2) * i / (grid - 1);
            const double f = prefactor(th, n);
            if (f > peak) {
                peak = f;
                argmax = th;
            }
            if (f > best * (1 + 1e-12)) beaten = true;
        }
        CHECK_FALSE(beaten);
        CHECK(std::abs(argmax - optimal_theta(n)) <= 1e-5);
    }
}

TEST_CASE("symmetry maps") {
    const auto mirror = symmetry_map(config(Topology::moebius, 21), 1);
    for (std::size_t r = 1; r <= 21; ++r) CHECK(mirror(r) == 22 - r);
    CHECK(symmetry_map(config(Topology::moebius, 21), 3) == mirror);
    CHECK(symmetry_map(config(Topology::moebius, 21), 2).is_identity());

    const auto shift = symmetry_map(twisted(12, 4), 1);
    for (std::size_t r = 1; r <= 12; ++r) CHECK(shift(r) == (r + 3) % 12 + 1);
    CHECK_THROWS_AS(symmetry_map(config(Topology::cylinder, 5), 1), UnsupportedConfigError);
}

TEST_CASE("total coincidence probability equals the coupler prefactor") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = random_device(rng);
        const std::size_t j = 1 + rng() % d.config.n_modes, k = 1 + rng() % d.config.n_modes;
        const int n = 1 + static_cast<int>(rng() % 5);
        const double expected = prefactor(d.config.theta[0], n);
        CHECK(std::abs(gamma(d, n, j, k, false).total() - expected) <= 1e-10);
        CHECK(std::abs(classical(d, n, j, k, false).total() - expected) <= 1e-10);
    }
}

TEST_CASE("correlations are symmetric, non-negative and blind to input order") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = random_device(rng);
        const std::size_t j = 1 + rng() % d.config.n_modes, k = 1 + rng() % d.config.n_modes;
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto q = gamma(d, n, j, k, true);
        const auto p = classical(d, n, j, k, true);
        const auto n_modes = d.config.n_modes;
        for (std::size_t r = 1; r <= n_modes; ++r)
            for (std::size_t s = 1; s <= n_modes; ++s) {
                CHECK(q.at(r, s) == q.at(s, r));
                CHECK(q.at(r, s) >= 0.0);
                CHECK(q.at(r, s) <= 2 * p.at(r, s) + 1e-12);
            }
        CHECK(gamma(d, n, k, j, true).values == q.values);
    }
}

TEST_CASE("Moebius statistics are mirrored cylinder statistics at odd steps") {
    const auto cyl = make_device(config(Topology::cylinder, 21));
    const auto mob = make_device(config(Topology::moebius, 21));
    for (int n = 1; n <= 6; ++n) {
        const auto ref = gamma(cyl, n, 1, 7, true).values;
        const auto got = gamma(mob, n, 1, 7, true).values;
        const auto map = symmetry_map(mob.config, n);
        CHECK(max_abs_diff(got, permute_modes(ref, map, PermuteSide::both)) <= 1e-12);
        if (n % 2 == 0) CHECK(max_abs_diff(got, ref) <= 1e-12);
    }
}

TEST_CASE("twisted ring statistics are shifted untwisted statistics") {
    std::mt19937_64 rng(15);
    for (long long c = 0; c < 12; ++c) {
        const auto plain = make_device(twisted(12, 0));
        const auto twist = make_device(twisted(12, c));
        const std::size_t j = 1 + rng() % 12, k = 1 + rng() % 12;
        for (int n = 1; n <= 4; ++n) {
            const auto ref = gamma(plain, n, j, k, true).values;
            const auto got = gamma(twist, n, j, k, true).values;
            for (std::size_t r = 1; r <= 12; ++r)
                for (std::size_t s = 1; s <= 12; ++s) {
                    const std::size_t rr = (r - 1 + n * c) % 12, ss = (s - 1 + n * c) % 12;
                    CHECK(std::abs(got(rr, ss) - ref(r - 1, s - 1)) <= 1e-12);
                }
        }
    }
}

TEST_CASE("uniform vector is a simultaneous eigenmode of a ring and its shift") {
    const auto d = make_device(twisted(3, 1));
    const auto clusters = invariant_modes(d.eigensystem, d.permutation);
    bool found = false;
    for (const auto& c : clusters) {
        for (const auto& v : c.invariant_basis) {
            double spread = 0.0;
            for (const auto& x : v) spread = std::max(spread, std::abs(std::abs(x) - 1 / std::sqrt(3.0)));
            if (spread <= 1e-12) found = true;
        }
        if (std::abs(c.eigenvalue - 2.0) <= 1e-12) CHECK(c.invariant());
    }
    CHECK(found);
}

TEST_CASE("mirror-invariant modes of the open array are the odd-index ones") {
    for (std::size_t n = 2; n <= 12; ++n) {
        const auto d = make_device(config(Topology::moebius, n));
        const auto clusters = invariant_modes(d.eigensystem, d.permutation);
        REQUIRE(clusters.size() == n);
        for (const auto& c : clusters) {
            REQUIRE(c.modes.size() == 1);
            const auto k = c.modes.front();
            CHECK(c.invariant() == (k % 2 == 1));
            // Direct parity check on the eigenvector itself.
            double odd_part = 0.0;
            for (std::size_t j = 1; j <= n; ++j)
                odd_part = std::max(odd_part, std::abs(d.eigensystem.v(n + 1 - j, k) - d.eigensystem.v(j, k)));
            CHECK((odd_part <= 1e-9) == c.invariant());
        }
    }
}

TEST_CASE("identity permutation leaves every mode invariant") {
    const auto d = make_device(config(Topology::cylinder, 8));
    const auto clusters = invariant_modes(d.eigensystem, d.permutation);
    std::size_t dims = 0;
    for (const auto& c : clusters) dims += c.invariant_basis.size();
    CHECK(dims == 8);
}

TEST_CASE("degenerate clusters yield the invariant subspace") {
    // Ring of 6 with unit shift: the +/- pairs are degenerate and only the
    // uniform vector is shift invariant.
    const auto d = make_device(twisted(6, 1));
    const auto clusters = invariant_modes(d.eigensystem, d.permutation);
    std::size_t dims = 0;
    for (const auto& c : clusters) dims += c.invariant_basis.size();
    CHECK(dims == 1);

    // Shift by 3 on a ring of 6: invariant vectors satisfy x_k = x_{k+3}, a
    // 3-dimensional space spread over the clusters.
    const auto half = make_device(twisted(6, 3));
    dims = 0;
    for (const auto& c : invariant_modes(half.eigensystem, half.permutation)) {
        dims += c.invariant_basis.size();
        for (const auto& v : c.invariant_basis) {
            for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(v[k] - v[(k + 3) % 6]) <= 1e-9);
            double norm = 0.0;
            for (const auto& x : v) norm += std::norm(x);
            CHECK(std::abs(norm - 1.0) <= 1e-12);
        }
    }
    CHECK(dims == 3);
}

TEST_CASE("two photons in invariant normal modes have step-independent statistics") {
    SUBCASE("ring of four, both photons in the uniform mode") {
        const auto d = make_device(twisted(4, 1));
        const ComplexVector uniform(4, Complex(0.5, 0.0));
        const auto check =
            two_photon_invariant_check(d.eigensystem, d.permutation, d.config.thetas(), 1.0, uniform, uniform);
        CHECK(check.constant);
        CHECK(check.max_deviation <= 1e-9);
        CHECK(check.rescaled.size() == 4);
    }
    SUBCASE("Moebius array of five, two odd-index modes") {
        const auto d = make_device(config(Topology::moebius, 5));
        ComplexVector x(5), y(5);
        for (std::size_t j = 1; j <= 5; ++j) {
            x[j - 1] = d.eigensystem.v(j, 1);
            y[j - 1] = d.eigensystem.v(j, 3);
        }
        const auto check = two_photon_invariant_check(d.eigensystem, d.permutation, d.config.thetas(), 1.0, x, y);
        CHECK(check.constant);
        CHECK(check.max_deviation <= 1e-9);
    }
    SUBCASE("modes that the transit scrambles give changing statistics") {
        // Asymmetric open array under the mirror map: its normal modes are not
        // mirror eigenvectors, so the pattern moves between transits.
        DeviceConfig cfg = config(Topology::custom, 3);
        cfg.custom_g = std::vector<double>{0, 1, 0, 1, 0, 2, 0, 2, 0};
        cfg.custom_perm = std::vector<long long>{3, 2, 1};
        const auto d = make_device(cfg);
        ComplexVector x(3), y(3);
        for (std::size_t j = 1; j <= 3; ++j) {
            x[j - 1] = d.eigensystem.v(j, 1);
            y[j - 1] = d.eigensystem.v(j, 3);
        }
        const auto check = two_photon_invariant_check(d.eigensystem, d.permutation, d.config.thetas(), 1.0, x, y);
        CHECK_FALSE(check.constant);
        CHECK(check.max_deviation > 1e-3);
    }
    SUBCASE("a vector that is not a normal mode is a precondition error") {
        const auto d = make_device(config(Topology::moebius, 5));
        ComplexVector x(5, 0.0);
        x[0] = 1.0;
        CHECK_THROWS_AS(two_photon_invariant_check(d.eigensystem, d.permutation, d.config.thetas(), 1.0, x, x),
                        PreconditionError);
    }
}
