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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qwalk/errors.hpp"
#include "qwalk/model.hpp"
#include "qwalk/propagate.hpp"

using namespace qwalk;

namespace {

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.rule == rule; });
}

DeviceConfig twisted(std::size_t n, long long c) {
    DeviceConfig cfg;
    cfg.topology = Topology::twisted_circle;
    cfg.n_modes = n;
    cfg.shift_c = c;
    return cfg;
}

}  // namespace

TEST_CASE("coupling matrix rejects asymmetric, ragged and non-finite input") {
    CHECK_NOTHROW(CouplingMatrix(RealMatrix{{0, 1}, {1, 0}}));
    CHECK_THROWS_AS(CouplingMatrix(RealMatrix{{0, 1}, {1.0000001, 0}}), ConfigError);
    CHECK_THROWS_AS(CouplingMatrix(RealMatrix(2, 3)), ConfigError);
    CHECK_THROWS_AS(CouplingMatrix{RealMatrix{}}, ConfigError);
    CHECK_THROWS_AS(CouplingMatrix(RealMatrix{{NAN}}), ConfigError);
    CHECK_THROWS_AS(CouplingMatrix(RealMatrix{{INFINITY}}), ConfigError);
    const CouplingMatrix g(RealMatrix{{2, 3}, {3, 5}});
    CHECK(g.at(1, 2) == 3);
    CHECK(g.at(2, 2) == 5);
}

TEST_CASE("permutation must be a bijection on 1..N") {
    CHECK_NOTHROW(Permutation({3, 1, 2}));
    CHECK_THROWS_AS(Permutation({1, 1, 2}), ConfigError);
    CHECK_THROWS_AS(Permutation({0, 1, 2}), ConfigError);
    CHECK_THROWS_AS(Permutation({1, 2, 4}), ConfigError);

    const Permutation p({3, 1, 2});
    const Permutation inv = p.inverse();
    for (std::size_t j = 1; j <= 3; ++j) {
        CHECK(inv(p(j)) == j);
        CHECK(p(inv(j)) == j);
    }
    CHECK(p.after(inv).is_identity());
    CHECK(p.after(p)(1) == p(p(1)));
}

TEST_CASE("transit permutations of the built-in topologies") {
    DeviceConfig moebius;
    moebius.topology = Topology::moebius;
    moebius.n_modes = 7;
    const Permutation m = permutation_for(moebius);
    CHECK(m(1) == 7);
    CHECK(m(4) == 4);

    DeviceConfig cylinder;
    cylinder.n_modes = 9;
    CHECK(permutation_for(cylinder).is_identity());

    CHECK(permutation_for(twisted(12, 4))(10) == 2);
    CHECK(permutation_for(twisted(12, 0)).is_identity());

    DeviceConfig custom;
    custom.topology = Topology::custom;
    custom.n_modes = 3;
    custom.custom_g = std::vector<double>(9, 0.0);
    custom.custom_perm = std::vector<long long>{2, 3, 1};
    CHECK(permutation_for(custom) == Permutation({2, 3, 1}));
}

TEST_CASE("shift outside 0..N-1 is a configuration error") {
    CHECK_THROWS_AS(permutation_for(twisted(5, 5)), ConfigError);
    CHECK_THROWS_AS(permutation_for(twisted(5, -1)), ConfigError);
    CHECK(has_rule(validate_device(twisted(5, 7)), "shift range"));
}

TEST_CASE("mirror permutation is an involution for every N") {
    for (std::size_t n = 1; n <= 25; ++n) {
        DeviceConfig cfg;
        cfg.topology = Topology::moebius;
        cfg.n_modes = n;
        const Permutation p = permutation_for(cfg);
        CHECK(p.after(p).is_identity());
        CHECK(p.size() == n);
    }
}

TEST_CASE("cyclic shift has order N / gcd(N, c)") {
    for (std::size_t n = 1; n <= 16; ++n) {
        for (long long c = 0; c < static_cast<long long>(n); ++c) {
            const Permutation p = permutation_for(twisted(n, c));
            const long long order = static_cast<long long>(n) / std::gcd(static_cast<long long>(n), c);
            CHECK(compose(p, order).is_identity());
            for (long long k = 1; k < order; ++k) CHECK_FALSE(compose(p, k).is_identity());
        }
    }
    CHECK(compose(permutation_for(twisted(12, 4)), 3).is_identity());
}

TEST_CASE("device validation") {
    DeviceConfig ok;
    ok.n_modes = 7;
    ok.theta = {std::numbers::pi / 4};
    CHECK(validate_device(ok).empty());

    DeviceConfig bad_angle = ok;
    bad_angle.theta = std::vector<double>(7, 0.3);
    bad_angle.theta[0] = -0.1;
    CHECK(has_rule(validate_device(bad_angle), "coupler angle range"));
    bad_angle.theta[0] = std::numbers::pi / 2 + 1e-9;
    CHECK(has_rule(validate_device(bad_angle), "coupler angle range"));

    DeviceConfig wrong_count = ok;
    wrong_count.theta = {0.1, 0.2};
    CHECK(has_rule(validate_device(wrong_count), "coupler angle count"));

    DeviceConfig bad_tau = ok;
    bad_tau.tau = 0.0;
    CHECK(has_rule(validate_device(bad_tau), "transit time"));

    DeviceConfig no_modes = ok;
    no_modes.n_modes = 0;
    CHECK(has_rule(validate_device(no_modes), "mode count"));

    DeviceConfig stray = ok;
    stray.shift_c = 1;
    CHECK(has_rule(validate_device(stray), "unused key"));
}

TEST_CASE("circulant coupling vector must be mirror symmetric") {
    DeviceConfig cfg = twisted(5, 1);
    cfg.g_vector = std::vector<double>{0.0, 1.0, 0.5, 0.5, 1.0};
    CHECK(validate_device(cfg).empty());
    cfg.g_vector = std::vector<double>{0.0, 1.0, 0.5, 0.4, 1.0};
    CHECK(has_rule(validate_device(cfg), "circulant symmetry"));
    cfg.g_vector = std::vector<double>{0.0, 1.0, 0.5};
    CHECK(has_rule(validate_device(cfg), "circulant length"));
}

TEST_CASE("custom topology needs a symmetric matrix and a bijection") {
    DeviceConfig cfg;
    cfg.topology = Topology::custom;
    cfg.n_modes = 2;
    cfg.custom_g = std::vector<double>{0, 1, 1, 0};
    cfg.custom_perm = std::vector<long long>{2, 1};
    CHECK(validate_device(cfg).empty());
    cfg.custom_g = std::vector<double>{0, 1, 2, 0};
    CHECK(has_rule(validate_device(cfg), "custom symmetry"));
    cfg.custom_g = std::vector<double>{0, 1, 1};
    CHECK(has_rule(validate_device(cfg), "custom coupling"));
    cfg.custom_g = std::vector<double>{0, 1, 1, 0};
    cfg.custom_perm = std::vector<long long>{1, 1};
    CHECK(has_rule(validate_device(cfg), "custom permutation"));
}

TEST_CASE("violations are reported together") {
    DeviceConfig cfg;
    cfg.n_modes = 3;
    cfg.theta = {2.0};
    cfg.tau = -1.0;
    const auto v = validate_device(cfg);
    CHECK(v.size() >= 2);
    const std::string report = format_violations(v);
    CHECK(report.find("coupler angle range") != std::string::npos);
    CHECK(report.find("transit time") != std::string::npos);
}

TEST_CASE("topology and kind names round-trip") {
    for (auto t : {Topology::cylinder, Topology::moebius, Topology::twisted_circle, Topology::custom})
        CHECK(topology_from_string(to_string(t)) == t);
    CHECK_THROWS_AS(topology_from_string("torus"), ConfigError);
    for (auto k : {CorrelationKind::quantum, CorrelationKind::classical})
        CHECK(correlation_kind_from_string(to_string(k)) == k);
}

TEST_CASE("correlation total counts each unordered pair once") {
    CorrelationMatrix m;
    m.values = RealMatrix{{0.1, 0.2}, {0.2, 0.3}};
    CHECK(m.total() == doctest::Approx(0.6));
    CHECK(m.at(1, 2) == 0.2);
}
