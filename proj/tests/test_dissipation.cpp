// Copyright 2026 The qsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"

#include "qsync/dissipation.hpp"
#include "qsync/errors.hpp"

#include <doctest.h>

#include <limits>
#include <set>

using namespace qsync;

TEST_CASE("fermionic probabilities") {
    const auto half = fermionic_probabilities(0.0);
    CHECK(half.up == 0.5);
    CHECK(half.down == 0.5);
    const auto p = fermionic_probabilities(1.9e-5);
    CHECK(p.up == doctest::Approx(0.499981).epsilon(1e-6));
    CHECK(p.up + p.down == doctest::Approx(1.0).epsilon(1e-16));
    for (double eps : {1e-5, 1e-2}) {
        const auto q = fermionic_probabilities(eps);
        CHECK(q.up / q.down == doctest::Approx(std::exp(-4.0 * eps)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(fermionic_probabilities(-1e-9), std::invalid_argument);
    CHECK_THROWS_AS(fermionic_probabilities(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("transition rate") {
    CHECK(transition_rate(10.0) == doctest::Approx(0.6283185307).epsilon(1e-10));
    CHECK(transition_rate(1.0) == doctest::Approx(kTwoPi));
    CHECK(transition_rate(std::numeric_limits<double>::infinity()) == 0.0);
    CHECK_THROWS_AS(transition_rate(0.0), std::invalid_argument);
    CHECK_THROWS_AS(transition_rate(-3.0), std::invalid_argument);
}

TEST_CASE("jump operator set") {
    SUBCASE("symmetric infinite-temperature bath") {
        const auto jumps = build_jump_operators(SpinSystemConfig::with_coupling(868.0));
        REQUIRE(jumps.size() == 8);
        for (const auto& j : jumps) {
            CHECK(j.weight == doctest::Approx(std::sqrt(0.6283185307179586 * 0.5)).epsilon(1e-14));
            int nonzero = 0;
            for (int i = 0; i < 16; ++i) nonzero += j.matrix(i) != Complex(0.0, 0.0);
            CHECK(nonzero == 1);
            CHECK(std::abs(j.matrix(BasisOrdering::index(j.to), BasisOrdering::index(j.from))) == j.weight);
        }
    }
    SUBCASE("only single-quantum links, each in both directions") {
        const auto jumps = build_jump_operators(SpinSystemConfig::with_coupling(868.0, 1e-3, 2e-3));
        std::set<std::pair<int, int>> links;
        int up = 0, down = 0, p = 0, f = 0;
        for (const auto& j : jumps) {
            const int a = BasisOrdering::index(j.from), b = BasisOrdering::index(j.to);
            const int diff = a ^ b;
            CHECK((diff == 1 || diff == 2));
            CHECK((diff == 2) == (j.species == Species::P));
            links.insert({a, b});
            (j.direction == Direction::Up ? up : down)++;
            (j.species == Species::P ? p : f)++;
            // Upward means ending on the qubit-0 (upper) state of the flipped spin.
            const int mask = diff;
            CHECK((j.direction == Direction::Up) == ((b & mask) == 0));
        }
        CHECK(links.size() == 8);
        CHECK(up == 4);
        CHECK(down == 4);
        CHECK(p == 4);
        CHECK(f == 4);
    }
    SUBCASE("matches the enumerated oracle set") {
        SpinSystemConfig c = SpinSystemConfig::with_coupling(868.0, 3e-3, 7e-3);
        c.t1_p_s = 4.0;
        c.t1_f_s = 9.0;
        const auto jumps = build_jump_operators(c);
        const auto ref = oracle::transition_jumps({3e-3, 7e-3, 4.0, 9.0});
        REQUIRE(ref.size() == 8);
        for (const auto& r : ref) {
            bool found = false;
            for (const auto& j : jumps) found = found || max_abs(Matrix4c(j.matrix - r)) < 1e-15;
            CHECK(found);
        }
    }
    SUBCASE("escape rates per level") {
        SpinSystemConfig c = SpinSystemConfig::with_coupling(868.0, 2e-3, 5e-3);
        c.t1_p_s = 3.0;
        const auto jumps = build_jump_operators(c);
        Matrix4c sum = Matrix4c::Zero();
        for (const auto& j : jumps) sum += j.matrix.adjoint() * j.matrix;
        const double gp = kTwoPi / 3.0, gf = kTwoPi / 10.0;
        const auto pp = fermionic_probabilities(2e-3), pf = fermionic_probabilities(5e-3);
        for (int k = 0; k < 4; ++k) {
            // Bit 0 of a spin is its upper state, which can only decay.
            const double p_exit = (k & 2) == 0 ? gp * pp.down : gp * pp.up;
            const double f_exit = (k & 1) == 0 ? gf * pf.down : gf * pf.up;
            CHECK(sum(k, k).real() == doctest::Approx(p_exit + f_exit).epsilon(1e-14));
            for (int l = 0; l < 4; ++l)
                if (l != k) CHECK(sum(k, l) == Complex(0.0, 0.0));
        }
    }
}

TEST_CASE("rate-matrix stationary distribution obeys detailed balance") {
    const SpinSystemConfig c = SpinSystemConfig::with_coupling(868.0, 4e-3, 9e-3);
    const auto jumps = build_jump_operators(c);
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    for (const auto& j : jumps) {
        const int a = BasisOrdering::index(j.from), b = BasisOrdering::index(j.to);
        w(b, a) += j.weight * j.weight;
        w(a, a) -= j.weight * j.weight;
    }
    Eigen::FullPivLU<Eigen::Matrix4d> lu(w);
    REQUIRE(lu.dimensionOfKernel() == 1);
    Eigen::Vector4d pop = lu.kernel().col(0);
    pop /= pop.sum();
    for (const auto& j : jumps) {
        if (j.direction != Direction::Up) continue;
        const double eps = j.species == Species::P ? c.epsilon_p : c.epsilon_f;
        const double ratio = pop(BasisOrdering::index(j.to)) / pop(BasisOrdering::index(j.from));
        CHECK(ratio == doctest::Approx(std::exp(-4.0 * eps)).epsilon(1e-12));
    }
}

TEST_CASE("invalid configs are rejected") {
    SpinSystemConfig c;
    c.t1_f_s = 0.0;
    CHECK_THROWS_AS(build_jump_operators(c), ConfigError);
}
