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

#include "qsync/errors.hpp"
#include "qsync/expm.hpp"
#include "qsync/liouville.hpp"

#include <doctest.h>

#include <limits>

using namespace qsync;

namespace {

SpinSystemConfig thermal_config() { return SpinSystemConfig::with_coupling(868.0, 7.91e-6, 1.84e-5); }

}  // namespace

TEST_CASE("vectorization") {
    Matrix4c d = Matrix4c::Zero();
    d.diagonal() << 1.0, 2.0, 3.0, 4.0;
    const Vector16c v = vectorize(d);
    CHECK(v(0) == Complex(1.0));
    CHECK(v(5) == Complex(2.0));
    CHECK(v(10) == Complex(3.0));
    CHECK(v(15) == Complex(4.0));
    Matrix4c m = Matrix4c::Zero();
    m(2, 1) = 7.0;  // row 2, column 1 -> 2 + 4 * 1
    CHECK(vectorize(m)(6) == Complex(7.0));

    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const Matrix4c h = oracle::random_hermitian(rng);
        CHECK(max_abs(Matrix4c(devectorize(vectorize(h)) - h)) == 0.0);
    }
}

TEST_CASE("sandwich superoperator matches the triple product") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
        const Matrix4c b = oracle::random_matrix(rng);
        const Matrix4c rho = oracle::random_matrix(rng);
        const Matrix4c c = oracle::random_matrix(rng);
        const Vector16c lhs = vectorize(b * rho * c);
        const Vector16c rhs = sandwich_superoperator(b, c) * vectorize(rho);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("drift Liouvillian") {
    SUBCASE("empty generator") {
        const HamiltonianMatrix zero(Matrix4c::Zero(), Frame::DoublyRotating);
        const Liouvillian l = build_L0(zero, {});
        CHECK(max_abs(l.total()) == 0.0);
    }
    SUBCASE("thermal state is stationary up to the cross-species term") {
        // The linear thermal state balances each link only to first order.
        // With both spins polarized the leftover flow is exactly
        // 8 g eps_P eps_F I_z^P I_z^F for equal T1 at leading order, about
        // 2e-10 per population here.
        const SpinSystemConfig c = thermal_config();
        const auto jumps = build_jump_operators(c);
        const Liouvillian l = build_L0(build_drift_hamiltonian(c, 0.0), jumps);
        const Matrix4c residual = devectorize(l.total() * vectorize(thermal_state(c).matrix()));
        const Matrix4c predicted = 8.0 * transition_rate(10.0) * c.epsilon_p * c.epsilon_f * zz_operator();
        CHECK(max_abs(Matrix4c(residual - predicted)) < 1e-3 * max_abs(predicted));
        CHECK(l.trace_defect() < Liouvillian::kTracePreservationTol);

        // With a single polarized species the thermal state is stationary.
        SpinSystemConfig single = c;
        single.epsilon_p = 0.0;
        const Liouvillian ls = build_L0(build_drift_hamiltonian(single, 0.0), build_jump_operators(single));
        CHECK((ls.total() * vectorize(thermal_state(single).matrix())).norm() < 1e-10);
    }
    SUBCASE("matches the matrix-form master equation") {
        SpinSystemConfig c = thermal_config();
        c.epsilon_p = 3e-3;
        c.epsilon_f = 5e-3;
        c.t1_p_s = 2.0;
        const auto jumps = build_jump_operators(c);
        const auto h0 = build_drift_hamiltonian(c, 0.7);
        const Liouvillian l = build_L0(h0, jumps);
        const auto oracle_jumps = oracle::transition_jumps({3e-3, 5e-3, 2.0, 10.0});
        const Matrix4c oracle_h = oracle::rotating_hamiltonian(868.0, -434.0, 0.0, 0.7, 0.0);
        std::mt19937_64 rng(9);
        for (int k = 0; k < 10; ++k) {
            const Matrix4c rho = oracle::random_density_matrix(rng);
            const Matrix4c lhs = devectorize(l.total() * vectorize(rho));
            CHECK(max_abs(Matrix4c(lhs - oracle::lindblad_rhs(oracle_h, oracle_jumps, rho))) < 1e-12);
            CHECK(max_abs(Matrix4c(lhs - master_equation_rhs(h0.matrix(), jumps, rho))) < 1e-12);
        }
    }
}

TEST_CASE("drive Liouvillian") {
    CHECK(max_abs(build_LV(HamiltonianMatrix(Matrix4c::Zero(), Frame::DoublyRotating)).total()) == 0.0);
    const auto v = build_reduced_rotating_hamiltonian(0.0, 0.3);
    const Liouvillian lv = build_LV(v);
    CHECK(lv.total().cwiseAbs().maxCoeff() > 0.0);
    CHECK((lv.total() * vectorize(Matrix4c::Identity() / 4.0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(max_abs(lv.drift()) == 0.0);
    std::mt19937_64 rng(13);
    for (int k = 0; k < 10; ++k) {
        const Matrix4c rho = oracle::random_density_matrix(rng);
        const Matrix4c lhs = devectorize(lv.total() * vectorize(rho));
        const Matrix4c comm = v.matrix() * rho - rho * v.matrix();
        CHECK(max_abs(Matrix4c(lhs + kI * comm)) < 1e-13);
    }
}

TEST_CASE("matrix exponential") {
    SUBCASE("zero and diagonal") {
        CHECK(max_abs(Matrix4c(expm<Matrix4c>(Matrix4c::Zero()) - Matrix4c::Identity())) == 0.0);
        Matrix4c d = Matrix4c::Zero();
        d.diagonal() << Complex(1.0, 2.0), Complex(-3.0, 0.5), Complex(0.0, 40.0), Complex(-0.1, 0.0);
        const Matrix4c e = expm<Matrix4c>(d);
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(e(i, i) - std::exp(d(i, i))) < 1e-13 * std::max(1.0, std::abs(std::exp(d(i, i)))));
        }
    }
    SUBCASE("unitary from a Hermitian generator") {
        std::mt19937_64 rng(17);
        for (double scale : {1e-4, 1.0, 50.0, 3000.0}) {
            const Matrix4c h = oracle::random_hermitian(rng);
            Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
            const Matrix4c ref = es.eigenvectors() *
                                 (es.eigenvalues().cast<Complex>() * Complex(0.0, -scale)).array().exp().matrix().asDiagonal() *
                                 es.eigenvectors().adjoint();
            const Matrix4c e = expm<Matrix4c>(Matrix4c(-kI * scale * h));
            CHECK(max_abs(Matrix4c(e - ref)) < 1e-12 * std::max(1.0, scale));
        }
    }
    SUBCASE("nilpotent") {
        Matrix4c n = Matrix4c::Zero();
        n(0, 1) = 2.0;
        n(1, 2) = 3.0;
        const Matrix4c e = expm<Matrix4c>(n);
        CHECK(std::abs(e(0, 2) - Complex(3.0)) < 1e-14);
        CHECK(std::abs(e(0, 1) - Complex(2.0)) < 1e-14);
    }
}

TEST_CASE("propagation") {
    const SpinSystemConfig c = thermal_config();
    SUBCASE("zero time returns the input exactly") {
        const Liouvillian l = build_liouvillian(c, DriveConfig{0.1, 0.0, 0.0});
        const DensityMatrix rho0 = thermal_state(c);
        CHECK(max_abs(Matrix4c(propagate(l, rho0, 0.0).matrix() - rho0.matrix())) == 0.0);
        CHECK(propagator(l, 0.0) == Matrix16c::Identity());
    }
    SUBCASE("undriven thermal state is stationary") {
        const Liouvillian l = build_liouvillian(c, DriveConfig{});
        const DensityMatrix rho0 = thermal_state(c);
        CHECK(max_abs(Matrix4c(propagate(l, rho0, 100.0).matrix() - rho0.matrix())) < 1e-8);
    }
    SUBCASE("invalid times") {
        const Liouvillian l = build_liouvillian(c, DriveConfig{});
        const DensityMatrix rho0 = thermal_state(c);
        CHECK_THROWS_AS(propagate(l, rho0, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(propagate(l, rho0, std::numeric_limits<double>::infinity()), std::invalid_argument);
        CHECK_THROWS_AS(propagate(l, rho0, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    }
    SUBCASE("driven evolution matches the adaptive integrator") {
        const DriveConfig d{0.8, 0.4, 0.0};
        const Liouvillian l = build_liouvillian(c, d);
        const oracle::Bath bath{c.epsilon_p, c.epsilon_f, c.t1_p_s, c.t1_f_s};
        const auto jumps = oracle::transition_jumps(bath);
        const Matrix4c h = oracle::rotating_hamiltonian(c.j_coupling_hz, c.offset_p_hz, c.offset_f_hz, d.detuning_hz,
                                                        d.amplitude_hz);
        const Matrix4c ref =
            oracle::dopri45([&](const Matrix4c& r) { return oracle::lindblad_rhs(h, jumps, r); }, oracle::thermal(bath), 1.0);
        CHECK(max_abs(Matrix4c(propagate(l, thermal_state(c), 1.0).matrix() - ref)) < 1e-8);
    }
    SUBCASE("propagate_about agrees with propagate") {
        const Liouvillian l = build_liouvillian(c, DriveConfig{0.1, 0.5, 0.0});
        const DensityMatrix ss = steady_state(l);
        for (double t : {0.0, 0.3, 7.0, 150.0}) {
            const Matrix4c a = propagate(l, thermal_state(c), t).matrix();
            const Matrix4c b = propagate_about(l, ss, thermal_state(c), t).matrix();
            CHECK(max_abs(Matrix4c(a - b)) < 1e-9);
        }
    }
    SUBCASE("trace, Hermiticity and positivity are preserved") {
        std::mt19937_64 rng(21);
        const Liouvillian l = build_liouvillian(c, DriveConfig{2.0, 0.3, 0.0});
        const DensityMatrix rho0(oracle::random_density_matrix(rng));
        for (double t = 1e-3; t <= 1e3; t *= 10.0) {
            const DensityMatrix r = propagate(l, rho0, t);
            CHECK(std::abs(r.matrix().trace() - Complex(1.0)) < 1e-10);
            CHECK(is_hermitian(r.matrix(), 1e-12));
            CHECK(r.min_eigenvalue() > -1e-9);
        }
    }
}

TEST_CASE("steady state") {
    const SpinSystemConfig c = thermal_config();
    SUBCASE("undriven steady state is the thermal state") {
        const DensityMatrix ss = steady_state(build_liouvillian(c, DriveConfig{}));
        CHECK(max_abs(Matrix4c(ss.matrix() - thermal_state(c).matrix())) < 1e-8);
    }
    SUBCASE("driven steady state is the long-time limit") {
        const Liouvillian l = build_liouvillian(c, DriveConfig{0.1, 0.0, 0.0});
        const DensityMatrix ss = steady_state(l);
        const DensityMatrix late = propagate(l, thermal_state(c), 1000.0);
        CHECK(max_abs(Matrix4c(ss.matrix() - late.matrix())) < 1e-6);
        CHECK((l.total() * vectorize(ss.matrix())).norm() < 1e-10);
        CHECK(std::abs(ss.rho42()) > 1e-7);
    }
    SUBCASE("residual across drives") {
        for (double omega : {1e-3, 0.1, 10.0, 1e3}) {
            for (double delta : {-3.0, 0.0, 2.0}) {
                const Liouvillian l = build_liouvillian(c, DriveConfig{omega, delta, 0.0});
                CHECK((l.total() * vectorize(steady_state(l).matrix())).norm() < 1e-10);
            }
        }
    }
    SUBCASE("degenerate kernels are reported") {
        const HamiltonianMatrix zero(Matrix4c::Zero(), Frame::DoublyRotating);
        CHECK_THROWS_AS(steady_state(build_L0(zero, {})), AmbiguousSteadyStateError);
        // Closed-system dynamics conserve every population.
        CHECK_THROWS_AS(steady_state(build_L0(build_drift_hamiltonian(c, 0.0), {})), AmbiguousSteadyStateError);
    }
}

TEST_CASE("spectral report") {
    const SpinSystemConfig c = SpinSystemConfig::with_coupling(868.0);
    const SpectralReport undriven = spectral_report(build_liouvillian(c, DriveConfig{}));
    CHECK(undriven.gap >= 0.3);
    CHECK(undriven.gap <= 0.7);
    const SpectralReport driven = spectral_report(build_liouvillian(thermal_config(), DriveConfig{0.3, 0.5, 0.0}));
    CHECK(driven.near_zero_count == 1);
    REQUIRE(driven.eigenvalues.size() == 16);
    for (const Complex& z : driven.eigenvalues) CHECK(z.real() <= 1e-10);
    for (std::size_t i = 1; i < driven.eigenvalues.size(); ++i)
        CHECK(driven.eigenvalues[i - 1].real() >= driven.eigenvalues[i].real());
}
