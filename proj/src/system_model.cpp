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

#include "qsync/system_model.hpp"

#include "qsync/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsync {

namespace {

constexpr double kHbar = 1.054571817e-34;      // J s
constexpr double kBoltzmann = 1.380649e-23;    // J / K
constexpr double kMaxPurity = 0.1;

void require_physical(bool ok, const std::string& what) {
    if (!ok) {
        throw ConfigError(ConfigError::Kind::Physical, what);
    }
}

// Single-spin operators in the qubit basis {|0>, |1>} = {m = -1/2, m = +1/2}.
Matrix2c single_spin(Axis axis) {
    Matrix2c s = Matrix2c::Zero();
    switch (axis) {
        case Axis::X:
            s(0, 1) = 0.5;
            s(1, 0) = 0.5;
            break;
        case Axis::Y:
            s(0, 1) = Complex(0.0, 0.5);
            s(1, 0) = Complex(0.0, -0.5);
            break;
        case Axis::Z:
            s(0, 0) = -0.5;
            s(1, 1) = 0.5;
            break;
    }
    return s;
}

}  // namespace

void SpinSystemConfig::validate() const {
    require_physical(std::isfinite(j_coupling_hz) && j_coupling_hz > 0.0, "jCoupling must be > 0");
    require_physical(std::isfinite(offset_p_hz) && std::isfinite(offset_f_hz), "offsets must be finite");
    require_physical(std::isfinite(t1_p_s) && t1_p_s > 0.0, "t1P must be > 0");
    require_physical(std::isfinite(t1_f_s) && t1_f_s > 0.0, "t1F must be > 0");
    require_physical(epsilon_p >= 0.0 && epsilon_p < kMaxPurity, "epsilonP must lie in [0, 0.1)");
    require_physical(epsilon_f >= 0.0 && epsilon_f < kMaxPurity, "epsilonF must lie in [0, 0.1)");
}

SpinSystemConfig SpinSystemConfig::with_coupling(double j_hz, double epsilon_p, double epsilon_f) {
    SpinSystemConfig c;
    c.j_coupling_hz = j_hz;
    c.offset_p_hz = -0.5 * j_hz;
    c.offset_f_hz = 0.0;
    c.epsilon_p = epsilon_p;
    c.epsilon_f = epsilon_f;
    return c;
}

void DriveConfig::validate() const {
    require_physical(std::isfinite(amplitude_hz) && amplitude_hz >= 0.0, "drive amplitude must be >= 0");
    require_physical(std::isfinite(detuning_hz), "drive detuning must be finite");
    require_physical(std::isfinite(duration_s) && duration_s >= 0.0, "drive duration must be >= 0");
}

ProductState BasisOrdering::state(Level level) noexcept {
    const int k = index(level);
    const double m_p = (k / 2 == 0) ? -0.5 : 0.5;
    const double m_f = (k % 2 == 0) ? -0.5 : 0.5;
    return {m_p, m_f};
}

std::string BasisOrdering::describe() {
    return "|4>=(-1/2,-1/2),|3>=(-1/2,+1/2),|2>=(+1/2,-1/2),|1>=(+1/2,+1/2)";
}

DensityMatrix::DensityMatrix(const Matrix4c& m) : m_(m) {
    if (!m.allFinite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    }
    if (!is_hermitian(m, kHermitianTol)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1.0)) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    }
    if (min_eigenvalue() < -kPsdTol) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(Matrix4c::Identity() * 0.25);
}

DensityMatrix DensityMatrix::pure(const Vector4c& psi) {
    const Vector4c v = psi.normalized();
    return DensityMatrix(v * v.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
    const Matrix4c h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

Matrix4c spin_operator(Species species, Axis axis) {
    const Matrix2c s = single_spin(axis);
    const Matrix2c id = Matrix2c::Identity();
    return species == Species::P ? kron<2, 2>(s, id) : kron<2, 2>(id, s);
}

Matrix4c zz_operator() {
    return spin_operator(Species::P, Axis::Z) * spin_operator(Species::F, Axis::Z);
}

DensityMatrix thermal_state(const SpinSystemConfig& config) {
    config.validate();
    const Matrix4c rho = Matrix4c::Identity() * 0.25 + config.epsilon_p * spin_operator(Species::P, Axis::Z) +
                         config.epsilon_f * spin_operator(Species::F, Axis::Z);
    for (int k = 0; k < 4; ++k) {
        if (rho(k, k).real() < 0.0) {
            throw ConfigError(ConfigError::Kind::Physical, "thermal_state: negative population");
        }
    }
    return DensityMatrix(rho);
}

PurityFactors default_purity_factors(double field_t, double temperature_k, const GyromagneticRatios& ratios) {
    if (!(field_t > 0.0) || !(temperature_k > 0.0)) {
        throw std::invalid_argument("default_purity_factors: field and temperature must be positive");
    }
    // 2^n with n = 2 spins.
    const double scale = kHbar * field_t / (4.0 * kBoltzmann * temperature_k);
    const double gamma_p = kTwoPi * ratios.phosphorus_mhz_per_t * 1e6;
    const double gamma_f = kTwoPi * ratios.fluorine_mhz_per_t * 1e6;
    return {scale * gamma_p, scale * gamma_f};
}

}  // namespace qsync
