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

#include "qsync/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsync {

namespace {

constexpr int k4 = BasisOrdering::index(Level::Four);
constexpr int k2 = BasisOrdering::index(Level::Two);

}  // namespace

HamiltonianMatrix::HamiltonianMatrix(const Matrix4c& m, Frame frame) : m_(m), frame_(frame) {
    const double scale = std::max(1.0, max_abs(m));
    if (!m.allFinite() || !is_hermitian(m, kHermitianTol * scale)) {
        throw std::invalid_argument("HamiltonianMatrix: not Hermitian");
    }
}

HamiltonianMatrix build_lab_hamiltonian(const SpinSystemConfig& config, double larmor_p, double larmor_f) {
    // The operator is well defined for J = 0, so only finiteness is required here.
    if (!std::isfinite(config.j_coupling_hz) || !std::isfinite(larmor_p) || !std::isfinite(larmor_f)) {
        throw std::invalid_argument("build_lab_hamiltonian: non-finite frequency");
    }
    const Matrix4c h = larmor_p * spin_operator(Species::P, Axis::Z) + larmor_f * spin_operator(Species::F, Axis::Z) +
                       kTwoPi * config.j_coupling_hz * zz_operator();
    return {h, Frame::Lab};
}

HamiltonianMatrix build_drift_hamiltonian(const SpinSystemConfig& config, double detuning_hz) {
    config.validate();
    const double nu_p = config.offset_p_hz + detuning_hz;
    const Matrix4c h = -kTwoPi * nu_p * spin_operator(Species::P, Axis::Z) -
                       kTwoPi * config.offset_f_hz * spin_operator(Species::F, Axis::Z) +
                       kTwoPi * config.j_coupling_hz * zz_operator();
    return {h, Frame::DoublyRotating};
}

HamiltonianMatrix build_drive_hamiltonian(double amplitude_hz) {
    return {kTwoPi * amplitude_hz * spin_operator(Species::P, Axis::Y), Frame::DoublyRotating};
}

HamiltonianMatrix build_rotating_hamiltonian(const SpinSystemConfig& config, const DriveConfig& drive) {
    drive.validate();
    const Matrix4c h = build_drift_hamiltonian(config, drive.detuning_hz).matrix() +
                       build_drive_hamiltonian(drive.amplitude_hz).matrix();
    return {h, Frame::DoublyRotating};
}

HamiltonianMatrix build_four_level_drive_hamiltonian(const LevelFrequencies& omega, double coupling,
                                                     double drive_frequency, double t) {
    Matrix4c h = Matrix4c::Zero();
    for (int level = 1; level <= 4; ++level) {
        const int k = BasisOrdering::index(static_cast<Level>(level));
        h(k, k) = omega[level - 1];
    }
    const Complex phase = std::exp(kI * drive_frequency * t);
    h(k2, k4) = coupling * phase;
    h(k4, k2) = coupling * std::conj(phase);
    return {h, Frame::FourLevelLab};
}

HamiltonianMatrix build_reduced_rotating_hamiltonian(double detuning, double coupling) {
    Matrix4c h = Matrix4c::Zero();
    h(k4, k4) = detuning;
    h(k2, k4) = coupling;
    h(k4, k2) = coupling;
    return {h, Frame::DriveRotating};
}

}  // namespace qsync
