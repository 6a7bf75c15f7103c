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

#pragma once

#include "qsync/system_model.hpp"
#include "qsync/types.hpp"

#include <array>

namespace qsync {

enum class Frame { Lab, DoublyRotating, DriveRotating, FourLevelLab };

/// Hermitian 4x4 operator in rad/s, tagged with the frame it lives in.
class HamiltonianMatrix {
public:
    static constexpr double kHermitianTol = 1e-12;

    /// Throws std::invalid_argument if `m` is not Hermitian to kHermitianTol
    /// (relative to its largest entry when that exceeds 1).
    HamiltonianMatrix(const Matrix4c& m, Frame frame);

    const Matrix4c& matrix() const noexcept { return m_; }
    Frame frame() const noexcept { return frame_; }

private:
    Matrix4c m_;
    Frame frame_;
};

// Level frequencies (rad/s) indexed by level number minus one:
// omega[0] is |1>, omega[3] is |4>.
using LevelFrequencies = std::array<double, 4>;

/// omega_P I_z^P + omega_F I_z^F + 2 pi J I_z^P I_z^F with Larmor frequencies in rad/s.
/// Accepts J = 0; throws std::invalid_argument for non-finite input.
HamiltonianMatrix build_lab_hamiltonian(const SpinSystemConfig& config, double larmor_p, double larmor_f);

/// Drift part of the doubly rotating frame Hamiltonian. The drive detuning
/// shifts the P carrier: offset_p -> offset_p + detuning.
HamiltonianMatrix build_drift_hamiltonian(const SpinSystemConfig& config, double detuning_hz);

/// Drive term 2 pi Omega I_y^P.
HamiltonianMatrix build_drive_hamiltonian(double amplitude_hz);

/// Drift plus drive, time independent.
HamiltonianMatrix build_rotating_hamiltonian(const SpinSystemConfig& config, const DriveConfig& drive);

/// Four-level Hamiltonian with a drive on |2> <-> |4> at carrier omega_d,
/// evaluated at time t.
HamiltonianMatrix build_four_level_drive_hamiltonian(const LevelFrequencies& omega, double coupling,
                                                     double drive_frequency, double t);

/// Delta |4><4| + Omega (|2><4| + |4><2|), both in rad/s.
HamiltonianMatrix build_reduced_rotating_hamiltonian(double detuning, double coupling);

}  // namespace qsync
