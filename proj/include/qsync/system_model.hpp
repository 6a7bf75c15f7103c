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

#include "qsync/types.hpp"

#include <array>
#include <string>

namespace qsync {

enum class Species { P, F };
enum class Axis { X, Y, Z };

// Energy levels of the two-spin system. |4> is the top of the ladder.
enum class Level { One = 1, Two = 2, Three = 3, Four = 4 };

/// Spin-lattice and Hamiltonian parameters of the P-F pair. Frequencies
/// are in Hz, times in seconds.
struct SpinSystemConfig {
    double j_coupling_hz = 868.0;
    double offset_p_hz = -434.0;
    double offset_f_hz = 0.0;
    double t1_p_s = 10.0;
    double t1_f_s = 10.0;
    double epsilon_p = 0.0;
    double epsilon_f = 0.0;

    /// Throws ConfigError(Physical) on J <= 0, T1 <= 0 or purity factors
    /// outside [0, 0.1).
    void validate() const;

    /// Coupling J with offsets (-J/2, 0), T1 = 10 s and the given purities.
    static SpinSystemConfig with_coupling(double j_hz, double epsilon_p = 0.0, double epsilon_f = 0.0);

    bool operator==(const SpinSystemConfig&) const = default;
};

struct DriveConfig {
    double amplitude_hz = 0.0;
    double detuning_hz = 0.0;
    double duration_s = 0.0;

    void validate() const;

    bool operator==(const DriveConfig&) const = default;
};

// Gyromagnetic ratios gamma / 2pi in MHz/T.
struct GyromagneticRatios {
    double phosphorus_mhz_per_t = 17.235;
    double fluorine_mhz_per_t = 40.078;

    bool operator==(const GyromagneticRatios&) const = default;
};

struct PurityFactors {
    double epsilon_p = 0.0;
    double epsilon_f = 0.0;
};

/// Spin projections of a level, each +1/2 or -1/2.
struct ProductState {
    double m_p;
    double m_f;
};

/// Level <-> storage mapping shared by every matrix in the library.
///
/// Matrices are stored P-major in the qubit basis where bit 0 is the
/// upper Zeeman state (m = -1/2 for positive gamma):
///
///   row 0 = |4> = (m_P, m_F) = (-1/2, -1/2)
///   row 1 = |3> = (-1/2, +1/2)
///   row 2 = |2> = (+1/2, -1/2)
///   row 3 = |1> = (+1/2, +1/2)
///
/// {|4>,|2>} and {|3>,|1>} are the two P transitions; the first one is
/// the one brought on resonance by offset_p = -J/2. |4> is the highest and
/// |1> the lowest level, and each P pair is ordered upper-over-lower.
struct BasisOrdering {
    static constexpr int index(Level level) noexcept { return 4 - static_cast<int>(level); }
    static constexpr Level level(int index) noexcept { return static_cast<Level>(4 - index); }
    static ProductState state(Level level) noexcept;
    static std::string describe();
};

/// Validated 4x4 density matrix in BasisOrdering.
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPsdTol = 1e-9;

    /// Throws std::invalid_argument when the matrix is not Hermitian, not
    /// unit-trace or has an eigenvalue below -kPsdTol.
    explicit DensityMatrix(const Matrix4c& m);

    static DensityMatrix maximally_mixed();
    static DensityMatrix pure(const Vector4c& psi);

    const Matrix4c& matrix() const noexcept { return m_; }

    /// rho_ij addressed by level labels, e.g. element(Level::Four, Level::Two).
    Complex element(Level row, Level col) const noexcept {
        return m_(BasisOrdering::index(row), BasisOrdering::index(col));
    }
    double population(Level level) const noexcept { return element(level, level).real(); }
    Complex rho42() const noexcept { return element(Level::Four, Level::Two); }

    double min_eigenvalue() const;

private:
    Matrix4c m_;
};

Matrix4c spin_operator(Species species, Axis axis);

/// Product of I_z^P and I_z^F; appears in both the J term and the IMHD gate.
Matrix4c zz_operator();

/// High-temperature equilibrium state 1/4 + eps_P I_z^P + eps_F I_z^F, with
/// the sign chosen so that lower levels carry more population.
DensityMatrix thermal_state(const SpinSystemConfig& config);

/// eps_i = hbar gamma_i B0 / (4 k_B T) for the two-spin system.
PurityFactors default_purity_factors(double field_t, double temperature_k,
                                     const GyromagneticRatios& ratios = {});

}  // namespace qsync
