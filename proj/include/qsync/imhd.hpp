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

#include "qsync/phase_space.hpp"
#include "qsync/system_model.hpp"
#include "qsync/types.hpp"

#include <optional>
#include <span>

namespace qsync {

enum class GateLabel { PseudoHadamardF, UThetaPhiDaggerP, UThetaPhiP, ControlledPhase, JEvolution };

/// Two-qubit gate in the storage basis. Qubit |0> of each spin is its
/// upper Zeeman state, so |0>_P |0>_F = |4>.
struct GateMatrix {
    static constexpr double kUnitarityTol = 1e-12;

    Matrix4c matrix;
    GateLabel label;

    bool is_unitary() const { return max_abs(matrix.adjoint() * matrix - Matrix4c::Identity()) <= kUnitarityTol; }
};

/// [exp(-i phi S_z) exp(-i theta S_y)] (x) 1_F, with S the qubit-frame P spin
/// (S_z |0> = +1/2 |0>). Maps |0,0> onto the coherent state (|4>, |2>) pair.
GateMatrix build_u_theta_phi(double theta, double phi);

/// Adjoint of build_u_theta_phi.
GateMatrix build_u_theta_phi_dagger(double theta, double phi);

/// 90 degree y rotation of the F qubit, exp(-i (pi/2) S_y^F).
GateMatrix build_pseudo_hadamard();

/// 1_P (x) |0><0|_F + sigma_z^P (x) |1><1|_F = diag(1, 1, 1, -1).
GateMatrix build_controlled_phase();

/// exp(-i 2 pi J I_z^P I_z^F t) for t = 1 / (2J).
GateMatrix build_j_evolution(const SpinSystemConfig& config);

/// Free-evolution time that realizes the controlled phase, 1 / (2J) seconds.
double j_evolution_duration(const SpinSystemConfig& config);

enum class Reconstruction { ExactPopulations, QuarterApproximation };

/// Populations of the undriven levels used by the exact reconstruction.
struct ReferencePopulations {
    double rho11;
    double rho33;
};

struct ImhdReading {
    double theta = 0.0;
    double phi = 0.0;
    double signal = 0.0;              // <I_x^F> after the circuit, gate-level simulation
    double closed_form_signal = 0.0;  // same signal from populations and rho42 only
    double q = 0.0;                   // Husimi value reconstructed from `signal`
    Reconstruction variant = Reconstruction::ExactPopulations;
};

/// State after pseudo-Hadamard on F, U^dagger on P and the controlled phase.
Matrix4c imhd_output_state(const Matrix4c& rho, double theta, double phi);

/// (1/2) { cos(theta) [rho11 - rho22 - rho33 + rho44] + sin(theta) Re(e^{-i phi} rho24 + e^{i phi} rho42) }.
double imhd_signal_closed_form(const DensityMatrix& rho, double theta, double phi);

/// Husimi value from a measured signal.
double reconstruct_husimi(double signal, double theta, Reconstruction variant, const ReferencePopulations& reference);

/// Runs the circuit on rho and reconstructs Q. Reference populations default
/// to those of rho itself.
ImhdReading run_imhd(const DensityMatrix& rho, double theta, double phi, Reconstruction variant,
                     std::optional<ReferencePopulations> reference = std::nullopt);

HusimiGrid imhd_scan(const DensityMatrix& rho, std::span<const double> thetas, std::span<const double> phis,
                     Reconstruction variant, std::optional<ReferencePopulations> reference = std::nullopt);

HusimiGrid imhd_scan(const DensityMatrix& rho, const GridSpec& spec, Reconstruction variant,
                     std::optional<ReferencePopulations> reference = std::nullopt);

}  // namespace qsync
