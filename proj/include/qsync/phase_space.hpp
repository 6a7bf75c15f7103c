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

#include "qsync/hamiltonians.hpp"
#include "qsync/quadrature.hpp"
#include "qsync/system_model.hpp"
#include "qsync/types.hpp"

#include <array>
#include <span>
#include <vector>

namespace qsync {

/// 24 / pi^3, the Husimi normalization for four levels.
inline constexpr double kHusimiPrefactor = 24.0 / (kPi * kPi * kPi);

/// Uniform phase baseline 1 / (2 pi)^3.
inline constexpr double kUniformPhaseDensity = 1.0 / (kTwoPi * kTwoPi * kTwoPi);

/// 1 / (16 pi^2), coefficient of each coherence in the synchronization measure.
inline constexpr double kSyncCoefficient = 1.0 / (16.0 * kPi * kPi);

/// Half-angle parameterization: theta_i in [0, pi], phi_i in [0, 2 pi).
/// Component k of the state vector pairs with storage row k, so the first
/// component carries |4> and the last |1>.
struct CoherentStateSU4 {
    std::array<double, 3> theta{};
    std::array<double, 3> phi{};

    Vector4c vector() const;
};

Vector2c coherent_state_su2(double theta, double phi);

/// Recursive SU(n) coherent state. Phases are absolute: component k > 0
/// carries exp(i phi_k) with phi_k = phis[k - 1].
Eigen::VectorXcd coherent_state_sun(int n, std::span<const double> thetas, std::span<const double> phis);

/// (24 / pi^3) <n|rho|n>.
double husimi_full(const DensityMatrix& rho, const CoherentStateSU4& s);

enum class Prefactor { Include, Omit };

/// rho44 cos^2(theta/2) + Re(rho42 e^{i phi}) sin(theta) + rho22 sin^2(theta/2),
/// scaled by 24 / pi^3 unless the prefactor is omitted.
double husimi_reduced(const DensityMatrix& rho, double theta, double phi, Prefactor prefactor = Prefactor::Include);

/// Closed-form synchronization measure over all six coherences.
double sync_measure_full(const DensityMatrix& rho, double phi1, double phi2, double phi3);

double sync_measure_reduced(const DensityMatrix& rho, double phi);

/// |rho42| / (16 pi^2).
double sync_measure_max(const DensityMatrix& rho);

struct GridSpec {
    int theta_points = 64;
    int phi_points = 128;

    bool operator==(const GridSpec&) const = default;
};

/// Q sampled on theta in [0, pi] (endpoints included) and phi in [0, 2 pi).
struct HusimiGrid {
    std::vector<double> theta;
    std::vector<double> phi;
    Eigen::MatrixXd values;  // rows follow theta, columns follow phi

    static HusimiGrid axes(const GridSpec& spec);
};

HusimiGrid husimi_grid(const DensityMatrix& rho, const GridSpec& spec = {}, Prefactor prefactor = Prefactor::Include);

/// (max Q_phi - min Q_phi) / (max Q_phi + min Q_phi) with Q_phi the theta-sum.
/// Throws std::domain_error for an all-zero grid and std::invalid_argument
/// for an empty grid or negative column sums.
double visibility(const HusimiGrid& grid);

/// Free evolution under sum_i omega_i |i><i|: each phase picks up
/// -(omega of its level - omega of |4>) t.
CoherentStateSU4 free_phase_evolution(const CoherentStateSU4& s, const LevelFrequencies& omega, double t);

/// Product quadrature over the coherent-state measure. Each theta_i = 2 alpha_i
/// is integrated with Gauss-Legendre in alpha_i in [0, pi/2] against
/// cos(alpha_i) sin^{2(3-i)+1}(alpha_i); each phi_i with a periodic trapezoid.
struct IntegrationScheme {
    std::array<QuadratureRule, 3> theta;  // nodes are theta values, weights include the Haar factor
    std::array<QuadratureRule, 3> phi;

    static IntegrationScheme standard(int gauss_nodes = 32, int trapezoid_nodes = 64);
};

/// Quadrature of |n><n| dmu; equals (pi^3 / 24) 1 for a converged scheme.
Matrix4c completeness_check(const IntegrationScheme& scheme);

/// Quadrature of Q dmu.
double husimi_integral(const DensityMatrix& rho, const IntegrationScheme& scheme);

/// Quadrature of the theta-marginal of Q minus the uniform baseline.
double sync_measure_quadrature(const DensityMatrix& rho, double phi1, double phi2, double phi3,
                               const IntegrationScheme& scheme);

}  // namespace qsync
