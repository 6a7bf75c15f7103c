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

#include "qsync/imhd.hpp"

#include <cmath>
#include <stdexcept>

namespace qsync {

namespace {

Matrix2c rotation_y(double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    Matrix2c r;
    r << c, -s, s, c;
    return r;
}

Matrix2c rotation_z(double angle) {
    Matrix2c r = Matrix2c::Zero();
    r(0, 0) = std::exp(-0.5 * kI * angle);
    r(1, 1) = std::exp(0.5 * kI * angle);
    return r;
}

Matrix4c on_p(const Matrix2c& u) {
    return kron<2, 2>(u, Matrix2c::Identity());
}

Matrix4c on_f(const Matrix2c& u) {
    return kron<2, 2>(Matrix2c::Identity(), u);
}

}  // namespace

GateMatrix build_u_theta_phi(double theta, double phi) {
    return {on_p(rotation_z(phi) * rotation_y(theta)), GateLabel::UThetaPhiP};
}

GateMatrix build_u_theta_phi_dagger(double theta, double phi) {
    return {build_u_theta_phi(theta, phi).matrix.adjoint(), GateLabel::UThetaPhiDaggerP};
}

GateMatrix build_pseudo_hadamard() {
    return {on_f(rotation_y(0.5 * kPi)), GateLabel::PseudoHadamardF};
}

GateMatrix build_controlled_phase() {
    Matrix4c cz = Matrix4c::Identity();
    cz(3, 3) = -1.0;
    return {cz, GateLabel::ControlledPhase};
}

double j_evolution_duration(const SpinSystemConfig& config) {
    config.validate();
    return 1.0 / (2.0 * config.j_coupling_hz);
}

GateMatrix build_j_evolution(const SpinSystemConfig& config) {
    const double t = j_evolution_duration(config);
    const Matrix4c zz = zz_operator();
    Matrix4c u = Matrix4c::Zero();
    for (int k = 0; k < 4; ++k) {
        u(k, k) = std::exp(-kI * (kTwoPi * config.j_coupling_hz * zz(k, k).real() * t));
    }
    return {u, GateLabel::JEvolution};
}

Matrix4c imhd_output_state(const Matrix4c& rho, double theta, double phi) {
    const Matrix4c w = build_controlled_phase().matrix * build_u_theta_phi_dagger(theta, phi).matrix *
                       build_pseudo_hadamard().matrix;
    return w * rho * w.adjoint();
}

double imhd_signal_closed_form(const DensityMatrix& rho, double theta, double phi) {
    const double diag = rho.population(Level::One) - rho.population(Level::Two) - rho.population(Level::Three) +
                        rho.population(Level::Four);
    const Complex coh = std::exp(-kI * phi) * rho.element(Level::Two, Level::Four) +
                        std::exp(kI * phi) * rho.element(Level::Four, Level::Two);
    return 0.5 * (std::cos(theta) * diag + std::sin(theta) * coh.real());
}

double reconstruct_husimi(double signal, double theta, Reconstruction variant, const ReferencePopulations& reference) {
    switch (variant) {
        case Reconstruction::ExactPopulations: {
            const double c = std::cos(0.5 * theta);
            const double s = std::sin(0.5 * theta);
            return kHusimiPrefactor * (0.5 * (1.0 + 2.0 * signal) - (reference.rho11 * c * c + reference.rho33 * s * s));
        }
        case Reconstruction::QuarterApproximation:
            return kHusimiPrefactor * (signal + 0.25);
    }
    throw std::invalid_argument("reconstruct_husimi: unknown reconstruction variant");
}

ImhdReading run_imhd(const DensityMatrix& rho, double theta, double phi, Reconstruction variant,
                     std::optional<ReferencePopulations> reference) {
    const ReferencePopulations ref =
        reference.value_or(ReferencePopulations{rho.population(Level::One), rho.population(Level::Three)});
    const Matrix4c out = imhd_output_state(rho.matrix(), theta, phi);

    ImhdReading r;
    r.theta = theta;
    r.phi = phi;
    r.signal = (out * spin_operator(Species::F, Axis::X)).trace().real();
    r.closed_form_signal = imhd_signal_closed_form(rho, theta, phi);
    r.q = reconstruct_husimi(r.signal, theta, variant, ref);
    r.variant = variant;
    return r;
}

HusimiGrid imhd_scan(const DensityMatrix& rho, std::span<const double> thetas, std::span<const double> phis,
                     Reconstruction variant, std::optional<ReferencePopulations> reference) {
    if (thetas.empty() || phis.empty()) {
        throw std::invalid_argument("imhd_scan: empty axis");
    }
    for (std::size_t i = 1; i < thetas.size(); ++i) {
        if (!(thetas[i] > thetas[i - 1])) throw std::invalid_argument("imhd_scan: theta axis not increasing");
    }
    for (std::size_t j = 1; j < phis.size(); ++j) {
        if (!(phis[j] > phis[j - 1])) throw std::invalid_argument("imhd_scan: phi axis not increasing");
    }
    HusimiGrid g;
    g.theta.assign(thetas.begin(), thetas.end());
    g.phi.assign(phis.begin(), phis.end());
    g.values.resize(static_cast<Eigen::Index>(thetas.size()), static_cast<Eigen::Index>(phis.size()));
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        for (std::size_t j = 0; j < phis.size(); ++j) {
            g.values(i, j) = run_imhd(rho, thetas[i], phis[j], variant, reference).q;
        }
    }
    return g;
}

HusimiGrid imhd_scan(const DensityMatrix& rho, const GridSpec& spec, Reconstruction variant,
                     std::optional<ReferencePopulations> reference) {
    const HusimiGrid axes = HusimiGrid::axes(spec);
    return imhd_scan(rho, axes.theta, axes.phi, variant, reference);
}

}  // namespace qsync
