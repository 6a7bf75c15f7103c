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

#include "qsync/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsync {

namespace {

double wrap_phase(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    return r;
}

// Real amplitudes of the SU(4) state: (C1, S1 C2, S1 S2 C3, S1 S2 S3).
std::array<double, 4> amplitudes(const std::array<double, 3>& theta) {
    const double c1 = std::cos(0.5 * theta[0]), s1 = std::sin(0.5 * theta[0]);
    const double c2 = std::cos(0.5 * theta[1]), s2 = std::sin(0.5 * theta[1]);
    const double c3 = std::cos(0.5 * theta[2]), s3 = std::sin(0.5 * theta[2]);
    return {c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3};
}

double expectation(const Matrix4c& rho, const Vector4c& n) {
    return (n.adjoint() * rho * n)(0, 0).real();
}

}  // namespace

Vector4c CoherentStateSU4::vector() const {
    const auto a = amplitudes(theta);
    Vector4c v;
    v(0) = a[0];
    for (int k = 1; k < 4; ++k) {
        v(k) = a[k] * std::exp(kI * phi[k - 1]);
    }
    return v;
}

Vector2c coherent_state_su2(double theta, double phi) {
    Vector2c v;
    v << std::cos(0.5 * theta), std::exp(kI * phi) * std::sin(0.5 * theta);
    return v;
}

Eigen::VectorXcd coherent_state_sun(int n, std::span<const double> thetas, std::span<const double> phis) {
    if (n < 1 || thetas.size() != static_cast<std::size_t>(n - 1) || phis.size() != static_cast<std::size_t>(n - 1)) {
        throw std::invalid_argument("coherent_state_sun: need n >= 1 with n - 1 thetas and n - 1 phis");
    }
    Eigen::VectorXcd v(n);
    if (n == 1) {
        v(0) = 1.0;
        return v;
    }
    // |n_n> = C e_0 + e^{i phi} S (0, |n_{n-1}>); the tail phases are taken
    // relative to phi so that each component keeps its absolute phase.
    std::vector<double> tail_phis(phis.begin() + 1, phis.end());
    for (double& p : tail_phis) {
        p -= phis[0];
    }
    const Eigen::VectorXcd tail = coherent_state_sun(n - 1, thetas.subspan(1), tail_phis);
    v(0) = std::cos(0.5 * thetas[0]);
    v.tail(n - 1) = std::exp(kI * phis[0]) * std::sin(0.5 * thetas[0]) * tail;
    return v;
}

double husimi_full(const DensityMatrix& rho, const CoherentStateSU4& s) {
    return kHusimiPrefactor * expectation(rho.matrix(), s.vector());
}

double husimi_reduced(const DensityMatrix& rho, double theta, double phi, Prefactor prefactor) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double bracket = rho.population(Level::Four) * c * c +
                           (rho.rho42() * std::exp(kI * phi)).real() * std::sin(theta) +
                           rho.population(Level::Two) * s * s;
    return prefactor == Prefactor::Include ? kHusimiPrefactor * bracket : bracket;
}

double sync_measure_full(const DensityMatrix& rho, double phi1, double phi2, double phi3) {
    const auto e = [&](Level a, Level b, double phase) { return (rho.element(a, b) * std::exp(kI * phase)).real(); };
    const double sum = e(Level::Four, Level::Three, phi1) + e(Level::Four, Level::Two, phi2) +
                       e(Level::Four, Level::One, phi3) + e(Level::Three, Level::Two, phi2 - phi1) +
                       e(Level::Three, Level::One, phi3 - phi1) + e(Level::Two, Level::One, phi3 - phi2);
    return kSyncCoefficient * sum;
}

double sync_measure_reduced(const DensityMatrix& rho, double phi) {
    return kSyncCoefficient * (rho.rho42() * std::exp(kI * phi)).real();
}

double sync_measure_max(const DensityMatrix& rho) {
    return kSyncCoefficient * std::abs(rho.rho42());
}

HusimiGrid HusimiGrid::axes(const GridSpec& spec) {
    if (spec.theta_points < 2 || spec.phi_points < 1) {
        throw std::invalid_argument("HusimiGrid: need at least 2 theta and 1 phi samples");
    }
    HusimiGrid g;
    g.theta.resize(spec.theta_points);
    g.phi.resize(spec.phi_points);
    for (int i = 0; i < spec.theta_points; ++i) {
        g.theta[i] = kPi * i / (spec.theta_points - 1);
    }
    for (int j = 0; j < spec.phi_points; ++j) {
        g.phi[j] = kTwoPi * j / spec.phi_points;
    }
    g.values = Eigen::MatrixXd::Zero(spec.theta_points, spec.phi_points);
    return g;
}

HusimiGrid husimi_grid(const DensityMatrix& rho, const GridSpec& spec, Prefactor prefactor) {
    HusimiGrid g = HusimiGrid::axes(spec);
    for (int i = 0; i < spec.theta_points; ++i) {
        for (int j = 0; j < spec.phi_points; ++j) {
            g.values(i, j) = husimi_reduced(rho, g.theta[i], g.phi[j], prefactor);
        }
    }
    return g;
}

double visibility(const HusimiGrid& grid) {
    if (grid.values.size() == 0) {
        throw std::invalid_argument("visibility: empty grid");
    }
    const Eigen::VectorXd q_phi = grid.values.colwise().sum().transpose();
    const double hi = q_phi.maxCoeff();
    const double lo = q_phi.minCoeff();
    if (lo < 0.0) {
        throw std::invalid_argument("visibility: negative phi marginal");
    }
    if (hi + lo <= 0.0) {
        throw std::domain_error("visibility: degenerate all-zero grid");
    }
    return (hi - lo) / (hi + lo);
}

CoherentStateSU4 free_phase_evolution(const CoherentStateSU4& s, const LevelFrequencies& omega, double t) {
    const auto freq = [&](int component) {
        return omega[static_cast<int>(BasisOrdering::level(component)) - 1];
    };
    CoherentStateSU4 out = s;
    for (int k = 1; k < 4; ++k) {
        out.phi[k - 1] = wrap_phase(s.phi[k - 1] - (freq(k) - freq(0)) * t);
    }
    return out;
}

IntegrationScheme IntegrationScheme::standard(int gauss_nodes, int trapezoid_nodes) {
    IntegrationScheme scheme;
    static constexpr int kSinePower[3] = {5, 3, 1};
    for (int v = 0; v < 3; ++v) {
        QuadratureRule alpha = gauss_legendre(gauss_nodes, 0.0, 0.5 * kPi);
        QuadratureRule& rule = scheme.theta[v];
        rule.nodes.resize(alpha.nodes.size());
        rule.weights.resize(alpha.nodes.size());
        for (std::size_t i = 0; i < alpha.nodes.size(); ++i) {
            const double a = alpha.nodes[i];
            rule.nodes[i] = 2.0 * a;
            rule.weights[i] = alpha.weights[i] * std::cos(a) * std::pow(std::sin(a), kSinePower[v]);
        }
        scheme.phi[v] = periodic_trapezoid(trapezoid_nodes, 0.0, kTwoPi);
    }
    return scheme;
}

Matrix4c completeness_check(const IntegrationScheme& scheme) {
    // The measure is a product over the six angles and (|n><n|)_ab splits into
    // amp_a amp_b exp(i (phi_b - phi_a)), so the six-fold sum factorizes into
    // a theta part and a phi part for every entry.
    Eigen::Matrix4d amp = Eigen::Matrix4d::Zero();
    const auto& t = scheme.theta;
    for (std::size_t i = 0; i < t[0].nodes.size(); ++i) {
        for (std::size_t j = 0; j < t[1].nodes.size(); ++j) {
            for (std::size_t k = 0; k < t[2].nodes.size(); ++k) {
                const double w = t[0].weights[i] * t[1].weights[j] * t[2].weights[k];
                const auto a = amplitudes({t[0].nodes[i], t[1].nodes[j], t[2].nodes[k]});
                for (int r = 0; r < 4; ++r) {
                    for (int c = 0; c < 4; ++c) {
                        amp(r, c) += w * a[r] * a[c];
                    }
                }
            }
        }
    }

    Matrix4c phase = Matrix4c::Ones();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            for (int v = 0; v < 3; ++v) {
                // Component k > 0 carries phi_{k-1}.
                const int m = (c == v + 1 ? 1 : 0) - (r == v + 1 ? 1 : 0);
                Complex sum = 0.0;
                const auto& rule = scheme.phi[v];
                for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                    sum += rule.weights[q] * std::exp(kI * (m * rule.nodes[q]));
                }
                phase(r, c) *= sum;
            }
        }
    }
    return amp.cast<Complex>().cwiseProduct(phase);
}

double husimi_integral(const DensityMatrix& rho, const IntegrationScheme& scheme) {
    // <n|rho|n> = sum_ab rho_ab (|n><n|)_ba
    return kHusimiPrefactor * (rho.matrix() * completeness_check(scheme)).trace().real();
}

double sync_measure_quadrature(const DensityMatrix& rho, double phi1, double phi2, double phi3,
                               const IntegrationScheme& scheme) {
    CoherentStateSU4 s;
    s.phi = {phi1, phi2, phi3};
    const auto& t = scheme.theta;
    double sum = 0.0;
    for (std::size_t i = 0; i < t[0].nodes.size(); ++i) {
        for (std::size_t j = 0; j < t[1].nodes.size(); ++j) {
            for (std::size_t k = 0; k < t[2].nodes.size(); ++k) {
                s.theta = {t[0].nodes[i], t[1].nodes[j], t[2].nodes[k]};
                const double w = t[0].weights[i] * t[1].weights[j] * t[2].weights[k];
                sum += w * husimi_full(rho, s);
            }
        }
    }
    return sum - kUniformPhaseDensity;
}

}  // namespace qsync
