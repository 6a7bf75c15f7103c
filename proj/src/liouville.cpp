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

#include "qsync/liouville.hpp"

#include "qsync/errors.hpp"
#include "qsync/expm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsync {

namespace {

const Matrix4c& identity4() {
    static const Matrix4c id = Matrix4c::Identity();
    return id;
}

Matrix16c commutator_superoperator(const Matrix4c& h) {
    return -kI * (kron<4, 4>(identity4(), h) - kron<4, 4>(h.transpose(), identity4()));
}

Vector16c identity_vector() {
    return vectorize(identity4());
}

}  // namespace

Vector16c vectorize(const Matrix4c& rho) {
    Vector16c v;
    for (int j = 0; j < 4; ++j) {
        v.segment<4>(4 * j) = rho.col(j);
    }
    return v;
}

Matrix4c devectorize(const Vector16c& v) {
    Matrix4c rho;
    for (int j = 0; j < 4; ++j) {
        rho.col(j) = v.segment<4>(4 * j);
    }
    return rho;
}

Matrix16c sandwich_superoperator(const Matrix4c& left, const Matrix4c& right) {
    return kron<4, 4>(right.transpose(), left);
}

Liouvillian::Liouvillian(const Matrix16c& drift, const Matrix16c& drive)
    : drift_(drift), drive_(drive), total_(drift + drive) {}

Liouvillian Liouvillian::operator+(const Liouvillian& other) const {
    return {drift_ + other.drift_, drive_ + other.drive_};
}

double Liouvillian::trace_defect() const {
    return max_abs(identity_vector().adjoint() * total_);
}

Liouvillian build_L0(const HamiltonianMatrix& h0, std::span<const JumpOperator> jumps) {
    Matrix16c l = commutator_superoperator(h0.matrix());
    for (const auto& jump : jumps) {
        const Matrix4c& o = jump.matrix;
        const Matrix4c odo = o.adjoint() * o;
        l += kron<4, 4>(o.conjugate(), o) -
             0.5 * (kron<4, 4>(identity4(), odo) + kron<4, 4>(odo.transpose(), identity4()));
    }
    return {l, Matrix16c::Zero()};
}

Liouvillian build_LV(const HamiltonianMatrix& v) {
    return {Matrix16c::Zero(), commutator_superoperator(v.matrix())};
}

Liouvillian build_liouvillian(const SpinSystemConfig& config, const DriveConfig& drive) {
    drive.validate();
    const auto jumps = build_jump_operators(config);
    return build_L0(build_drift_hamiltonian(config, drive.detuning_hz), jumps) +
           build_LV(build_drive_hamiltonian(drive.amplitude_hz));
}

Matrix4c master_equation_rhs(const Matrix4c& h, std::span<const JumpOperator> jumps, const Matrix4c& rho) {
    Matrix4c out = -kI * (h * rho - rho * h);
    for (const auto& jump : jumps) {
        const Matrix4c& o = jump.matrix;
        const Matrix4c odo = o.adjoint() * o;
        out += o * rho * o.adjoint() - 0.5 * (odo * rho + rho * odo);
    }
    return out;
}

Matrix16c propagator(const Liouvillian& l, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("propagate: time must be finite and >= 0");
    }
    if (t == 0.0) {
        return Matrix16c::Identity();
    }
    // The generator carries J-scale frequencies, so long propagation needs
    // many squarings and each one doubles the accumulated rounding error.
    // Extended precision keeps the result accurate to double precision over
    // the full range of times used by the experiments.
    using Matrix16cl = Eigen::Matrix<std::complex<long double>, 16, 16>;
    const Matrix16cl a = l.total().cast<std::complex<long double>>() * static_cast<long double>(t);
    return expm<Matrix16cl>(a).cast<Complex>();
}

DensityMatrix propagate(const Liouvillian& l, const DensityMatrix& rho0, double t) {
    if (t == 0.0) {
        return rho0;
    }
    const Matrix4c rho = devectorize(propagator(l, t) * vectorize(rho0.matrix()));
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix propagate_about(const Liouvillian& l, const DensityMatrix& fixed, const DensityMatrix& rho0, double t) {
    if (t == 0.0) {
        return rho0;
    }
    const Matrix4c delta = rho0.matrix() - fixed.matrix();
    const Matrix4c rho = fixed.matrix() + devectorize(propagator(l, t) * vectorize(delta));
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix steady_state(const Liouvillian& l, const SteadyStateOptions& options) {
    const Matrix16c& m = l.total();
    Eigen::JacobiSVD<Matrix16c> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    if (!(sigma_max > 0.0) || !sigma.allFinite()) {
        throw AmbiguousSteadyStateError("steady_state: Liouvillian is zero or non-finite");
    }
    if (sigma(14) < options.degeneracy_ratio * sigma_max) {
        throw AmbiguousSteadyStateError("steady_state: kernel of the Liouvillian is degenerate");
    }

    // Solve for the deviation from the maximally mixed state rather than the
    // state itself. The Hamiltonian part annihilates the identity exactly, so
    // the right-hand side is only as large as the thermal bias and the
    // rounding error scales with |rho - 1/4| instead of with the populations.
    const Matrix4c mixed = Matrix4c::Identity() / 4.0;
    const Vector16c rhs = -(m * vectorize(mixed));
    const Vector16c projected = svd.matrixU().leftCols(15).adjoint() * rhs;
    Vector16c delta = svd.matrixV().leftCols(15) *
                      (projected.array() / sigma.head(15).array().cast<Complex>()).matrix();

    const Vector16c kernel = svd.matrixV().col(15);
    const Complex kernel_trace = devectorize(kernel).trace();
    if (std::abs(kernel_trace) < 1e-6) {
        throw EngineError("steady_state: kernel vector is traceless");
    }
    delta -= (devectorize(delta).trace() / kernel_trace) * kernel;

    Matrix4c rho = mixed + devectorize(delta);
    rho = 0.5 * (rho + rho.adjoint());

    const double residual = (m * vectorize(rho)).norm();
    if (residual > 1e-10 * sigma_max) {
        throw EngineError("steady_state: null-space residual too large");
    }
    return DensityMatrix(rho);
}

SpectralReport spectral_report(const Liouvillian& l) {
    Eigen::ComplexEigenSolver<Matrix16c> es(l.total(), false);
    if (es.info() != Eigen::Success) {
        throw EngineError("spectral_report: eigen decomposition failed");
    }
    SpectralReport report;
    const auto& ev = es.eigenvalues();
    report.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
              [](const Complex& a, const Complex& b) { return a.real() > b.real(); });
    report.gap = std::abs(report.eigenvalues[1].real());
    report.near_zero_count = static_cast<int>(std::count_if(
        report.eigenvalues.begin(), report.eigenvalues.end(), [](const Complex& z) { return std::abs(z) < 1e-10; }));
    return report;
}

}  // namespace qsync
