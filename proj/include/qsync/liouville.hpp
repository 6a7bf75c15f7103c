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

#include "qsync/dissipation.hpp"
#include "qsync/hamiltonians.hpp"
#include "qsync/system_model.hpp"
#include "qsync/types.hpp"

#include <span>
#include <vector>

namespace qsync {

// Column-stacked |rho>>: entry (i, j) of rho sits at position i + 4 j.
Vector16c vectorize(const Matrix4c& rho);
Matrix4c devectorize(const Vector16c& v);

/// Superoperator of rho -> B rho C under column stacking, i.e. C^T (x) B.
Matrix16c sandwich_superoperator(const Matrix4c& left, const Matrix4c& right);

/// Master-equation generator stored as drift/dissipation part plus drive part.
class Liouvillian {
public:
    static constexpr double kTracePreservationTol = 1e-10;

    Liouvillian(const Matrix16c& drift, const Matrix16c& drive);

    const Matrix16c& drift() const noexcept { return drift_; }
    const Matrix16c& drive() const noexcept { return drive_; }
    const Matrix16c& total() const noexcept { return total_; }

    Liouvillian operator+(const Liouvillian& other) const;

    /// Largest |(vec(1)^dagger L)_k|, zero for a trace-preserving generator.
    double trace_defect() const;

private:
    Matrix16c drift_;
    Matrix16c drive_;
    Matrix16c total_;
};

/// -i(1 (x) H0 - H0^T (x) 1) + sum_j [O_j^* (x) O_j - 1/2 (1 (x) O_j^dag O_j + (O_j^dag O_j)^T (x) 1)].
Liouvillian build_L0(const HamiltonianMatrix& h0, std::span<const JumpOperator> jumps);

/// -i(1 (x) V - V^T (x) 1).
Liouvillian build_LV(const HamiltonianMatrix& v);

/// L0 + LV for the two-spin model in the doubly rotating frame.
Liouvillian build_liouvillian(const SpinSystemConfig& config, const DriveConfig& drive);

/// Right-hand side of the master equation in matrix form; used as the
/// reference for the vectorized generator.
Matrix4c master_equation_rhs(const Matrix4c& h, std::span<const JumpOperator> jumps, const Matrix4c& rho);

/// exp(L t) rho0 for t >= 0.
DensityMatrix propagate(const Liouvillian& l, const DensityMatrix& rho0, double t);

/// exp(L t) as a 16x16 matrix; reuse it to propagate many initial states.
Matrix16c propagator(const Liouvillian& l, double t);

/// Same trajectory as propagate, computed as fixed + exp(L t)(rho0 - fixed).
/// Only the deviation passes through the exponential, which keeps small
/// coherences accurate when the populations are nearly static. `fixed` must
/// satisfy L vec(fixed) = 0.
DensityMatrix propagate_about(const Liouvillian& l, const DensityMatrix& fixed, const DensityMatrix& rho0, double t);

struct SteadyStateOptions {
    /// Kernel is degenerate when sigma_{n-1} < degeneracy_ratio * sigma_max.
    double degeneracy_ratio = 1e-8;
};

/// Kernel of L from the smallest right singular vector, normalized to unit
/// trace and Hermitized. Throws AmbiguousSteadyStateError for a degenerate
/// kernel and EngineError when the solve fails.
DensityMatrix steady_state(const Liouvillian& l, const SteadyStateOptions& options = {});

struct SpectralReport {
    std::vector<Complex> eigenvalues;  // sorted by descending real part
    double gap = 0.0;                  // |Re lambda_2|
    int near_zero_count = 0;           // |lambda| < 1e-10
};

SpectralReport spectral_report(const Liouvillian& l);

}  // namespace qsync
