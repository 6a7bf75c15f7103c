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

#include <Eigen/Dense>

#include <complex>

namespace qsync {

using Complex = std::complex<double>;

using Vector2c = Eigen::Matrix<Complex, 2, 1>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr Complex kI{0.0, 1.0};

// Largest absolute entry of a (possibly complex) matrix expression.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

// Kronecker product of two fixed-size square matrices.
template <int N, int M>
Eigen::Matrix<Complex, N * M, N * M> kron(const Eigen::Matrix<Complex, N, N>& a,
                                          const Eigen::Matrix<Complex, M, M>& b) {
    Eigen::Matrix<Complex, N * M, N * M> out;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            out.template block<M, M>(i * M, j * M) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace qsync
