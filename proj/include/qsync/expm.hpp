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

// Matrix exponential by scaling and squaring with diagonal Pade
// approximants, following Higham (2005). The degree is picked from the
// 1-norm of the argument; degree 13 is combined with 2^-s scaling. Works for
// any Eigen scalar type, including std::complex<long double>.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsync {

namespace detail {

template <typename MatrixType>
double one_norm(const MatrixType& a) {
    return static_cast<double>(a.cwiseAbs().colwise().sum().maxCoeff());
}

template <typename MatrixType>
void pade_odd_even(const MatrixType& a, const double* coeffs, int degree, MatrixType& u, MatrixType& v) {
    using Real = typename Eigen::NumTraits<typename MatrixType::Scalar>::Real;
    Real b[14];
    for (int k = 0; k <= degree; ++k) {
        b[k] = static_cast<Real>(coeffs[k]);
    }
    const MatrixType id = MatrixType::Identity(a.rows(), a.cols());
    const MatrixType a2 = a * a;
    if (degree == 13) {
        const MatrixType a4 = a2 * a2;
        const MatrixType a6 = a4 * a2;
        const MatrixType inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
        const MatrixType inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
        u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
        v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
        return;
    }
    // Degrees 3..9: accumulate even powers directly.
    MatrixType odd = b[1] * id;
    MatrixType even = b[0] * id;
    MatrixType power = id;
    for (int k = 2; k <= degree; k += 2) {
        power = power * a2;
        odd += b[k + 1] * power;
        even += b[k] * power;
    }
    u = a * odd;
    v = even;
}

}  // namespace detail

template <typename MatrixType>
MatrixType expm(const MatrixType& a) {
    using detail::one_norm;
    if (!a.allFinite()) {
        throw std::invalid_argument("expm: non-finite argument");
    }

    static constexpr double b3[] = {120.0, 60.0, 12.0, 1.0};
    static constexpr double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
    static constexpr double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
    static constexpr double b9[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                    2162160.0,     110880.0,     3960.0,       90.0,        1.0};
    static constexpr double b13[] = {64764752532480000.0,
                                     32382376266240000.0,
                                     7771770303897600.0,
                                     1187353796428800.0,
                                     129060195264000.0,
                                     10559470521600.0,
                                     670442572800.0,
                                     33522128640.0,
                                     1323241920.0,
                                     40840800.0,
                                     960960.0,
                                     16380.0,
                                     182.0,
                                     1.0};
    // Backward-error bounds theta_m for double precision.
    static constexpr double theta3 = 1.495585217958292e-2;
    static constexpr double theta5 = 2.539398330063230e-1;
    static constexpr double theta7 = 9.504178996162932e-1;
    static constexpr double theta9 = 2.097847961257068e0;
    static constexpr double theta13 = 5.371920351148152e0;

    const double norm = one_norm(a);
    MatrixType u;
    MatrixType v;
    int squarings = 0;

    if (norm <= theta3) {
        detail::pade_odd_even(a, b3, 3, u, v);
    } else if (norm <= theta5) {
        detail::pade_odd_even(a, b5, 5, u, v);
    } else if (norm <= theta7) {
        detail::pade_odd_even(a, b7, 7, u, v);
    } else if (norm <= theta9) {
        detail::pade_odd_even(a, b9, 9, u, v);
    } else {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
        using Real = typename Eigen::NumTraits<typename MatrixType::Scalar>::Real;
        const MatrixType scaled = a * std::ldexp(Real(1), -squarings);
        detail::pade_odd_even(scaled, b13, 13, u, v);
    }

    // r = (v - u)^-1 (v + u)
    MatrixType r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) {
        r = r * r;
    }
    return r;
}

}  // namespace qsync
