// Copyright 2026 The gto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gtest/gtest.h>

#include <cmath>

#include "gto/gaussian_core.hpp"
#include "gto/random_channels.hpp"

namespace gto::testing {

template <typename A, typename B>
::testing::AssertionResult MatricesNear(const A &a, const B &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return ::testing::AssertionFailure() << "shape mismatch";
    }
    const double gap = (a - b).cwiseAbs().maxCoeff();
    if (gap <= tol) {
        return ::testing::AssertionSuccess();
    }
    return ::testing::AssertionFailure() << "max |a - b| = " << gap << " > " << tol << "\n"
                                         << a << "\nvs\n"
                                         << b;
}

/// Phase vector pair from first principles: direction of the squeezed
/// quadrature and its orthogonal complement.
inline Mat2 squeezed_cm_from_outer_products(double xi, double phi) {
    const Vec2 a(std::sin(phi), std::cos(phi));
    const Vec2 b(std::cos(phi), -std::sin(phi));
    return 0.5 * (xi * a * a.transpose() + b * b.transpose() / xi);
}

/// Overlap Tr(rho sigma) of two single-mode Gaussian states, quadrature means.
inline double gaussian_overlap(const Mat2 &v1, const Vec2 &d1, const Mat2 &v2, const Vec2 &d2) {
    const Mat2 s = v1 + v2;
    const Vec2 delta = d1 - d2;
    return std::exp(-0.5 * delta.dot(s.inverse() * delta)) / std::sqrt(s.determinant());
}

/// Conditioning of a Gaussian on a pure Gaussian projection of its last mode
/// (Schur complement): V_AB - X (C + V0)^-1 X^T.
inline Mat4 schur_conditional(const ThreeModeState &s, const Mat2 &v0) {
    Eigen::Matrix<double, 4, 2> x = s.cm().block<4, 2>(0, 4);
    return s.cm().block<4, 4>(0, 0) - x * (s.charlie() + v0).inverse() * x.transpose();
}

/// Product state of three vacua with Alice-Bob replaced by `ab`.
inline ThreeModeState with_uncorrelated_charlie(const Mat4 &ab, const Mat2 &c) {
    Mat6 v = Mat6::Zero();
    v.block<4, 4>(0, 0) = ab;
    v.block<2, 2>(4, 4) = c;
    return ThreeModeState(v);
}

/// Two-mode squeezed vacuum with squeezing r.
inline Mat4 two_mode_squeezed(double r) {
    const double c = std::cosh(2.0 * r) / 2.0;
    const double s = std::sinh(2.0 * r) / 2.0;
    Mat4 v = Mat4::Zero();
    v.block<2, 2>(0, 0) = c * Mat2::Identity();
    v.block<2, 2>(2, 2) = c * Mat2::Identity();
    v.block<2, 2>(0, 2) = s * reflection();
    v.block<2, 2>(2, 0) = s * reflection();
    return v;
}

}  // namespace gto::testing
