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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace gto {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

inline constexpr double kPi = 3.14159265358979323846;

/// Single-mode symplectic form [[0,-1],[1,0]].
inline Mat2 omega() {
    Mat2 m;
    m << 0.0, -1.0, 1.0, 0.0;
    return m;
}

/// Phase-space reflection diag(1,-1) used by the Bell measurement.
inline Mat2 reflection() {
    return Vec2(1.0, -1.0).asDiagonal();
}

/// Adjugate of a 2x2 matrix; equals Omega S Omega^T when S is symmetric.
inline Mat2 adjugate(const Mat2 &m) {
    Mat2 r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r;
}

/// Largest absolute entry, used to scale relative tolerances.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived> &m, double tol = 1e-12) {
    if (m.rows() != m.cols()) {
        return false;
    }
    double scale = std::max(1.0, max_abs(m));
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

/// Smallest eigenvalue of the Hermitian matrix V + i*K (K real antisymmetric).
template <typename DerivedV, typename DerivedK>
double min_eigenvalue_hermitian(const Eigen::MatrixBase<DerivedV> &v, const Eigen::MatrixBase<DerivedK> &k) {
    Eigen::MatrixXcd h = v.template cast<std::complex<double>>();
    h += std::complex<double>(0.0, 1.0) * k.template cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

template <typename Derived>
double min_eigenvalue_symmetric(const Eigen::MatrixBase<Derived> &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.eval(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

/// Unit vector (sin phi, cos phi) selecting the squeezing direction.
inline Vec2 phase_vector(double phi) {
    return Vec2(std::sin(phi), std::cos(phi));
}

}  // namespace gto
