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

// Correlation matrices (CMs) of one-, two- and three-mode Gaussian states.
//
// Units: symmetrically ordered second moments of the quadratures with the
// vacuum at I/2. The three-mode CM is laid out in 2x2 blocks
//
//       | A   F   E |        a = Alice, b = Bob, c = Charlie
//   V = | F^T B   D |        F: a-b,  E: a-c,  D: b-c
//       | E^T D^T C |
//
// All types are immutable values; all free functions are pure.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "gto/errors.hpp"
#include "gto/linalg.hpp"

namespace gto {

/// Absolute eigenvalue tolerance for genuineness / separability tests.
inline constexpr double kPhysicalityTol = 1e-9;

/// Map any angle onto [0, pi); the squeezed CM is pi-periodic in phi.
inline double canonical_phase(double phi) {
    if (!std::isfinite(phi)) {
        throw DomainError("phase must be finite");
    }
    double r = std::fmod(phi, kPi);
    if (r < 0.0) {
        r += kPi;
    }
    if (r >= kPi) {
        r = 0.0;
    }
    return r;
}

/// Squeezing factor xi = exp(2r) on the extended half-line [0, +inf].
///
/// The two endpoints are the homodyne limits and are stored as exact 0 and
/// +infinity, never as large finite stand-ins.
class SqueezeFactor {
   public:
    constexpr SqueezeFactor() = default;

    explicit SqueezeFactor(double xi) : value_(xi) {
        if (std::isnan(xi) || xi < 0.0) {
            throw DomainError("squeezing factor must lie in [0, +inf], got " + std::to_string(xi));
        }
    }

    static SqueezeFactor zero() {
        return SqueezeFactor(0.0);
    }
    static SqueezeFactor infinity() {
        return SqueezeFactor(std::numeric_limits<double>::infinity());
    }

    double value() const {
        return value_;
    }
    bool is_zero() const {
        return value_ == 0.0;
    }
    bool is_infinite() const {
        return std::isinf(value_);
    }
    bool is_homodyne() const {
        return is_zero() || is_infinite();
    }
    bool is_finite() const {
        return !is_homodyne();
    }

    SqueezeFactor inverse() const {
        if (is_zero()) {
            return infinity();
        }
        if (is_infinite()) {
            return zero();
        }
        return SqueezeFactor(1.0 / value_);
    }

    friend bool operator==(const SqueezeFactor &, const SqueezeFactor &) = default;

   private:
    double value_ = 1.0;
};

/// Projection of Charlie's mode onto the squeezed state |alpha, epsilon>.
class MeasurementSpec {
   public:
    MeasurementSpec() = default;
    MeasurementSpec(SqueezeFactor xi, double phi, std::complex<double> alpha = {})
        : xi_(xi), phi_(canonical_phase(phi)), alpha_(alpha) {
    }
    MeasurementSpec(double xi, double phi, std::complex<double> alpha = {})
        : MeasurementSpec(SqueezeFactor(xi), phi, alpha) {
    }

    SqueezeFactor xi() const {
        return xi_;
    }
    double phi() const {
        return phi_;
    }
    std::complex<double> alpha() const {
        return alpha_;
    }

    /// Quadrature mean of the measurement state, (sqrt2 Re alpha, sqrt2 Im alpha).
    Vec2 displacement() const {
        return std::sqrt(2.0) * Vec2(alpha_.real(), alpha_.imag());
    }

   private:
    SqueezeFactor xi_{};
    double phi_ = 0.0;
    std::complex<double> alpha_{};
};

/// Alice-Bob state: 4x4 CM with blocks (A, F; F^T, B) and a 4-vector mean.
class TwoModeState {
   public:
    TwoModeState() : cm_(Mat4::Identity() / 2.0), displacement_(Vec4::Zero()) {
    }

    explicit TwoModeState(const Mat4 &cm, const Vec4 &displacement = Vec4::Zero())
        : cm_(cm), displacement_(displacement) {
        if (!is_symmetric(cm_)) {
            throw StructuralError("two-mode correlation matrix is not symmetric");
        }
        cm_ = (cm_ + cm_.transpose()) / 2.0;
    }

    static TwoModeState from_blocks(const Mat2 &alice, const Mat2 &bob, const Mat2 &cross,
                                    const Vec4 &displacement = Vec4::Zero()) {
        Mat4 v;
        v << alice, cross, cross.transpose(), bob;
        return TwoModeState(v, displacement);
    }

    const Mat4 &cm() const {
        return cm_;
    }
    const Vec4 &displacement() const {
        return displacement_;
    }
    Mat2 alice() const {
        return cm_.block<2, 2>(0, 0);
    }
    Mat2 bob() const {
        return cm_.block<2, 2>(2, 2);
    }
    /// Block F (Alice rows, Bob columns).
    Mat2 cross() const {
        return cm_.block<2, 2>(0, 2);
    }

   private:
    Mat4 cm_;
    Vec4 displacement_;
};

/// The shared three-mode channel.
class ThreeModeState {
   public:
    ThreeModeState() : cm_(Mat6::Identity() / 2.0), displacement_(Vec6::Zero()) {
    }

    explicit ThreeModeState(const Mat6 &cm, const Vec6 &displacement = Vec6::Zero())
        : cm_(cm), displacement_(displacement) {
        if (!is_symmetric(cm_)) {
            throw StructuralError("three-mode correlation matrix is not symmetric");
        }
        cm_ = (cm_ + cm_.transpose()) / 2.0;
    }

    /// Assemble from the six blocks (A, B, C self-correlations; F, E, D cross).
    static ThreeModeState from_blocks(const Mat2 &a, const Mat2 &b, const Mat2 &c, const Mat2 &d, const Mat2 &e,
                                      const Mat2 &f, const Vec6 &displacement = Vec6::Zero()) {
        for (const Mat2 *m : {&a, &b, &c}) {
            if (!is_symmetric(*m)) {
                throw StructuralError("diagonal blocks A, B, C must be symmetric");
            }
        }
        Mat6 v;
        v << a, f, e, f.transpose(), b, d, e.transpose(), d.transpose(), c;
        return ThreeModeState(v, displacement);
    }

    const Mat6 &cm() const {
        return cm_;
    }
    const Vec6 &displacement() const {
        return displacement_;
    }

    Mat2 alice() const {
        return cm_.block<2, 2>(0, 0);
    }
    Mat2 bob() const {
        return cm_.block<2, 2>(2, 2);
    }
    Mat2 charlie() const {
        return cm_.block<2, 2>(4, 4);
    }
    /// Block F.
    Mat2 alice_bob() const {
        return cm_.block<2, 2>(0, 2);
    }
    /// Block E.
    Mat2 alice_charlie() const {
        return cm_.block<2, 2>(0, 4);
    }
    /// Block D.
    Mat2 bob_charlie() const {
        return cm_.block<2, 2>(2, 4);
    }
    Vec2 charlie_displacement() const {
        return displacement_.segment<2>(4);
    }

    ThreeModeState with_displacement(const Vec6 &d) const {
        return ThreeModeState(cm_, d);
    }

   private:
    Mat6 cm_;
    Vec6 displacement_;
};

/// Pure single-mode Gaussian input to be teleported.
class InputState {
   public:
    InputState() : cm_(Mat2::Identity() / 2.0) {
    }

    explicit InputState(const Mat2 &cm, std::complex<double> amplitude = {}) : cm_(cm), amplitude_(amplitude) {
        if (!is_symmetric(cm_)) {
            throw StructuralError("input correlation matrix is not symmetric");
        }
        cm_ = (cm_ + cm_.transpose()) / 2.0;
        if (cm_(0, 0) <= 0.0 || cm_.determinant() <= 0.0) {
            throw DomainError("input correlation matrix must be positive definite");
        }
        if (std::abs(cm_.determinant() - 0.25) > kPhysicalityTol * std::max(1.0, max_abs(cm_))) {
            throw DomainError("input state must be pure (det V_in = 1/4)");
        }
    }

    static InputState coherent(std::complex<double> amplitude = {}) {
        return InputState(Mat2::Identity() / 2.0, amplitude);
    }

    const Mat2 &cm() const {
        return cm_;
    }
    /// Carried along for completeness; fidelities do not depend on it.
    std::complex<double> amplitude() const {
        return amplitude_;
    }

   private:
    Mat2 cm_;
    std::complex<double> amplitude_{};
};

/// Outcome of a semidefiniteness test.
struct Verdict {
    bool holds;
    double min_eig;
};

/// Block-diagonal symplectic form with `n_modes` copies of Omega.
inline Eigen::MatrixXd symplectic_form(int n_modes) {
    if (n_modes < 1 || n_modes > 3) {
        throw DomainError("symplectic_form supports 1 to 3 modes");
    }
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        j.block<2, 2>(2 * k, 2 * k) = omega();
    }
    return j;
}

/// diag(Omega, -Omega): the two-mode form after partial transposition of Bob.
inline Mat4 partially_transposed_form() {
    Mat4 j = Mat4::Zero();
    j.block<2, 2>(0, 0) = omega();
    j.block<2, 2>(2, 2) = -omega();
    return j;
}

/// Bona fide condition V - (i/2)J >= 0 on a raw 6x6 matrix.
inline Verdict is_genuine(const Mat6 &cm, double tol = kPhysicalityTol) {
    if (!is_symmetric(cm)) {
        throw StructuralError("correlation matrix is not symmetric");
    }
    double m = min_eigenvalue_hermitian(cm, -0.5 * symplectic_form(3));
    return {m >= -tol, m};
}

inline Verdict is_genuine(const ThreeModeState &state, double tol = kPhysicalityTol) {
    return is_genuine(state.cm(), tol);
}

/// Bona fide condition V - (i/2)diag(Omega, Omega) >= 0.
inline Verdict is_physical(const TwoModeState &state, double tol = kPhysicalityTol) {
    double m = min_eigenvalue_hermitian(state.cm(), -0.5 * symplectic_form(2));
    return {m >= -tol, m};
}

/// PPT test V - (i/2)diag(Omega, -Omega) >= 0. Necessary and sufficient for
/// 1x1-mode Gaussian states.
inline Verdict is_separable_two_mode(const TwoModeState &state, double tol = kPhysicalityTol) {
    Verdict physical = is_physical(state, tol);
    if (!physical.holds) {
        throw PreconditionError("separability test needs a physical two-mode state (min eig " +
                                std::to_string(physical.min_eig) + ")");
    }
    double m = min_eigenvalue_hermitian(state.cm(), -0.5 * partially_transposed_form());
    return {m >= -tol, m};
}

/// Alice-Bob state with Charlie traced out.
inline TwoModeState partial_trace_third(const ThreeModeState &state) {
    return TwoModeState(state.cm().block<4, 4>(0, 0), state.displacement().head<4>());
}

/// Relabel Alice <-> Bob (swaps A/B and E/D, transposes F).
inline ThreeModeState swap_alice_bob(const ThreeModeState &state) {
    Vec6 d = state.displacement();
    Vec6 swapped;
    swapped << d.segment<2>(2), d.segment<2>(0), d.segment<2>(4);
    return ThreeModeState::from_blocks(state.bob(), state.alice(), state.charlie(), state.alice_charlie(),
                                       state.bob_charlie(), state.alice_bob().transpose(), swapped);
}

/// CM of the squeezed vacuum S(epsilon)|0> with xi = exp(2r), finite xi only.
inline Mat2 squeezed_cm(SqueezeFactor xi, double phi) {
    if (xi.is_homodyne()) {
        throw HomodyneLimitError("squeezed_cm: xi is a homodyne limit (0 or +inf); use the closed-form limits");
    }
    double x = xi.value();
    double s = std::sin(phi);
    double c = std::cos(phi);
    Mat2 v;
    v(0, 0) = x * s * s + c * c / x;
    v(0, 1) = (x - 1.0 / x) * c * s;
    v(1, 0) = v(0, 1);
    v(1, 1) = x * c * c + s * s / x;
    return v / 2.0;
}

inline Mat2 squeezed_cm(const MeasurementSpec &spec) {
    return squeezed_cm(spec.xi(), spec.phi());
}

inline InputState squeezed_input(double xi, double phi) {
    return InputState(squeezed_cm(SqueezeFactor(xi), phi));
}

/// Coefficients (s, t, w) of the one-parameter family V(q).
struct SymmetricChannelCoefficients {
    double q, s, t, w;
};

inline SymmetricChannelCoefficients symmetric_channel_coefficients(double q) {
    if (!(q >= 0.5)) {
        throw DomainError("symmetric channel needs q >= 1/2, got " + std::to_string(q));
    }
    return {q, (q + 1.0) / 2.0, q / 2.0, std::sqrt((2.0 * q - 1.0) * (q + 1.0)) / 2.0};
}

/// V(q) = (qI wR wR; wR sI tI; wR tI sI) with s=(q+1)/2, t=q/2, w=sqrt((2q-1)(q+1))/2.
inline ThreeModeState build_symmetric_channel(double q) {
    auto k = symmetric_channel_coefficients(q);
    Mat2 id = Mat2::Identity();
    Mat2 r = reflection();
    return ThreeModeState::from_blocks(k.q * id, k.s * id, k.s * id, k.t * id, k.w * r, k.w * r);
}

struct ExampleChannelParams {
    double a, b, c, d, e, f;
};

/// Separable reduced state; optimum is a finitely squeezed heterodyne.
inline constexpr ExampleChannelParams kExampleChannel1{10.15, 5.52, 15.2, 8.87, 12.3, 6.96};
/// Separable reduced state; optimum is a homodyne detection.
inline constexpr ExampleChannelParams kExampleChannel2{0.55, 0.89, 0.94, 0.74, 0.249, 0.12};

/// V = (aI fI eR; fI bI dR; eR dR cI). Genuineness is the caller's business.
inline ThreeModeState build_example_channel(const ExampleChannelParams &p) {
    Mat2 id = Mat2::Identity();
    Mat2 r = reflection();
    return ThreeModeState::from_blocks(p.a * id, p.b * id, p.c * id, p.d * r, p.e * r, p.f * id);
}

}  // namespace gto
