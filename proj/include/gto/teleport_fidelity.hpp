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

// Teleportation fidelities for a pure Gaussian input sent through the
// Alice-Bob part of a three-mode channel, with or without Charlie measuring
// his mode first.
//
// For a two-mode resource with blocks (A, F; F^T, B) the fidelity is
// F = det(Gamma)^(-1/2), Gamma = 2 V_in + R A R + B - R F - F^T R with
// R = diag(1, -1). Projecting Charlie onto a Gaussian state with CM V0 replaces
// Gamma by Gamma - Sigma^T M Sigma, Sigma = E^T R - D^T, where M is the
// measurement matrix below.

#pragma once

#include <optional>
#include <string>

#include "gto/gaussian_core.hpp"

namespace gto {

enum class GammaProvenance { trace, conditional };

struct GammaMatrix {
    Mat2 matrix;
    GammaProvenance provenance;
};

struct MeasurementMatrix {
    Mat2 matrix;
    double g;
};

struct FidelityReport {
    double fidelity;
    GammaMatrix gamma;
    /// Empty for the non-assisted protocol.
    std::optional<MeasurementSpec> measurement;
};

namespace detail {

inline double fidelity_from_gamma(const Mat2 &gamma) {
    double det = gamma.determinant();
    if (!(det > 0.0) || !(gamma(0, 0) > 0.0)) {
        throw NonPhysicalError("Gamma is not positive definite (det " + std::to_string(det) + ")");
    }
    return 1.0 / std::sqrt(det);
}

inline Mat2 gamma_of(const Mat2 &vin, const Mat2 &alice, const Mat2 &bob, const Mat2 &cross) {
    const Mat2 r = reflection();
    Mat2 g = 2.0 * vin + r * alice * r + bob - r * cross - cross.transpose() * r;
    return (g + g.transpose()) / 2.0;
}

}  // namespace detail

/// Gamma^tr = 2 V_in + R A R + B - R F - F^T R for any two-mode resource.
inline GammaMatrix gamma_tr(const TwoModeState &reduced, const InputState &input) {
    Mat2 g = detail::gamma_of(input.cm(), reduced.alice(), reduced.bob(), reduced.cross());
    if (!(g(0, 0) > 0.0) || !(g.determinant() > 0.0)) {
        throw NonPhysicalError("Gamma^tr is not positive definite; input/channel combination is unphysical");
    }
    return {g, GammaProvenance::trace};
}

inline FidelityReport fidelity_tr(const TwoModeState &reduced, const InputState &input) {
    GammaMatrix g = gamma_tr(reduced, input);
    return {detail::fidelity_from_gamma(g.matrix), g, std::nullopt};
}

inline FidelityReport fidelity_tr(const ThreeModeState &state, const InputState &input) {
    return fidelity_tr(partial_trace_third(state), input);
}

/// Sigma = E^T R - D^T: how Charlie's quadratures enter the Bell-measurement noise.
inline Mat2 sigma_matrix(const ThreeModeState &state) {
    return state.alice_charlie().transpose() * reflection() - state.bob_charlie().transpose();
}

/// Measurement matrix M = (1/g) Omega [2(det V0 + 1/4) V0 + 4 det V0 C] Omega^T
/// with g = 4 det V0 det C + 2(det V0 + 1/4) Tr(V0 Omega C Omega^T) + (det V0 + 1/4)^2.
///
/// V0 may be mixed (det V0 >= 1/4); the projector is then E0 = rho(V0) and
/// the conditioning sees E0^2. For pure V0 this is (C + V0)^(-1).
namespace detail {

inline MeasurementMatrix measurement_matrix(const Mat2 &v0, double det_v0, const Mat2 &c) {
    const Mat2 om = omega();
    const double det_c = c.determinant();
    const double shifted = det_v0 + 0.25;
    const double g = 4.0 * det_v0 * det_c + 2.0 * shifted * (v0 * om * c * om.transpose()).trace() + shifted * shifted;
    if (!(g > 0.0)) {
        throw NonPhysicalError("measurement factor g = " + std::to_string(g) + " <= 0; Charlie's block is unphysical");
    }
    Mat2 m = om * (2.0 * shifted * v0 + 4.0 * det_v0 * c) * om.transpose() / g;
    m = (m + m.transpose()) / 2.0;
    if (!(m(0, 0) > 0.0) || !(m.determinant() > 0.0)) {
        throw NonPhysicalError("measurement matrix is not positive definite");
    }
    return {m, g};
}

}  // namespace detail

inline MeasurementMatrix measurement_matrix(const Mat2 &v0, const Mat2 &c) {
    return detail::measurement_matrix(v0, v0.determinant(), c);
}

/// Pure squeezed projector; det V0 = 1/4 is taken exactly rather than from
/// the entries, which cancel badly for xi or 1/xi beyond ~1e7.
inline MeasurementMatrix measurement_matrix(const MeasurementSpec &spec, const Mat2 &c) {
    return detail::measurement_matrix(squeezed_cm(spec), 0.25, c);
}

namespace detail {

inline TwoModeState conditional_cm(const ThreeModeState &state, const Mat2 &m) {
    Eigen::Matrix<double, 4, 2> x;
    x << state.alice_charlie(), state.bob_charlie();
    Mat4 v = state.cm().block<4, 4>(0, 0) - x * m * x.transpose();
    return TwoModeState((v + v.transpose()) / 2.0, state.displacement().head<4>());
}

}  // namespace detail

/// CM of the Alice-Bob state conditioned on Charlie's projection onto a
/// Gaussian state with CM `v0`.
inline TwoModeState conditional_cm(const ThreeModeState &state, const Mat2 &v0) {
    return detail::conditional_cm(state, measurement_matrix(v0, state.charlie()).matrix);
}

inline TwoModeState conditional_cm(const ThreeModeState &state, const MeasurementSpec &spec) {
    if (spec.xi().is_homodyne()) {
        throw HomodyneLimitError("conditional_cm needs finite xi; use conditional_gamma for homodyne limits");
    }
    return detail::conditional_cm(state, measurement_matrix(spec, state.charlie()).matrix);
}

/// Mean of the conditional state when Charlie's outcome has quadrature mean d0:
/// d^(0) = d^tr + [E M (d0 - d_c); D M (d0 - d_c)].
inline Vec4 conditional_displacement(const ThreeModeState &state, const MeasurementSpec &spec, const Vec2 &d0) {
    if (spec.xi().is_homodyne()) {
        throw HomodyneLimitError("conditional_displacement needs finite xi");
    }
    const Mat2 m = measurement_matrix(spec, state.charlie()).matrix;
    const Vec2 shift = m * (d0 - state.charlie_displacement());
    Vec4 d = state.displacement().head<4>();
    d.head<2>() += state.alice_charlie() * shift;
    d.tail<2>() += state.bob_charlie() * shift;
    return d;
}

/// Limit of M for an infinitely squeezed projector: xi -> 0 gives
/// v v^T / (v^T C v) with v = (sin phi, cos phi); xi -> +inf is the same at phi + pi/2.
inline Mat2 homodyne_measurement_matrix(const Mat2 &c, SqueezeFactor xi, double phi) {
    const double angle = xi.is_infinite() ? phi + kPi / 2.0 : phi;
    const Vec2 v = phase_vector(angle);
    const double ky = v.dot(c * v);
    if (!(ky > 0.0)) {
        throw NonPhysicalError("k_y <= 0: Charlie's block is not positive definite");
    }
    return v * v.transpose() / ky;
}

/// Gamma^(0) = Gamma^tr - Sigma^T M Sigma, computed without forming V^(0).
inline GammaMatrix conditional_gamma(const ThreeModeState &state, const InputState &input,
                                     const MeasurementSpec &spec) {
    const Mat2 g_tr = gamma_tr(partial_trace_third(state), input).matrix;
    const Mat2 sigma = sigma_matrix(state);
    Mat2 m;
    if (spec.xi().is_homodyne()) {
        m = homodyne_measurement_matrix(state.charlie(), spec.xi(), spec.phi());
    } else {
        m = measurement_matrix(spec, state.charlie()).matrix;
    }
    Mat2 g = g_tr - sigma.transpose() * m * sigma;
    return {(g + g.transpose()) / 2.0, GammaProvenance::conditional};
}

/// Conditional fidelity F^(0) for Charlie's pure Gaussian measurement.
///
/// Finite xi: det(Gamma^(0))^(-1/2). Homodyne limits use the closed form
/// F(0, phi) = [det Gamma^tr - k_x(phi)/k_y(phi)]^(-1/2), F(+inf, phi) = F(0, phi + pi/2)
/// with k_x = v^T U v, k_y = v^T C v and U = Sigma Omega Gamma^tr Omega^T Sigma^T.
inline FidelityReport conditional_fidelity(const ThreeModeState &state, const InputState &input,
                                           const MeasurementSpec &spec) {
    GammaMatrix g = conditional_gamma(state, input, spec);
    if (spec.xi().is_finite()) {
        return {detail::fidelity_from_gamma(g.matrix), g, spec};
    }
    const Mat2 g_tr = gamma_tr(partial_trace_third(state), input).matrix;
    const Mat2 sigma = sigma_matrix(state);
    const Mat2 u = sigma * adjugate(g_tr) * sigma.transpose();
    const double angle = spec.xi().is_infinite() ? spec.phi() + kPi / 2.0 : spec.phi();
    const Vec2 v = phase_vector(angle);
    const double kx = v.dot(u * v);
    const double ky = v.dot(state.charlie() * v);
    const double det = g_tr.determinant() - kx / ky;
    if (!(det > 0.0)) {
        throw NonPhysicalError("homodyne-limit Gamma determinant is not positive");
    }
    return {1.0 / std::sqrt(det), g, spec};
}

/// Probability of the Gaussian outcome of the dichotomic measurement
/// {E0, sqrt(I - E0^2)} with E0 the squeezed state of `spec` displaced to d0.
///
/// Obtained from the normalization of the conditional characteristic function:
/// P0 = exp(v^T Mt^-1 v / 4) / sqrt(g), v = i (delta; delta),
/// Mt = (C + V0, C - (i/2) Omega; C + (i/2) Omega, C + V0), g = det Mt.
/// Displacements are quadrature means; the characteristic function
/// exp(-eta^T V eta + i sqrt2 rbar^T eta) carries them as delta = sqrt2 (d0 - d_c).
inline double outcome_probability(const ThreeModeState &state, const MeasurementSpec &spec, const Vec2 &d0) {
    if (spec.xi().is_homodyne()) {
        throw HomodyneLimitError("outcome probability is undefined in the homodyne limit (continuous outcomes)");
    }
    using C4 = Eigen::Matrix4cd;
    const std::complex<double> i(0.0, 1.0);
    const Mat2 v0 = squeezed_cm(spec);
    const Mat2 c = state.charlie();
    const double g = measurement_matrix(spec, c).g;

    C4 mt;
    mt.block<2, 2>(0, 0) = (c + v0).cast<std::complex<double>>();
    mt.block<2, 2>(2, 2) = (c + v0).cast<std::complex<double>>();
    mt.block<2, 2>(0, 2) = c.cast<std::complex<double>>() - 0.5 * i * omega().cast<std::complex<double>>();
    mt.block<2, 2>(2, 0) = c.cast<std::complex<double>>() + 0.5 * i * omega().cast<std::complex<double>>();

    const Vec2 delta = std::sqrt(2.0) * (d0 - state.charlie_displacement());
    Eigen::Vector4cd v;
    v << i * delta(0), i * delta(1), i * delta(0), i * delta(1);
    const std::complex<double> exponent = 0.25 * v.transpose() * mt.inverse() * v;
    return std::exp(exponent.real()) / std::sqrt(g);
}

}  // namespace gto
