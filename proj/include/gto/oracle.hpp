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

// Brute-force verifiers that share no algebra with the closed forms: a dense
// (xi, phi) grid search, direct quadrature of the conditional characteristic
// function, and the two matrix inequalities behind the fidelity bounds.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <vector>

#include "gto/format.hpp"
#include "gto/gauss_hermite.hpp"
#include "gto/teleport_fidelity.hpp"

namespace gto {

inline constexpr double kGridXiMin = 1e-4;
inline constexpr double kGridXiMax = 1e4;

struct GridPoint {
    SqueezeFactor xi;
    double phi;
    double fidelity;
};

struct GridResult {
    SqueezeFactor best_xi;
    double best_phi = 0.0;
    double best_fidelity = 0.0;
    int n_xi = 0;
    int n_phi = 0;
    /// Row-major over (xi, phi); empty unless requested.
    std::vector<GridPoint> surface;
};

/// The xi axis of grid_search: 0, n_xi log-spaced values in [1e-4, 1e4], +inf.
inline std::vector<SqueezeFactor> grid_xi_axis(int n_xi) {
    std::vector<SqueezeFactor> xs;
    xs.reserve(n_xi + 2);
    xs.push_back(SqueezeFactor::zero());
    const double lo = std::log(kGridXiMin);
    const double hi = std::log(kGridXiMax);
    for (int i = 0; i < n_xi; ++i) {
        xs.push_back(SqueezeFactor(std::exp(lo + (hi - lo) * i / (n_xi - 1))));
    }
    xs.push_back(SqueezeFactor::infinity());
    return xs;
}

/// Exhaustive evaluation of conditional_fidelity over the grid; first maximum
/// in index order wins.
inline GridResult grid_search(const ThreeModeState &state, const InputState &input, int n_xi, int n_phi,
                              bool keep_surface = false) {
    if (n_xi < 8 || n_phi < 8) {
        throw DomainError("grid_search needs n_xi, n_phi >= 8");
    }
    GridResult out;
    out.n_xi = n_xi;
    out.n_phi = n_phi;
    out.best_fidelity = -1.0;
    const auto xs = grid_xi_axis(n_xi);
    if (keep_surface) {
        out.surface.reserve(xs.size() * n_phi);
    }
    for (const SqueezeFactor &xi : xs) {
        for (int j = 0; j < n_phi; ++j) {
            const double phi = kPi * j / n_phi;
            const double f = conditional_fidelity(state, input, MeasurementSpec(xi, phi)).fidelity;
            if (keep_surface) {
                out.surface.push_back({xi, phi, f});
            }
            if (f > out.best_fidelity) {
                out.best_fidelity = f;
                out.best_xi = xi;
                out.best_phi = phi;
            }
        }
    }
    return out;
}

inline void write_surface_csv(std::ostream &os, const GridResult &grid) {
    os << "xi,phi,fidelity\n";
    for (const auto &p : grid.surface) {
        os << format_number(p.xi) << ',' << format_number(p.phi) << ',' << format_number(p.fidelity) << '\n';
    }
}

struct QuadratureResult {
    TwoModeState conditional;
    /// Normalization P0 of the projected state.
    double probability;
    int order;
    /// Max change of any extracted moment between the last two orders.
    double error_estimate;
};

namespace detail {

inline constexpr double kQuadratureProbe = 0.3;
inline constexpr double kQuadratureTol = 1e-8;

/// Moments extracted from the characteristic function at one quadrature order.
struct QuadratureMoments {
    Mat4 cm;
    Vec4 displacement;
    double probability;
};

/// pi^-2 int int Phi0(theta) Phi0(kappa) Phi(eta_a, eta_b, -theta-kappa)
///      exp((theta kappa* - theta* kappa)/2) d^2theta d^2kappa
/// on a tensor Gauss-Hermite grid after centring and whitening the real
/// Gaussian part. Vectors use the characteristic-function scale (sqrt2 times
/// quadrature means).
class ConditionalIntegral {
   public:
    ConditionalIntegral(const ThreeModeState &state, const Mat2 &v0, const Vec2 &d0, int order)
        : state_(state), rule_(gauss_hermite_rule(order)) {
        const Mat2 c = state.charlie();
        Mat4 m = Mat4::Zero();
        m.block<2, 2>(0, 0) = c + v0;
        m.block<2, 2>(2, 2) = c + v0;
        m.block<2, 2>(0, 2) = c;
        m.block<2, 2>(2, 0) = c;
        m_inv_ = m.inverse();
        Eigen::LLT<Mat4> llt(m);
        if (llt.info() != Eigen::Success) {
            throw NonPhysicalError("quadrature: C + V0 is not positive definite");
        }
        l_inv_t_ = llt.matrixL().solve(Mat4::Identity()).transpose();
        norm_ = 1.0 / (std::sqrt(m.determinant()) * kPi * kPi);
        delta_ = std::sqrt(2.0) * (d0 - state.charlie_displacement());
    }

    /// Phi^(0)(eta) up to the factor 1/P0, eta in characteristic-function units.
    std::complex<double> operator()(const Vec4 &eta) const {
        const Vec2 x = state_.alice_charlie().transpose() * eta.head<2>() +
                       state_.bob_charlie().transpose() * eta.tail<2>();
        Vec4 b;
        b << 2.0 * x, 2.0 * x;
        const Vec4 centre = 0.5 * m_inv_ * b;
        const double shift = centre.dot(b) / 2.0;

        const auto &nodes = rule_.nodes;
        const auto &w = rule_.weights;
        const int n = static_cast<int>(nodes.size());
        std::complex<double> sum = 0.0;
        Vec4 y;
        for (int i0 = 0; i0 < n; ++i0) {
            y(0) = nodes[i0];
            for (int i1 = 0; i1 < n; ++i1) {
                y(1) = nodes[i1];
                const double w01 = w[i0] * w[i1];
                for (int i2 = 0; i2 < n; ++i2) {
                    y(2) = nodes[i2];
                    const double w012 = w01 * w[i2];
                    for (int i3 = 0; i3 < n; ++i3) {
                        y(3) = nodes[i3];
                        const Vec4 s = centre + l_inv_t_ * y;
                        const double phase = delta_.dot(s.head<2>() + s.tail<2>()) + s(1) * s(2) - s(0) * s(3);
                        sum += w012 * w[i3] * std::complex<double>(std::cos(phase), std::sin(phase));
                    }
                }
            }
        }
        const Mat4 vtr = state_.cm().block<4, 4>(0, 0);
        const std::complex<double> phi_tr =
            std::exp(std::complex<double>(-eta.dot(vtr * eta),
                                          std::sqrt(2.0) * state_.displacement().head<4>().dot(eta)));
        return phi_tr * std::exp(shift) * norm_ * sum;
    }

   private:
    ThreeModeState state_;
    GaussHermiteRule rule_;
    Mat4 m_inv_;
    Mat4 l_inv_t_;
    double norm_;
    Vec2 delta_;
};

inline QuadratureMoments quadrature_moments(const ThreeModeState &state, const Mat2 &v0, const Vec2 &d0, int order) {
    const ConditionalIntegral integral(state, v0, d0, order);
    const double s = kQuadratureProbe;
    const std::complex<double> norm = integral(Vec4::Zero());
    QuadratureMoments out;
    out.probability = norm.real();
    Vec4 diag;
    for (int i = 0; i < 4; ++i) {
        const std::complex<double> val = integral(s * Vec4::Unit(i)) / norm;
        diag(i) = -std::log(std::abs(val)) / (s * s);
        out.displacement(i) = std::arg(val) / (s * std::sqrt(2.0));
        out.cm(i, i) = diag(i);
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const std::complex<double> val = integral(s * (Vec4::Unit(i) + Vec4::Unit(j))) / norm;
            const double total = -std::log(std::abs(val)) / (s * s);
            out.cm(i, j) = out.cm(j, i) = 0.5 * (total - diag(i) - diag(j));
        }
    }
    return out;
}

}  // namespace detail

/// Conditional Alice-Bob state after Charlie's projection, obtained by direct
/// numerical integration of the conditional characteristic function. The
/// order doubles from 6 up to `max_order` until moments settle below 1e-8.
///
/// Needs moderate entries (|V| up to ~50) and moderate squeezing; strongly
/// squeezed projectors make the integrand oscillate too fast for the rule.
inline QuadratureResult quadrature_conditional(const ThreeModeState &state, const MeasurementSpec &spec,
                                               int max_order = 48) {
    if (spec.xi().is_homodyne()) {
        throw HomodyneLimitError("quadrature oracle needs finite xi");
    }
    const Mat2 v0 = squeezed_cm(spec);
    const Vec2 d0 = spec.displacement();
    auto prev = detail::quadrature_moments(state, v0, d0, 6);
    double err = 0.0;
    for (int order = 12; order <= max_order; order *= 2) {
        auto cur = detail::quadrature_moments(state, v0, d0, order);
        err = std::max({max_abs(cur.cm - prev.cm), (cur.displacement - prev.displacement).cwiseAbs().maxCoeff(),
                        std::abs(cur.probability - prev.probability)});
        prev = cur;
        if (err < detail::kQuadratureTol) {
            Mat4 v = (cur.cm + cur.cm.transpose()) / 2.0;
            return {TwoModeState(v, cur.displacement), cur.probability, order, err};
        }
    }
    throw ConvergenceError("Gauss-Hermite quadrature did not converge up to order " + std::to_string(max_order), err);
}

/// F^(0) >= F^tr - 1e-12 for this measurement.
inline bool verify_assisted_bound(const ThreeModeState &state, const InputState &input,
                                              const MeasurementSpec &spec) {
    const double f0 = conditional_fidelity(state, input, spec).fidelity;
    const double ftr = fidelity_tr(state, input).fidelity;
    return f0 >= ftr - 1e-12;
}

/// Smallest eigenvalue of M(I/2) - M((n_T + 1/2) I) for Charlie block `c`.
inline double thermal_dominance_min_eig(const Mat2 &c, double n_thermal) {
    if (!(n_thermal >= 0.0)) {
        throw DomainError("thermal occupation must be >= 0");
    }
    const Mat2 pure = measurement_matrix(0.5 * Mat2::Identity(), c).matrix;
    const Mat2 thermal = measurement_matrix((n_thermal + 0.5) * Mat2::Identity(), c).matrix;
    return min_eigenvalue_symmetric(pure - thermal);
}

inline constexpr double kDominanceTol = 1e-10;

inline bool verify_thermal_dominance(const Mat2 &c, double n_thermal) {
    return thermal_dominance_min_eig(c, n_thermal) >= -kDominanceTol;
}

}  // namespace gto
