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

// Optimal pure Gaussian measurement on Charlie's mode.
//
// With u = (det C + 1/4, (det Sigma)^2 - Tr(Omega C Omega^T U)) and
// k(phi) = (v^T U v, v^T C v), v = (sin phi, cos phi), the conditional
// fidelity is
//
//   F(xi, phi) = [det Gamma^tr - (-u_y + xi/2 k_x(phi-pi/2) + 1/(2xi) k_x(phi))
//                              / ( u_x + xi/2 k_y(phi-pi/2) + 1/(2xi) k_y(phi))]^(-1/2).
//
// For fixed phi the maximum over xi is closed form: with gamma(phi) = u.k(phi)
// and omega(phi) = [k(phi) x k(phi-pi/2)]_z / 2 it is the interior point
// xi_-(phi) = (omega - sqrt(omega^2 + gamma(phi-pi/2) gamma(phi))) / gamma(phi-pi/2)
// when gamma(phi) < 0 and gamma(phi-pi/2) < 0, and one of the homodyne limits
// xi in {0, +inf} otherwise. The maximization over phi is one-dimensional and
// is done over an explicit candidate set: stationary phases of F(0, phi),
// golden-section maxima inside the regions where the interior solution
// applies, both sides of every region border, and a uniform phase grid.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gto/golden_section.hpp"
#include "gto/teleport_fidelity.hpp"

namespace gto {

/// Fidelities closer than this are treated as equal when picking the optimum.
inline constexpr double kFidelityTieTol = 1e-12;
/// |xi - 1| below this is reported as plain heterodyne detection.
inline constexpr double kHeterodyneTol = 1e-9;
inline constexpr int kDefaultPhaseGrid = 1024;
inline constexpr int kRegionScan = 256;
inline constexpr double kPhaseTol = 1e-10;

struct OptimizerContext {
    Mat2 gamma_tr;
    double det_gamma_tr;
    Mat2 sigma;
    /// U = Sigma Omega Gamma^tr Omega^T Sigma^T.
    Mat2 u_matrix;
    Vec2 u;
    Mat2 charlie;
    /// tau = U Omega C Omega^T.
    Mat2 tau;

    Vec2 k(double phi) const {
        const Vec2 v = phase_vector(phi);
        return {v.dot(u_matrix * v), v.dot(charlie * v)};
    }

    double gamma(double phi) const {
        return u.dot(k(phi));
    }

    double omega(double phi) const {
        const Vec2 k1 = k(phi);
        const Vec2 k2 = k(phi - kPi / 2.0);
        return 0.5 * (k1.x() * k2.y() - k1.y() * k2.x());
    }

    /// F(0, phi) = [det Gamma^tr - k_x(phi)/k_y(phi)]^(-1/2).
    double fidelity_zero(double phi) const {
        const Vec2 kk = k(phi);
        return 1.0 / std::sqrt(det_gamma_tr - kk.x() / kk.y());
    }

    /// Vector form of F(xi, phi), including both homodyne limits.
    double fidelity(SqueezeFactor xi, double phi) const {
        if (xi.is_zero()) {
            return fidelity_zero(phi);
        }
        if (xi.is_infinite()) {
            return fidelity_zero(phi - kPi / 2.0);
        }
        const double x = xi.value();
        const Vec2 k1 = k(phi);
        const Vec2 k2 = k(phi - kPi / 2.0);
        const double num = -u.y() + 0.5 * x * k2.x() + 0.5 / x * k1.x();
        const double den = u.x() + 0.5 * x * k2.y() + 0.5 / x * k1.y();
        return 1.0 / std::sqrt(det_gamma_tr - num / den);
    }

    /// Sigma = 0: Charlie is uncorrelated with Alice and Bob.
    bool degenerate() const {
        return max_abs(sigma) <= 1e-14 * std::max(1.0, max_abs(gamma_tr));
    }

    /// U and C both proportional to the identity: nothing depends on phi.
    bool phase_independent() const {
        auto scalar = [](const Mat2 &m) {
            double scale = std::max(1e-300, max_abs(m));
            return std::abs(m(0, 1)) <= 1e-12 * scale && std::abs(m(1, 0)) <= 1e-12 * scale &&
                   std::abs(m(0, 0) - m(1, 1)) <= 1e-12 * scale;
        };
        return scalar(u_matrix) && scalar(charlie);
    }
};

inline OptimizerContext build_context(const ThreeModeState &state, const InputState &input) {
    OptimizerContext ctx;
    ctx.gamma_tr = gamma_tr(partial_trace_third(state), input).matrix;
    ctx.det_gamma_tr = ctx.gamma_tr.determinant();
    ctx.sigma = sigma_matrix(state);
    const Mat2 om = omega();
    Mat2 u = ctx.sigma * om * ctx.gamma_tr * om.transpose() * ctx.sigma.transpose();
    ctx.u_matrix = (u + u.transpose()) / 2.0;
    ctx.charlie = state.charlie();
    const double det_sigma = ctx.sigma.determinant();
    ctx.u = Vec2(ctx.charlie.determinant() + 0.25,
                 det_sigma * det_sigma - (om * ctx.charlie * om.transpose() * ctx.u_matrix).trace());
    ctx.tau = ctx.u_matrix * om * ctx.charlie * om.transpose();
    return ctx;
}

/// Which branch of the fixed-phase analysis applies (signs of gamma(phi-pi/2), gamma(phi)).
enum class StationaryCase {
    interior_maximum,  // both negative: xi_- is the global maximum
    interior_minimum,  // both positive: xi_+ is a minimum, maximum on the border
    mixed_signs,       // opposite signs: no stationary point
    one_vanishing,     // exactly one is zero: no stationary point
    both_vanishing,    // F does not depend on xi
};

inline const char *to_string(StationaryCase c) {
    switch (c) {
        case StationaryCase::interior_maximum:
            return "interior-maximum";
        case StationaryCase::interior_minimum:
            return "interior-minimum";
        case StationaryCase::mixed_signs:
            return "mixed-signs";
        case StationaryCase::one_vanishing:
            return "one-vanishing";
        case StationaryCase::both_vanishing:
            return "both-vanishing";
    }
    return "?";
}

struct PhaseProfile {
    double phi;
    Vec2 k;
    Vec2 k_shift;
    double gamma;
    double gamma_shift;
    double omega;
    bool p;
    StationaryCase active_case;
    /// xi_-(phi) whenever p holds.
    std::optional<double> xi_minus;
    /// Phase-conditional maximizer and its fidelity.
    SqueezeFactor xi_bar;
    double fidelity_bar;
    double fidelity_zero;
    double fidelity_infinity;
    /// F(xi_-, phi) if p, else F(0, phi).
    double fidelity_tilde;
};

inline PhaseProfile phase_profile(const OptimizerContext &ctx, double phi) {
    PhaseProfile out;
    out.phi = phi;
    out.k = ctx.k(phi);
    out.k_shift = ctx.k(phi - kPi / 2.0);
    out.gamma = ctx.u.dot(out.k);
    out.gamma_shift = ctx.u.dot(out.k_shift);
    out.omega = 0.5 * (out.k.x() * out.k_shift.y() - out.k.y() * out.k_shift.x());
    out.p = out.gamma < 0.0 && out.gamma_shift < 0.0;
    out.fidelity_zero = ctx.fidelity(SqueezeFactor::zero(), phi);
    out.fidelity_infinity = ctx.fidelity(SqueezeFactor::infinity(), phi);

    const double scale = std::abs(ctx.u.x()) * (std::abs(out.k.x()) + std::abs(out.k_shift.x())) +
                         std::abs(ctx.u.y()) * (std::abs(out.k.y()) + std::abs(out.k_shift.y()));
    const double zero_tol = 1e-13 * scale + 1e-300;
    const bool g_zero = std::abs(out.gamma) <= zero_tol;
    const bool gs_zero = std::abs(out.gamma_shift) <= zero_tol;

    if (g_zero && gs_zero) {
        out.active_case = StationaryCase::both_vanishing;
        out.p = false;
        out.xi_bar = SqueezeFactor(1.0);
        out.fidelity_bar = ctx.fidelity(out.xi_bar, phi);
        out.fidelity_tilde = out.fidelity_zero;
        return out;
    }
    if (out.p) {
        out.active_case = StationaryCase::interior_maximum;
        const double disc = std::sqrt(std::max(0.0, out.omega * out.omega + out.gamma_shift * out.gamma));
        // Two algebraically equal forms; pick the one without cancellation.
        const double xm = out.omega <= 0.0 ? (out.omega - disc) / out.gamma_shift : -out.gamma / (out.omega + disc);
        if (std::isfinite(xm) && xm > 0.0) {
            out.xi_minus = xm;
            out.xi_bar = SqueezeFactor(xm);
            out.fidelity_bar = ctx.fidelity(out.xi_bar, phi);
            out.fidelity_tilde = out.fidelity_bar;
            return out;
        }
    } else if (g_zero || gs_zero) {
        out.active_case = StationaryCase::one_vanishing;
    } else if (out.gamma > 0.0 && out.gamma_shift > 0.0) {
        out.active_case = StationaryCase::interior_minimum;
    } else {
        out.active_case = StationaryCase::mixed_signs;
    }
    // Border maximum: xi = 0 unless +inf is strictly better.
    if (out.fidelity_infinity > out.fidelity_zero + kFidelityTieTol) {
        out.xi_bar = SqueezeFactor::infinity();
        out.fidelity_bar = out.fidelity_infinity;
    } else {
        out.xi_bar = SqueezeFactor::zero();
        out.fidelity_bar = out.fidelity_zero;
    }
    out.fidelity_tilde = out.p && out.xi_minus ? out.fidelity_bar : out.fidelity_zero;
    return out;
}

struct StationaryPhase {
    double phi;
    /// +1 or -1: sign in front of the square root.
    int branch;
};

struct HomodyneStationaryPhases {
    /// Denominator vanishes: every phase is stationary.
    bool phase_independent = false;
    std::vector<StationaryPhase> phases;
};

/// Stationary points of F(0, phi) from
/// cos 2phi_+- = [tau12^2 - tau21^2 +- (tau11 - tau22) sqrt((tau11 - tau22)^2 + 4 tau12 tau21)]
///               / [(tau11 - tau22)^2 + (tau12 + tau21)^2].
inline HomodyneStationaryPhases homodyne_stationary_phases(const OptimizerContext &ctx) {
    HomodyneStationaryPhases out;
    const Mat2 &t = ctx.tau;
    const double a = t(0, 0) - t(1, 1);
    const double b = t(0, 1);
    const double c = t(1, 0);
    const double den = a * a + (b + c) * (b + c);
    const double scale = std::max(1e-300, max_abs(t));
    if (den <= 1e-24 * scale * scale) {
        out.phase_independent = true;
        return out;
    }
    const double root = std::sqrt(std::max(0.0, a * a + 4.0 * b * c));

    // Derivative of k_x/k_y up to the positive factor 1/k_y^2.
    auto slope = [&](double phi) {
        const Vec2 v = phase_vector(phi);
        const Vec2 dv(std::cos(phi), -std::sin(phi));
        const double kx = v.dot(ctx.u_matrix * v);
        const double ky = v.dot(ctx.charlie * v);
        const double dkx = 2.0 * dv.dot(ctx.u_matrix * v);
        const double dky = 2.0 * dv.dot(ctx.charlie * v);
        return (dkx * ky - kx * dky) / (ky * ky);
    };

    for (int branch : {+1, -1}) {
        double cos2 = (b * b - c * c + branch * a * root) / den;
        if (std::abs(cos2) > 1.0 + 1e-9) {
            continue;
        }
        cos2 = std::clamp(cos2, -1.0, 1.0);
        const double first = canonical_phase(0.5 * std::acos(cos2));
        const double second = canonical_phase(kPi - 0.5 * std::acos(cos2));
        double phi = first;
        if (std::abs(first - second) > 1e-12 && std::abs(slope(second)) < std::abs(slope(first))) {
            phi = second;
        }
        out.phases.push_back({phi, branch});
    }
    return out;
}

struct BorderPoint {
    double phi;
    /// Bracket of width <= kPhaseTol around the sign change of p.
    double lower;
    double upper;
    /// p holds just below the border.
    bool p_below;
};

/// Borders of the regions where p(phi) holds, located by bisection on sign
/// changes of min(-gamma(phi), -gamma(phi - pi/2)).
inline std::vector<BorderPoint> find_border_points(const OptimizerContext &ctx, int scan = 1024) {
    auto indicator = [&](double phi) { return std::min(-ctx.gamma(phi), -ctx.gamma(phi - kPi / 2.0)); };
    std::vector<BorderPoint> out;
    double prev_phi = 0.0;
    double prev = indicator(prev_phi);
    for (int j = 1; j <= scan; ++j) {
        const double phi = kPi * j / scan;
        const double cur = indicator(phi);
        if ((prev > 0.0) != (cur > 0.0)) {
            auto [lo, hi] = bisect_sign_change(indicator, prev_phi, phi, kPhaseTol);
            out.push_back({0.5 * (lo + hi), lo, hi, indicator(lo) > 0.0});
        }
        prev_phi = phi;
        prev = cur;
    }
    return out;
}

enum class MeasurementClass {
    heterodyne,           // xi = 1, coherent-state projection
    squeezed_heterodyne,  // finite xi != 1: squeeze, then heterodyne
    homodyne,             // xi = +inf: X(phi)
    homodyne_conjugate,   // xi = 0: X(phi + pi/2)
    any,                  // Charlie uncorrelated, every measurement is equivalent
};

inline const char *to_string(MeasurementClass c) {
    switch (c) {
        case MeasurementClass::heterodyne:
            return "heterodyne";
        case MeasurementClass::squeezed_heterodyne:
            return "squeezed-heterodyne";
        case MeasurementClass::homodyne:
            return "homodyne-X(phi)";
        case MeasurementClass::homodyne_conjugate:
            return "homodyne-X(phi+pi/2)";
        case MeasurementClass::any:
            return "any";
    }
    return "?";
}

inline MeasurementClass classify(SqueezeFactor xi) {
    if (xi.is_zero()) {
        return MeasurementClass::homodyne_conjugate;
    }
    if (xi.is_infinite()) {
        return MeasurementClass::homodyne;
    }
    if (std::abs(xi.value() - 1.0) < kHeterodyneTol) {
        return MeasurementClass::heterodyne;
    }
    return MeasurementClass::squeezed_heterodyne;
}

enum class CandidateSource { grid, homodyne_stationary, region_maximum, border, phase_independent, degenerate };

inline const char *to_string(CandidateSource s) {
    switch (s) {
        case CandidateSource::grid:
            return "grid";
        case CandidateSource::homodyne_stationary:
            return "homodyne-stationary";
        case CandidateSource::region_maximum:
            return "region-maximum";
        case CandidateSource::border:
            return "border";
        case CandidateSource::phase_independent:
            return "phase-independent";
        case CandidateSource::degenerate:
            return "degenerate";
    }
    return "?";
}

struct Candidate {
    double phi;
    SqueezeFactor xi;
    double fidelity;
    CandidateSource source;
};

struct OptimizationResult {
    SqueezeFactor xi_bar;
    double phi_bar;
    double fidelity;
    double fidelity_tr;
    MeasurementClass classification;
    /// Fixed-phase analysis at phi_bar (gamma, omega, active case).
    PhaseProfile profile;
    std::vector<double> border_points;
    std::vector<Candidate> candidates;
};

namespace detail {

/// Highest fidelity wins; within kFidelityTieTol the smaller phase wins.
inline bool better_candidate(const Candidate &c, const Candidate &best) {
    if (c.fidelity > best.fidelity + kFidelityTieTol) {
        return true;
    }
    if (c.fidelity < best.fidelity - kFidelityTieTol) {
        return false;
    }
    return c.phi < best.phi;
}

inline void maximize_region(const OptimizerContext &ctx, double start, double end, bool circular,
                            std::vector<Candidate> &out) {
    auto objective = [&](double phi) { return phase_profile(ctx, phi).fidelity_bar; };
    const int n = kRegionScan;
    const double step = (end - start) / n;
    std::vector<double> xs(n), fs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = start + (i + 0.5) * step;
        fs[i] = objective(xs[i]);
    }
    for (int i = 0; i < n; ++i) {
        const bool has_left = circular || i > 0;
        const bool has_right = circular || i < n - 1;
        const double left = has_left ? fs[(i + n - 1) % n] : -1.0;
        const double right = has_right ? fs[(i + 1) % n] : -1.0;
        if (fs[i] < left || fs[i] < right) {
            continue;
        }
        const double a = has_left ? xs[i] - step : start;
        const double b = has_right ? xs[i] + step : end;
        auto best = golden_section_maximize(objective, a, b, kPhaseTol);
        const double phi = canonical_phase(best.x);
        PhaseProfile prof = phase_profile(ctx, phi);
        out.push_back({phi, prof.xi_bar, prof.fidelity_bar, CandidateSource::region_maximum});
    }
}

}  // namespace detail

/// Globally optimal (xi, phi) for Charlie's pure Gaussian measurement.
inline OptimizationResult optimize(const ThreeModeState &state, const InputState &input,
                                   int phase_grid = kDefaultPhaseGrid) {
    if (phase_grid < 4) {
        throw DomainError("phase_grid must be >= 4");
    }
    const OptimizerContext ctx = build_context(state, input);
    OptimizationResult result;
    result.fidelity_tr = 1.0 / std::sqrt(ctx.det_gamma_tr);

    if (ctx.degenerate()) {
        result.xi_bar = SqueezeFactor(1.0);
        result.phi_bar = 0.0;
        result.fidelity = result.fidelity_tr;
        result.classification = MeasurementClass::any;
        result.profile = phase_profile(ctx, 0.0);
        result.candidates.push_back({0.0, result.xi_bar, result.fidelity, CandidateSource::degenerate});
        return result;
    }

    std::vector<Candidate> &cands = result.candidates;
    if (ctx.phase_independent()) {
        PhaseProfile prof = phase_profile(ctx, 0.0);
        cands.push_back({0.0, prof.xi_bar, prof.fidelity_bar, CandidateSource::phase_independent});
    } else {
        // Borders of the p-regions, both one-sided limits.
        const auto borders = find_border_points(ctx, kDefaultPhaseGrid);
        for (const auto &bp : borders) {
            result.border_points.push_back(canonical_phase(bp.phi));
            for (double side : {bp.lower, bp.upper}) {
                const double phi = canonical_phase(side);
                PhaseProfile prof = phase_profile(ctx, phi);
                cands.push_back({phi, prof.xi_bar, prof.fidelity_bar, CandidateSource::border});
            }
        }

        // Interior maxima of F(xi_-(phi), phi) inside each p-region.
        if (borders.empty()) {
            if (phase_profile(ctx, 0.0).p) {
                detail::maximize_region(ctx, 0.0, kPi, true, cands);
            }
        } else {
            const std::size_t nb = borders.size();
            for (std::size_t i = 0; i < nb; ++i) {
                const BorderPoint &lo = borders[i];
                const BorderPoint &hi = borders[(i + 1) % nb];
                if (lo.p_below) {
                    continue;  // p holds below lo, so (lo, hi) is outside
                }
                double end = hi.lower;
                if (i + 1 == nb || end <= lo.upper) {
                    end += kPi;
                }
                detail::maximize_region(ctx, lo.upper, end, false, cands);
            }
        }

        // Stationary points of F(0, phi) that fall where p does not hold.
        const auto stationary = homodyne_stationary_phases(ctx);
        for (const auto &sp : stationary.phases) {
            PhaseProfile prof = phase_profile(ctx, sp.phi);
            if (!prof.p) {
                cands.push_back({sp.phi, SqueezeFactor::zero(), prof.fidelity_zero,
                                 CandidateSource::homodyne_stationary});
            }
        }

        for (int j = 0; j < phase_grid; ++j) {
            const double phi = kPi * j / phase_grid;
            PhaseProfile prof = phase_profile(ctx, phi);
            cands.push_back({phi, prof.xi_bar, prof.fidelity_bar, CandidateSource::grid});
        }
    }

    Candidate best = cands.front();
    for (const auto &c : cands) {
        if (detail::better_candidate(c, best)) {
            best = c;
        }
    }
    result.xi_bar = best.xi;
    result.phi_bar = best.phi;
    result.fidelity = best.fidelity;
    result.classification = classify(best.xi);
    result.profile = phase_profile(ctx, best.phi);
    return result;
}

/// Closed-form optimum for the symmetric channel V(q) with a coherent input,
/// reached by heterodyne detection:
/// F = {h^2 - (w-t)^2 (s+1/2)^(-2) [(2s+1) h - (w-t)^2]}^(-1/2), h = 1 + q + s - 2w.
inline double assisted_fidelity_symmetric(double q) {
    const auto k = symmetric_channel_coefficients(q);
    const double h = 1.0 + k.q + k.s - 2.0 * k.w;
    const double wt2 = (k.w - k.t) * (k.w - k.t);
    const double inner = h * h - wt2 / ((k.s + 0.5) * (k.s + 0.5)) * ((2.0 * k.s + 1.0) * h - wt2);
    return 1.0 / std::sqrt(inner);
}

/// phi-independent gamma of V(q) with a coherent input:
/// (w-t)^2 [s (w-t)^2 - s^2 h + h/4].
inline double symmetric_channel_gamma(double q) {
    const auto k = symmetric_channel_coefficients(q);
    const double h = 1.0 + k.q + k.s - 2.0 * k.w;
    const double wt2 = (k.w - k.t) * (k.w - k.t);
    return wt2 * (k.s * wt2 - k.s * k.s * h + h / 4.0);
}

}  // namespace gto
