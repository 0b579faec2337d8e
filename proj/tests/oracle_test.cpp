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

#include "gto/oracle.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "gto/measurement_optimizer.hpp"
#include "test_util.hpp"

namespace gto {
namespace {

using testing::MatricesNear;

const InputState kCoherent = InputState::coherent();

TEST(GaussHermite, ThreePointRule) {
    const GaussHermiteRule r = gauss_hermite_rule(3);
    const double sqrt_pi = std::sqrt(kPi);
    EXPECT_NEAR(r.nodes[0], -std::sqrt(1.5), 1e-15);
    EXPECT_NEAR(r.nodes[1], 0.0, 1e-15);
    EXPECT_NEAR(r.nodes[2], std::sqrt(1.5), 1e-15);
    EXPECT_NEAR(r.weights[0], sqrt_pi / 6.0, 1e-15);
    EXPECT_NEAR(r.weights[1], 2.0 * sqrt_pi / 3.0, 1e-15);
}

TEST(GaussHermite, ExactForPolynomials) {
    // int x^(2k) exp(-x^2) dx = Gamma(k + 1/2)
    for (int n : {5, 12, 24, 48}) {
        const GaussHermiteRule r = gauss_hermite_rule(n);
        for (int k = 0; k < n; ++k) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                sum += r.weights[i] * std::pow(r.nodes[i], 2 * k);
            }
            const double exact = std::tgamma(k + 0.5);
            EXPECT_NEAR(sum, exact, 1e-12 * exact) << "n = " << n << ", k = " << k;
        }
    }
    EXPECT_THROW(gauss_hermite_rule(0), DomainError);
}

TEST(GridSearch, FlatForUncorrelatedCharlie) {
    const ThreeModeState s = testing::with_uncorrelated_charlie(testing::two_mode_squeezed(0.2), Mat2::Identity());
    const GridResult g = grid_search(s, kCoherent, 8, 8, true);
    const double ftr = fidelity_tr(s, kCoherent).fidelity;
    EXPECT_NEAR(g.best_fidelity, ftr, 1e-15);
    for (const auto &p : g.surface) {
        EXPECT_NEAR(p.fidelity, ftr, 1e-15);
    }
}

TEST(GridSearch, SymmetricChannelPeaksAtUnitSqueezing) {
    const int n = 41;
    const GridResult g = grid_search(build_symmetric_channel(2.0), kCoherent, n, 16);
    const double step = std::exp((std::log(kGridXiMax) - std::log(kGridXiMin)) / (n - 1));
    ASSERT_TRUE(g.best_xi.is_finite());
    EXPECT_LE(std::abs(std::log(g.best_xi.value())), std::log(step) + 1e-12);
}

TEST(GridSearch, FirstExample) {
    const GridResult g = grid_search(build_example_channel(kExampleChannel1), kCoherent, 400, 400);
    EXPECT_NEAR(g.best_fidelity, 0.62, 0.005);
    // (xi, phi + pi/2) and (1/xi, phi) are the same projector; the grid holds both.
    ASSERT_TRUE(g.best_phi == 0.0 || std::abs(g.best_phi - kPi / 2) < 1e-15) << g.best_phi;
    const double xi = g.best_phi == 0.0 ? g.best_xi.value() : 1.0 / g.best_xi.value();
    const double step = std::exp((std::log(kGridXiMax) - std::log(kGridXiMin)) / 399);
    EXPECT_LE(std::abs(std::log(xi / 0.087)), std::log(step));
    EXPECT_LE(g.best_fidelity, optimize(build_example_channel(kExampleChannel1), kCoherent).fidelity + 1e-6);
}

TEST(GridSearch, RejectsCoarseGrids) {
    EXPECT_THROW(grid_search(build_symmetric_channel(1.0), kCoherent, 7, 8), DomainError);
}

TEST(GridSearch, SurfaceCsv) {
    const GridResult g = grid_search(build_example_channel(kExampleChannel2), kCoherent, 8, 9, true);
    std::ostringstream os;
    write_surface_csv(os, g);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "xi,phi,fidelity");
    int rows = 0;
    bool saw_inf = false;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2) << line;
        saw_inf = saw_inf || line.rfind("inf,", 0) == 0;
    }
    EXPECT_EQ(rows, 10 * 9);
    EXPECT_TRUE(saw_inf);
}

TEST(FormatNumber, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(0.1 + 0.2), "0.3");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(format_number(1e-20), "1e-20");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Quadrature, MatchesClosedFormOnRandomChannels) {
    Rng rng(109);
    for (int i = 0; i < 6; ++i) {
        const ThreeModeState s = random_genuine_channel(rng);
        const MeasurementSpec spec(rng.log_uniform(0.25, 4.0), rng.uniform(0, kPi));
        const QuadratureResult q = quadrature_conditional(s, spec);
        EXPECT_TRUE(MatricesNear(q.conditional.cm(), conditional_cm(s, spec).cm(), 1e-6));
        EXPECT_LT(q.error_estimate, 1e-8);
    }
}

TEST(Quadrature, UncorrelatedCharlieReturnsReducedState) {
    const ThreeModeState s = testing::with_uncorrelated_charlie(testing::two_mode_squeezed(0.3), Mat2::Identity());
    const QuadratureResult q = quadrature_conditional(s, MeasurementSpec(2.0, 0.5));
    EXPECT_TRUE(MatricesNear(q.conditional.cm(), s.cm().block<4, 4>(0, 0), 1e-9));
}

TEST(Quadrature, VacuumProjectorOnScalarCharlie) {
    // V0 = I/2 and C = c I give M = I / (c + 1/2).
    Rng rng(113);
    const ThreeModeState base = random_genuine_channel(rng);
    Mat6 v = base.cm();
    const double c = v(4, 4) + 0.3;
    v.block<2, 2>(4, 4) = c * Mat2::Identity();
    const ThreeModeState s(v);
    ASSERT_TRUE(is_genuine(s).holds);
    const Eigen::Matrix<double, 4, 2> x = v.block<4, 2>(0, 4);
    const Mat4 expected = v.block<4, 4>(0, 0) - x * x.transpose() / (c + 0.5);
    const QuadratureResult q = quadrature_conditional(s, MeasurementSpec(1.0, 0.0));
    EXPECT_TRUE(MatricesNear(q.conditional.cm(), expected, 1e-6));
}

TEST(Quadrature, ProbabilityAndMeansWithDisplacements) {
    Rng rng(127);
    for (int i = 0; i < 3; ++i) {
        ThreeModeState s = random_genuine_channel(rng);
        Vec6 d;
        for (int k = 0; k < 6; ++k) {
            d(k) = rng.uniform(-0.5, 0.5);
        }
        s = s.with_displacement(d);
        const MeasurementSpec spec(rng.log_uniform(0.5, 2.0), rng.uniform(0, kPi),
                                   {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
        const QuadratureResult q = quadrature_conditional(s, spec);
        EXPECT_NEAR(q.probability, outcome_probability(s, spec, spec.displacement()), 1e-8);
        EXPECT_TRUE(MatricesNear(q.conditional.displacement(), conditional_displacement(s, spec, spec.displacement()),
                                 1e-6));
    }
}

TEST(Quadrature, HomodyneIsRejected) {
    EXPECT_THROW(quadrature_conditional(build_symmetric_channel(1.0), MeasurementSpec(SqueezeFactor::zero(), 0.0)),
                 HomodyneLimitError);
}

TEST(Quadrature, ReportsNonConvergence) {
    // A strongly squeezed projector oscillates far too fast for a 12-point rule.
    try {
        quadrature_conditional(build_example_channel(kExampleChannel1), MeasurementSpec(1e-3, 0.2), 12);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError &e) {
        EXPECT_GT(e.error_estimate, 1e-8);
    }
}

TEST(AssistedBound, RandomSuite) {
    Rng rng(131);
    for (int i = 0; i < 1000; ++i) {
        const ThreeModeState s = random_genuine_channel(rng);
        EXPECT_TRUE(verify_assisted_bound(s, kCoherent, random_measurement(rng)));
    }
}

TEST(AssistedBound, EqualityWithoutCorrelations) {
    const ThreeModeState s = testing::with_uncorrelated_charlie(testing::two_mode_squeezed(0.6), Mat2::Identity());
    const MeasurementSpec spec(0.2, 1.0);
    EXPECT_TRUE(verify_assisted_bound(s, kCoherent, spec));
    EXPECT_DOUBLE_EQ(conditional_fidelity(s, kCoherent, spec).fidelity, fidelity_tr(s, kCoherent).fidelity);
}

TEST(AssistedBound, StrictForFirstExampleOptimum) {
    const ThreeModeState s = build_example_channel(kExampleChannel1);
    const OptimizationResult r = optimize(s, kCoherent);
    const MeasurementSpec spec(r.xi_bar, r.phi_bar);
    EXPECT_TRUE(verify_assisted_bound(s, kCoherent, spec));
    EXPECT_GT(conditional_fidelity(s, kCoherent, spec).fidelity, fidelity_tr(s, kCoherent).fidelity + 0.5);
}

TEST(ThermalDominance, ZeroOccupationIsEquality) {
    EXPECT_NEAR(thermal_dominance_min_eig(2.0 * Mat2::Identity(), 0.0), 0.0, 1e-15);
}

TEST(ThermalDominance, OneThermalPhotonOnScalarCharlie) {
    // M(0) = I/2.5, M(1) = 25.5/72.25 I.
    EXPECT_NEAR(thermal_dominance_min_eig(2.0 * Mat2::Identity(), 1.0), 0.4 - 25.5 / 72.25, 1e-14);
    EXPECT_TRUE(verify_thermal_dominance(2.0 * Mat2::Identity(), 1.0));
}

TEST(ThermalDominance, RandomSuite) {
    Rng rng(137);
    int near_zero = 0;
    for (int i = 0; i < 500; ++i) {
        const Mat2 c = random_single_mode_cm(rng);
        const double n = rng.uniform(0.0, 10.0);
        EXPECT_TRUE(verify_thermal_dominance(c, n));
        near_zero += std::abs(thermal_dominance_min_eig(c, n)) <= kDominanceTol ? 1 : 0;
    }
    RecordProperty("near_zero_eigenvalues", near_zero);
    EXPECT_THROW(thermal_dominance_min_eig(Mat2::Identity(), -1.0), DomainError);
}

}  // namespace
}  // namespace gto
