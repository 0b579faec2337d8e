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

#include "gto/gaussian_core.hpp"

#include <gtest/gtest.h>

#include "gto/random_channels.hpp"
#include "test_util.hpp"

namespace gto {
namespace {

using testing::MatricesNear;

/// Smallest symplectic eigenvalue of a two-mode CM, optionally after
/// transposing Bob (which flips the sign of det F in the invariant).
double min_symplectic_eigenvalue(const TwoModeState &s, bool transpose_bob) {
    const double sign = transpose_bob ? -1.0 : 1.0;
    const double delta = s.alice().determinant() + s.bob().determinant() + sign * 2.0 * s.cross().determinant();
    const double det = s.cm().determinant();
    return std::sqrt((delta - std::sqrt(delta * delta - 4.0 * det)) / 2.0);
}

TEST(SqueezeFactor, RejectsNegativeAndNan) {
    EXPECT_THROW(SqueezeFactor(-1e-9), DomainError);
    EXPECT_THROW(SqueezeFactor(std::nan("")), DomainError);
    EXPECT_NO_THROW(SqueezeFactor(0.0));
}

TEST(SqueezeFactor, EndpointsAreExact) {
    EXPECT_TRUE(SqueezeFactor::zero().is_zero());
    EXPECT_TRUE(SqueezeFactor::infinity().is_infinite());
    EXPECT_TRUE(SqueezeFactor::zero().inverse().is_infinite());
    EXPECT_TRUE(SqueezeFactor::infinity().inverse().is_zero());
    EXPECT_DOUBLE_EQ(SqueezeFactor(4.0).inverse().value(), 0.25);
    EXPECT_TRUE(SqueezeFactor(3.0).is_finite());
}

TEST(CanonicalPhase, WrapsIntoHalfOpenInterval) {
    EXPECT_DOUBLE_EQ(canonical_phase(0.0), 0.0);
    EXPECT_NEAR(canonical_phase(kPi + 0.25), 0.25, 1e-15);
    EXPECT_NEAR(canonical_phase(-0.25), kPi - 0.25, 1e-15);
    EXPECT_LT(canonical_phase(kPi), kPi);
    EXPECT_THROW(canonical_phase(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(MeasurementSpec, DisplacementIsQuadratureMean) {
    MeasurementSpec spec(1.0, 0.0, {1.0, -2.0});
    EXPECT_TRUE(MatricesNear(spec.displacement(), Vec2(std::sqrt(2.0), -2.0 * std::sqrt(2.0)), 1e-15));
}

TEST(SqueezedCm, MatchesOuterProductConstruction) {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double xi = rng.log_uniform(1e-3, 1e3);
        const double phi = rng.uniform(0.0, kPi);
        const Mat2 v = squeezed_cm(SqueezeFactor(xi), phi);
        EXPECT_TRUE(MatricesNear(v, testing::squeezed_cm_from_outer_products(xi, phi), 1e-12 * std::max(xi, 1 / xi)));
        EXPECT_NEAR(v.determinant(), 0.25, 1e-9 * std::max(xi, 1 / xi));
    }
}

TEST(SqueezedCm, UnitSqueezingIsVacuum) {
    EXPECT_TRUE(MatricesNear(squeezed_cm(SqueezeFactor(1.0), 0.7), Mat2::Identity() / 2.0, 1e-15));
}

TEST(SqueezedCm, PhaseZeroIsDiagonal) {
    const Mat2 v = squeezed_cm(SqueezeFactor(4.0), 0.0);
    EXPECT_TRUE(MatricesNear(v, Vec2(0.125, 2.0).asDiagonal().toDenseMatrix(), 1e-15));
}

TEST(SqueezedCm, HomodyneLimitsAreRejected) {
    EXPECT_THROW(squeezed_cm(SqueezeFactor::zero(), 0.0), HomodyneLimitError);
    EXPECT_THROW(squeezed_cm(SqueezeFactor::infinity(), 0.0), HomodyneLimitError);
}

TEST(InputState, RequiresPureState) {
    EXPECT_NO_THROW(InputState::coherent());
    EXPECT_NO_THROW(squeezed_input(3.0, 0.4));
    EXPECT_THROW(InputState(Mat2::Identity()), DomainError);
    Mat2 asym;
    asym << 0.5, 0.1, 0.0, 0.5;
    EXPECT_THROW(InputState{asym}, StructuralError);
}

TEST(ThreeModeState, BlockAccessorsRoundTrip) {
    Mat2 a, b, c, d, e, f;
    a << 3, 0.1, 0.1, 2;
    b << 4, 0.2, 0.2, 5;
    c << 6, 0.3, 0.3, 7;
    d << 0.4, 0.5, 0.6, 0.7;
    e << 0.8, 0.9, 1.0, 1.1;
    f << 1.2, 1.3, 1.4, 1.5;
    const ThreeModeState s = ThreeModeState::from_blocks(a, b, c, d, e, f);
    EXPECT_EQ(s.alice(), a);
    EXPECT_EQ(s.bob(), b);
    EXPECT_EQ(s.charlie(), c);
    EXPECT_EQ(s.bob_charlie(), d);
    EXPECT_EQ(s.alice_charlie(), e);
    EXPECT_EQ(s.alice_bob(), f);
    EXPECT_EQ((s.cm().block<2, 2>(4, 2)), d.transpose());
}

TEST(ThreeModeState, RejectsAsymmetricBlocks) {
    Mat2 bad;
    bad << 1, 0.5, 0, 1;
    const Mat2 id = Mat2::Identity();
    EXPECT_THROW(ThreeModeState::from_blocks(bad, id, id, id * 0, id * 0, id * 0), StructuralError);
    Mat6 m = Mat6::Identity();
    m(0, 5) = 0.3;
    EXPECT_THROW(ThreeModeState{m}, StructuralError);
    EXPECT_THROW(is_genuine(m), StructuralError);
}

TEST(Genuineness, VacuumIsOnTheBoundary) {
    const Verdict v = is_genuine(Mat6(Mat6::Identity() / 2.0));
    EXPECT_TRUE(v.holds);
    EXPECT_NEAR(v.min_eig, 0.0, 1e-14);
    EXPECT_FALSE(is_genuine(Mat6(0.49 * Mat6::Identity())).holds);
}

TEST(Genuineness, BuiltinChannels) {
    EXPECT_TRUE(is_genuine(build_example_channel(kExampleChannel1)).holds);
    EXPECT_TRUE(is_genuine(build_example_channel(kExampleChannel2)).holds);
    for (double q : {0.5, 0.618, 1.0, 2.0, 10.0, 50.0}) {
        EXPECT_TRUE(is_genuine(build_symmetric_channel(q)).holds) << "q = " << q;
    }
}

TEST(Genuineness, CorruptedEntryIsDetected) {
    ExampleChannelParams p = kExampleChannel1;
    p.c = 12.0;
    EXPECT_FALSE(is_genuine(build_example_channel(p)).holds);
}

TEST(Genuineness, RandomChannelsSitJustInsideTheBoundary) {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const Verdict v = is_genuine(random_genuine_channel(rng));
        EXPECT_TRUE(v.holds);
        EXPECT_GE(v.min_eig, 1e-3 - 1e-9);
        EXPECT_LE(v.min_eig, 0.5 + 1e-9);
    }
}

TEST(Separability, TwoModeSqueezedVacuumIsEntangled) {
    const TwoModeState tmsv(testing::two_mode_squeezed(0.5));
    EXPECT_TRUE(is_physical(tmsv).holds);
    EXPECT_FALSE(is_separable_two_mode(tmsv).holds);
    EXPECT_TRUE(is_separable_two_mode(TwoModeState(Mat4::Identity() / 2.0)).holds);
}

TEST(Separability, UnphysicalStateIsAPreconditionError) {
    EXPECT_THROW(is_separable_two_mode(TwoModeState(0.3 * Mat4::Identity())), PreconditionError);
}

TEST(Separability, AgreesWithSymplecticEigenvalueCriterion) {
    Rng rng(17);
    int entangled = 0;
    for (int i = 0; i < 500; ++i) {
        const TwoModeState s = partial_trace_third(random_genuine_channel(rng));
        EXPECT_GE(min_symplectic_eigenvalue(s, false), 0.5 - 1e-9);
        const double nu = min_symplectic_eigenvalue(s, true);
        if (std::abs(nu - 0.5) < 1e-7) {
            continue;
        }
        const bool separable = nu > 0.5;
        entangled += separable ? 0 : 1;
        EXPECT_EQ(is_separable_two_mode(s).holds, separable) << "nu = " << nu;
    }
    // Noisy two-mode squeezed states under random local symplectics straddle the boundary.
    for (int i = 0; i < 500; ++i) {
        Mat4 local = Mat4::Zero();
        for (int k = 0; k < 2; ++k) {
            const double theta = rng.uniform(0, kPi);
            const Mat2 rot = (Mat2() << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)).finished();
            const double z = std::exp(rng.uniform(-0.5, 0.5));
            local.block<2, 2>(2 * k, 2 * k) = rot * Vec2(z, 1.0 / z).asDiagonal();
        }
        const Mat4 v = local * testing::two_mode_squeezed(rng.uniform(0.0, 1.0)) * local.transpose() +
                       rng.uniform(0.0, 0.5) * Mat4::Identity();
        const TwoModeState s(v);
        const double nu = min_symplectic_eigenvalue(s, true);
        if (std::abs(nu - 0.5) < 1e-7) {
            continue;
        }
        const bool separable = nu > 0.5;
        entangled += separable ? 0 : 1;
        EXPECT_EQ(is_separable_two_mode(s).holds, separable) << "nu = " << nu;
    }
    EXPECT_GT(entangled, 50);
    EXPECT_LT(entangled, 450);
}

TEST(Separability, ExampleChannelsHaveSeparableReductions) {
    EXPECT_TRUE(is_separable_two_mode(partial_trace_third(build_example_channel(kExampleChannel1))).holds);
    EXPECT_TRUE(is_separable_two_mode(partial_trace_third(build_example_channel(kExampleChannel2))).holds);
}

TEST(SwapAliceBob, IsAnInvolutionPreservingGenuineness) {
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
        ThreeModeState s = random_genuine_channel(rng);
        Vec6 d;
        for (int k = 0; k < 6; ++k) {
            d(k) = rng.uniform(-1, 1);
        }
        s = s.with_displacement(d);
        const ThreeModeState t = swap_alice_bob(s);
        EXPECT_TRUE(MatricesNear(t.alice(), s.bob(), 0.0));
        EXPECT_TRUE(MatricesNear(t.alice_charlie(), s.bob_charlie(), 0.0));
        EXPECT_NEAR(is_genuine(t).min_eig, is_genuine(s).min_eig, 1e-12);
        const ThreeModeState back = swap_alice_bob(t);
        EXPECT_TRUE(MatricesNear(back.cm(), s.cm(), 0.0));
        EXPECT_TRUE(MatricesNear(back.displacement(), s.displacement(), 0.0));
    }
}

TEST(SymmetricChannel, Coefficients) {
    EXPECT_THROW(symmetric_channel_coefficients(0.49), DomainError);
    const auto k = symmetric_channel_coefficients(0.5);
    EXPECT_DOUBLE_EQ(k.s, 0.75);
    EXPECT_DOUBLE_EQ(k.t, 0.25);
    EXPECT_DOUBLE_EQ(k.w, 0.0);
    const auto k2 = symmetric_channel_coefficients(2.0);
    EXPECT_NEAR(k2.w, std::sqrt(9.0) / 2.0, 1e-15);
}

TEST(SymmetricChannel, BlockLayout) {
    const double q = 3.0;
    const auto k = symmetric_channel_coefficients(q);
    const ThreeModeState s = build_symmetric_channel(q);
    EXPECT_TRUE(MatricesNear(s.alice(), q * Mat2::Identity(), 0.0));
    EXPECT_TRUE(MatricesNear(s.alice_bob(), k.w * reflection(), 0.0));
    EXPECT_TRUE(MatricesNear(s.alice_charlie(), k.w * reflection(), 0.0));
    EXPECT_TRUE(MatricesNear(s.bob_charlie(), k.t * Mat2::Identity(), 0.0));
    EXPECT_TRUE(MatricesNear(s.charlie(), k.s * Mat2::Identity(), 0.0));
}

TEST(SymplecticForm, Shape) {
    const Eigen::MatrixXd j = symplectic_form(3);
    EXPECT_EQ(j.rows(), 6);
    EXPECT_TRUE(MatricesNear(Eigen::MatrixXd(j * j), Eigen::MatrixXd(-Eigen::MatrixXd::Identity(6, 6)), 0.0));
    EXPECT_THROW(symplectic_form(4), DomainError);
}

}  // namespace
}  // namespace gto
