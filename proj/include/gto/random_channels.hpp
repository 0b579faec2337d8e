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

// Seeded generators for the randomized verification suites. Doubles are built
// directly from mt19937_64 output so every suite is bit-reproducible across
// standard library implementations.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "gto/gaussian_core.hpp"

namespace gto {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Seed from GTO_SEED (decimal or 0x-prefixed hex), else kDefaultSeed.
inline std::uint64_t seed_from_environment() {
    const char *env = std::getenv("GTO_SEED");
    if (env == nullptr || *env == '\0') {
        return kDefaultSeed;
    }
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 0);
    if (end == env || *end != '\0') {
        throw DomainError(std::string("GTO_SEED is not an integer: ") + env);
    }
    return static_cast<std::uint64_t>(v);
}

class Rng {
   public:
    explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }
    /// Log-uniform on [lo, hi].
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

   private:
    std::mt19937_64 engine_;
};

struct RandomChannelOptions {
    /// Raw entries are drawn from [-entry_range, entry_range].
    double entry_range = 1.0;
    /// Distance lambda above the genuineness boundary, drawn from [min, max].
    double margin_min = 1e-3;
    double margin_max = 0.5;
};

/// Random genuine three-mode CM: symmetrize uniform entries, then shift by
/// lambda I with lambda just above the smallest shift that makes V - (i/2)J
/// positive semidefinite.
inline ThreeModeState random_genuine_channel(Rng &rng, const RandomChannelOptions &opts = {}) {
    Mat6 x;
    for (int r = 0; r < 6; ++r) {
        for (int c = 0; c < 6; ++c) {
            x(r, c) = rng.uniform(-opts.entry_range, opts.entry_range);
        }
    }
    Mat6 v = (x + x.transpose()) / 2.0;
    const double boundary = -is_genuine(v, 0.0).min_eig;
    const double lambda = boundary + rng.uniform(opts.margin_min, opts.margin_max);
    return ThreeModeState(v + lambda * Mat6::Identity());
}

/// Random pure measurement with log-uniform xi in [xi_min, xi_max].
inline MeasurementSpec random_measurement(Rng &rng, double xi_min = 1e-3, double xi_max = 1e3) {
    double xi = rng.log_uniform(xi_min, xi_max);
    double phi = rng.uniform(0.0, kPi);
    return MeasurementSpec(xi, phi);
}

/// Random physical single-mode CM (C - (i/2)Omega >= 0).
inline Mat2 random_single_mode_cm(Rng &rng, double entry_range = 2.0) {
    Mat2 x;
    x << rng.uniform(-entry_range, entry_range), rng.uniform(-entry_range, entry_range),
        rng.uniform(-entry_range, entry_range), rng.uniform(-entry_range, entry_range);
    Mat2 c = (x + x.transpose()) / 2.0;
    const double boundary = -min_eigenvalue_hermitian(c, -0.5 * omega());
    return c + (boundary + rng.uniform(1e-3, 1.0)) * Mat2::Identity();
}

}  // namespace gto
