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
#include <cmath>
#include <vector>

#include "gto/errors.hpp"

namespace gto {

/// n-point Gauss-Hermite rule for int f(x) exp(-x^2) dx over the real line.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Golub-Welsch on the Jacobi matrix, then a Newton polish of each node on
/// the orthonormal recurrence so the weights keep full relative accuracy.
inline GaussHermiteRule gauss_hermite_rule(int n) {
    if (n < 1 || n > 200) {
        throw DomainError("Gauss-Hermite order must be in [1, 200]");
    }
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);

    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi_quarter = std::pow(3.14159265358979323846, -0.25);
    for (int i = 0; i < n; ++i) {
        double x = solver.eigenvalues()(i);
        for (int iter = 0; iter < 4; ++iter) {
            // Orthonormal Hermite polynomials: p_n' = sqrt(2n) p_{n-1}.
            double pm1 = 0.0, p1 = pi_quarter;
            for (int k = 1; k <= n; ++k) {
                double next = x * std::sqrt(2.0 / k) * p1 - std::sqrt((k - 1.0) / k) * pm1;
                pm1 = p1;
                p1 = next;
            }
            double dx = p1 / (std::sqrt(2.0 * n) * pm1);
            x -= dx;
            if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) {
                break;
            }
        }
        // Recompute p_{n-1} at the polished node for the weight.
        double pm1 = 0.0, p1 = pi_quarter;
        for (int k = 1; k < n; ++k) {
            double next = x * std::sqrt(2.0 / k) * p1 - std::sqrt((k - 1.0) / k) * pm1;
            pm1 = p1;
            p1 = next;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 1.0 / (n * p1 * p1);
    }
    return rule;
}

}  // namespace gto
