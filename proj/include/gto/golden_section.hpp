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

#include <cmath>
#include <concepts>
#include <utility>

namespace gto {

template <typename T>
struct Extremum {
    T x;
    T value;
};

/// Golden-section search for a maximum of a unimodal `f` on [a, b].
template <std::floating_point T, std::invocable<T> F>
Extremum<T> golden_section_maximize(F &&f, T a, T b, T tol) {
    const T inv_phi = (std::sqrt(T(5)) - T(1)) / T(2);
    T x1 = b - inv_phi * (b - a);
    T x2 = a + inv_phi * (b - a);
    T f1 = f(x1);
    T f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    T x = (a + b) / T(2);
    T fx = f(x);
    if (f1 > fx) {
        return {x1, f1};
    }
    if (f2 > fx) {
        return {x2, f2};
    }
    return {x, fx};
}

/// Bisection for a sign change of `f` on [a, b]. Returns the final bracket;
/// `first` keeps the sign of f(a).
template <std::floating_point T, std::invocable<T> F>
std::pair<T, T> bisect_sign_change(F &&f, T a, T b, T tol) {
    const bool left_positive = f(a) > T(0);
    while (b - a > tol) {
        T mid = (a + b) / T(2);
        if ((f(mid) > T(0)) == left_positive) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return {a, b};
}

}  // namespace gto
