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

#include <stdexcept>
#include <string>

namespace gto {

/// Base of every exception thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of a formula (e.g. q < 1/2).
struct DomainError : Error {
    using Error::Error;
};

/// Malformed matrix data: wrong shape, non-symmetric where symmetry is required.
struct StructuralError : Error {
    using Error::Error;
};

/// An operation was called on a state that does not satisfy its precondition.
struct PreconditionError : Error {
    using Error::Error;
};

/// A derived quantity came out unphysical (Gamma not positive, g <= 0, ...).
struct NonPhysicalError : Error {
    using Error::Error;
};

/// Raised where a finite squeezing factor is required but xi is 0 or +inf.
struct HomodyneLimitError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    ConvergenceError(const std::string &what, double estimate) : Error(what), error_estimate(estimate) {
    }
    double error_estimate;
};

}  // namespace gto
