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
#include <ostream>
#include <string>
#include <vector>

#include "gto/format.hpp"
#include "json.hpp"

namespace gto {

/// How a measured value is judged against its target.
enum class Comparison {
    within,    // |measured - expected| <= tolerance
    at_most,   // measured <= expected + tolerance
    at_least,  // measured >= expected - tolerance
};

inline const char *to_string(Comparison c) {
    switch (c) {
        case Comparison::within:
            return "within";
        case Comparison::at_most:
            return "at-most";
        case Comparison::at_least:
            return "at-least";
    }
    return "?";
}

struct TargetVerdict {
    int criterion;
    std::string name;
    double measured;
    double expected;
    double tolerance;
    Comparison comparison;
    bool pass;
};

inline TargetVerdict make_verdict(int criterion, std::string name, double measured, double expected, double tolerance,
                                  Comparison comparison = Comparison::within) {
    bool pass = false;
    switch (comparison) {
        case Comparison::within:
            pass = std::abs(measured - expected) <= tolerance;
            break;
        case Comparison::at_most:
            pass = measured <= expected + tolerance;
            break;
        case Comparison::at_least:
            pass = measured >= expected - tolerance;
            break;
    }
    return {criterion, std::move(name), measured, expected, tolerance, comparison, pass};
}

/// JSON has no infinity; extended reals go out as the string "inf".
inline nlohmann::json json_number(double v) {
    if (std::isfinite(v)) {
        return v;
    }
    return format_number(v);
}

struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json outputs = nlohmann::json::object();
    std::vector<TargetVerdict> verdicts;
    /// Printed in the summary only, never serialized.
    double wall_seconds = 0.0;

    bool all_pass() const {
        for (const auto &v : verdicts) {
            if (!v.pass) {
                return false;
            }
        }
        return true;
    }

    /// nlohmann::json objects are std::map backed, so keys come out sorted.
    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        nlohmann::json vs = nlohmann::json::array();
        for (const auto &v : verdicts) {
            vs.push_back({{"criterion", v.criterion},
                          {"name", v.name},
                          {"measured", json_number(v.measured)},
                          {"expected", json_number(v.expected)},
                          {"tolerance", json_number(v.tolerance)},
                          {"comparison", to_string(v.comparison)},
                          {"pass", v.pass}});
        }
        j["verdicts"] = vs;
        j["pass"] = all_pass();
        return j;
    }

    std::string dump() const {
        return to_json().dump(2) + "\n";
    }
};

inline void print_verdicts(std::ostream &os, const std::vector<TargetVerdict> &verdicts) {
    for (const auto &v : verdicts) {
        os << (v.pass ? "PASS" : "FAIL") << "  [" << v.criterion << "] " << v.name
           << "  measured=" << format_number(v.measured, 8) << "  " << to_string(v.comparison) << ' '
           << format_number(v.expected, 8) << " tol=" << format_number(v.tolerance, 3) << '\n';
    }
}

}  // namespace gto
