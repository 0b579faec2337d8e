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

// Locale-independent number formatting for CSV and text output.

#pragma once

#include <charconv>
#include <cmath>
#include <string>

#include "gto/gaussian_core.hpp"

namespace gto {

inline constexpr int kCsvDigits = 12;

/// Shortest general-format rendering with `digits` significant digits.
/// Always '.' as decimal separator; infinities print as "inf" / "-inf".
inline std::string format_number(double v, int digits = kCsvDigits) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
    std::string out(buf, res.ptr);
    // Trim trailing zeros of the fraction ("0.500000000000" -> "0.5").
    const auto exp_pos = out.find('e');
    std::string mantissa = out.substr(0, exp_pos);
    const std::string exponent = exp_pos == std::string::npos ? "" : out.substr(exp_pos);
    if (mantissa.find('.') != std::string::npos) {
        while (!mantissa.empty() && mantissa.back() == '0') {
            mantissa.pop_back();
        }
        if (!mantissa.empty() && mantissa.back() == '.') {
            mantissa.pop_back();
        }
    }
    return mantissa + exponent;
}

inline std::string format_number(SqueezeFactor xi, int digits = kCsvDigits) {
    return format_number(xi.value(), digits);
}

}  // namespace gto
