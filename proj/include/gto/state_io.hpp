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

// JSON state files.
//
//   {
//     "blocks": {"A": [[..,..],[..,..]], "B": .., "C": .., "D": .., "E": .., "F": ..},
//     "displacement": [d1, .., d6]          // optional, zeros by default
//   }
//
// 2x2 arrays are row-major. Input-state files use {"V_in": [[..],[..]],
// "amplitude": [re, im]} with "amplitude" optional.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "gto/gaussian_core.hpp"
#include "json.hpp"

namespace gto {

/// Schema violation in an otherwise well-formed JSON document.
struct SchemaError : Error {
    using Error::Error;
};

/// Syntax error; the message carries line and column.
struct ParseError : Error {
    using Error::Error;
};

namespace detail {

inline Mat2 mat2_from_json(const nlohmann::json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2) {
        throw SchemaError(where + ": expected a 2x2 array");
    }
    Mat2 m;
    for (int r = 0; r < 2; ++r) {
        const auto &row = j[r];
        if (!row.is_array() || row.size() != 2) {
            throw SchemaError(where + ": expected a 2x2 array");
        }
        for (int c = 0; c < 2; ++c) {
            if (!row[c].is_number()) {
                throw SchemaError(where + ": entry [" + std::to_string(r) + "][" + std::to_string(c) +
                                  "] is not a number");
            }
            m(r, c) = row[c].get<double>();
        }
    }
    return m;
}

inline nlohmann::json mat2_to_json(const Mat2 &m) {
    return nlohmann::json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}});
}

inline nlohmann::json parse_json_text(const std::string &text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(e.what());
    }
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SchemaError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

inline ThreeModeState state_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_object()) {
        throw SchemaError("state: missing object \"blocks\"");
    }
    const auto &blocks = j["blocks"];
    auto block = [&](const char *name) {
        if (!blocks.contains(name)) {
            throw SchemaError(std::string("state: missing block \"") + name + "\"");
        }
        return detail::mat2_from_json(blocks[name], std::string("blocks.") + name);
    };
    Mat2 a = block("A"), b = block("B"), c = block("C"), d = block("D"), e = block("E"), f = block("F");
    Vec6 disp = Vec6::Zero();
    if (j.contains("displacement")) {
        const auto &dj = j["displacement"];
        if (!dj.is_array() || dj.size() != 6) {
            throw SchemaError("displacement: expected 6 numbers");
        }
        for (int i = 0; i < 6; ++i) {
            if (!dj[i].is_number()) {
                throw SchemaError("displacement: entry " + std::to_string(i) + " is not a number");
            }
            disp(i) = dj[i].get<double>();
        }
    }
    try {
        return ThreeModeState::from_blocks(a, b, c, d, e, f, disp);
    } catch (const StructuralError &err) {
        throw SchemaError(std::string("state: ") + err.what());
    }
}

inline nlohmann::json state_to_json(const ThreeModeState &s) {
    nlohmann::json blocks = {
        {"A", detail::mat2_to_json(s.alice())},         {"B", detail::mat2_to_json(s.bob())},
        {"C", detail::mat2_to_json(s.charlie())},       {"D", detail::mat2_to_json(s.bob_charlie())},
        {"E", detail::mat2_to_json(s.alice_charlie())}, {"F", detail::mat2_to_json(s.alice_bob())},
    };
    nlohmann::json disp = nlohmann::json::array();
    for (int i = 0; i < 6; ++i) {
        disp.push_back(s.displacement()(i));
    }
    return {{"blocks", blocks}, {"displacement", disp}};
}

inline ThreeModeState parse_state(const std::string &text) {
    return state_from_json(detail::parse_json_text(text));
}

inline ThreeModeState load_state(const std::string &path) {
    return parse_state(detail::read_file(path));
}

inline InputState input_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("V_in")) {
        throw SchemaError("input: missing \"V_in\"");
    }
    Mat2 v = detail::mat2_from_json(j["V_in"], "V_in");
    std::complex<double> amp{};
    if (j.contains("amplitude")) {
        const auto &a = j["amplitude"];
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw SchemaError("amplitude: expected [re, im]");
        }
        amp = {a[0].get<double>(), a[1].get<double>()};
    }
    try {
        return InputState(v, amp);
    } catch (const Error &err) {
        throw SchemaError(std::string("input: ") + err.what());
    }
}

inline InputState load_input(const std::string &path) {
    return input_from_json(detail::parse_json_text(detail::read_file(path)));
}

}  // namespace gto
