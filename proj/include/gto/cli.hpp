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

// Command-line front end. Exit codes: 0 success, 1 failed check or
// reproduction target (or a non-physical channel), 2 usage or input-format error.

#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gto/measurement_optimizer.hpp"
#include "gto/oracle.hpp"
#include "gto/report.hpp"
#include "gto/reproduce.hpp"
#include "gto/state_io.hpp"

namespace gto::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : Error {
    using Error::Error;
};

/// Whole-string decimal parse, independent of the C locale.
inline double parse_real(const std::string &text, const std::string &what) {
    double v = 0.0;
    const char *first = text.data();
    const char *last = first + text.size();
    auto res = std::from_chars(first, last, v);
    if (text.empty() || res.ec != std::errc() || res.ptr != last) {
        throw UsageError(what + ": expected a number, got \"" + text + "\"");
    }
    return v;
}

/// Radians only. Anything carrying a unit is refused instead of converted.
inline double parse_angle(const std::string &text) {
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower.find("deg") != std::string::npos || lower.find("\xC2\xB0") != std::string::npos) {
        throw UsageError("--phi: angles are given in radians; degrees are not accepted");
    }
    const double v = parse_real(text, "--phi");
    if (!std::isfinite(v)) {
        throw UsageError("--phi must be finite");
    }
    return v;
}

/// Non-negative real or "inf".
inline SqueezeFactor parse_xi(const std::string &text) {
    if (text == "inf" || text == "+inf" || text == "infinity") {
        return SqueezeFactor::infinity();
    }
    const double v = parse_real(text, "--xi");
    if (!(v >= 0.0)) {
        throw UsageError("--xi must be >= 0 or inf");
    }
    return SqueezeFactor(v);
}

/// `symmetric:q=<v>`, `example1`, `example2` or a JSON file.
inline ThreeModeState resolve_state(const std::string &spec) {
    if (spec == "example1") {
        return build_example_channel(kExampleChannel1);
    }
    if (spec == "example2") {
        return build_example_channel(kExampleChannel2);
    }
    const std::string prefix = "symmetric:q=";
    if (spec.rfind(prefix, 0) == 0) {
        const double q = parse_real(spec.substr(prefix.size()), "symmetric q");
        if (!(q >= 0.5)) {
            throw UsageError("symmetric channel needs q >= 0.5");
        }
        return build_symmetric_channel(q);
    }
    if (spec.rfind("symmetric", 0) == 0) {
        throw UsageError("expected symmetric:q=<value>, got \"" + spec + "\"");
    }
    return load_state(spec);
}

/// `coherent`, `squeezed:<xi>,<phi>` or a JSON file.
inline InputState resolve_input(const std::string &spec) {
    if (spec == "coherent") {
        return InputState::coherent();
    }
    const std::string prefix = "squeezed:";
    if (spec.rfind(prefix, 0) == 0) {
        const std::string rest = spec.substr(prefix.size());
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            throw UsageError("expected squeezed:<xi>,<phi>");
        }
        const double xi = parse_real(rest.substr(0, comma), "input xi");
        const double phi = parse_angle(rest.substr(comma + 1));
        if (!(xi > 0.0) || !std::isfinite(xi)) {
            throw UsageError("input squeezing must be finite and > 0");
        }
        return squeezed_input(xi, phi);
    }
    return load_input(spec);
}

inline void require_genuine(const ThreeModeState &state) {
    const Verdict v = is_genuine(state);
    if (!v.holds) {
        throw NonPhysicalError("state is not a genuine CM (min eigenvalue " + format_number(v.min_eig, 6) + ")");
    }
}

class Output {
   public:
    Output(const std::string &path, std::ostream &fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw UsageError("cannot open " + path + " for writing");
            }
            out_ = &file_;
        }
    }
    std::ostream &stream() {
        return *out_;
    }

   private:
    std::ofstream file_;
    std::ostream *out_;
};

inline void write_report(const RunReport &rep, const std::string &path) {
    if (path.empty()) {
        return;
    }
    Output o(path, std::cout);
    o.stream() << rep.dump();
}

struct Options {
    std::string state;
    std::string input = "coherent";
    std::string xi;
    std::string phi;
    int grid = 0;
    std::string out;
    std::string csv;
    double q_min = 0.5;
    double q_max = 50.0;
    int n = 0;
};

inline int cmd_check(const Options &o, std::ostream &out) {
    const ThreeModeState state = resolve_state(o.state);
    RunReport rep;
    rep.command = "check";
    rep.inputs = {{"state", o.state}};
    const Verdict genuine = is_genuine(state);
    rep.outputs["genuine"] = genuine.holds;
    rep.outputs["genuine_min_eig"] = genuine.min_eig;
    out << "genuine: " << (genuine.holds ? "true" : "false");
    if (genuine.holds) {
        const Verdict sep = is_separable_two_mode(partial_trace_third(state));
        rep.outputs["reduced_separable"] = sep.holds;
        rep.outputs["reduced_separable_min_eig"] = sep.min_eig;
        out << ", reduced separable: " << (sep.holds ? "true" : "false");
    }
    out << '\n';
    write_report(rep, o.out);
    return genuine.holds ? kExitOk : kExitFailure;
}

inline int cmd_fidelity(const Options &o, std::ostream &out) {
    const ThreeModeState state = resolve_state(o.state);
    require_genuine(state);
    const InputState input = resolve_input(o.input);
    const MeasurementSpec spec(parse_xi(o.xi), parse_angle(o.phi));
    const double ftr = fidelity_tr(state, input).fidelity;
    const double f = conditional_fidelity(state, input, spec).fidelity;
    out << "F_tr: " << format_number(ftr) << '\n';
    out << "F: " << format_number(f) << "  (xi=" << format_number(spec.xi()) << ", phi=" << format_number(spec.phi())
        << ")\n";
    RunReport rep;
    rep.command = "fidelity";
    rep.inputs = {{"state", o.state}, {"input", o.input}, {"xi", json_number(spec.xi().value())}, {"phi", spec.phi()}};
    rep.outputs = {{"fidelity_tr", ftr}, {"fidelity", f}};
    write_report(rep, o.out);
    return kExitOk;
}

inline int cmd_optimize(const Options &o, std::ostream &out) {
    const ThreeModeState state = resolve_state(o.state);
    require_genuine(state);
    const InputState input = resolve_input(o.input);
    const int grid = o.grid > 0 ? o.grid : kDefaultPhaseGrid;
    const OptimizationResult res = optimize(state, input, grid);
    out << "xi_bar: " << format_number(res.xi_bar) << '\n';
    out << "phi_bar: " << format_number(res.phi_bar) << '\n';
    out << "fidelity: " << format_number(res.fidelity) << '\n';
    out << "fidelity_tr: " << format_number(res.fidelity_tr) << '\n';
    out << "measurement: " << to_string(res.classification) << '\n';
    RunReport rep;
    rep.command = "optimize";
    rep.inputs = {{"state", o.state}, {"input", o.input}, {"phase_grid", grid}};
    rep.outputs = {{"xi_bar", json_number(res.xi_bar.value())},
                   {"phi_bar", res.phi_bar},
                   {"fidelity", res.fidelity},
                   {"fidelity_tr", res.fidelity_tr},
                   {"classification", to_string(res.classification)},
                   {"case", to_string(res.profile.active_case)},
                   {"border_points", res.border_points}};
    write_report(rep, o.out);
    return kExitOk;
}

inline int cmd_sweep_q(const Options &o, std::ostream &out) {
    const int n = o.n > 0 ? o.n : 100;
    if (!(o.q_min >= 0.5)) {
        throw UsageError("--q-min must be >= 0.5");
    }
    if (!(o.q_max > o.q_min)) {
        throw UsageError("--q-max must exceed --q-min");
    }
    if (n < 2) {
        throw UsageError("--n must be >= 2");
    }
    Output csv(o.csv, out);
    std::ostream &os = csv.stream();
    os << "q,gamma,F_tr,F_assisted\n";
    const InputState coherent = InputState::coherent();
    for (int i = 0; i < n; ++i) {
        const double q = o.q_min * std::pow(o.q_max / o.q_min, static_cast<double>(i) / (n - 1));
        const ThreeModeState ch = build_symmetric_channel(q);
        const OptimizationResult res = optimize(ch, coherent);
        os << format_number(q) << ',' << format_number(symmetric_channel_gamma(q)) << ','
           << format_number(res.fidelity_tr) << ',' << format_number(res.fidelity) << '\n';
    }
    return kExitOk;
}

inline int cmd_sweep_phi(const Options &o, std::ostream &out) {
    const ThreeModeState state = resolve_state(o.state);
    require_genuine(state);
    const InputState input = resolve_input(o.input);
    const int n = o.n > 0 ? o.n : 360;
    const OptimizerContext ctx = build_context(state, input);
    Output csv(o.csv, out);
    std::ostream &os = csv.stream();
    os << "phi,gamma,gamma_shift,p,xi_bar,F_tilde,F_zero,F_bar\n";
    for (int j = 0; j < n; ++j) {
        const double phi = kPi * j / n;
        const PhaseProfile prof = phase_profile(ctx, phi);
        os << format_number(phi) << ',' << format_number(prof.gamma) << ',' << format_number(prof.gamma_shift) << ','
           << (prof.p ? 1 : 0) << ',' << format_number(prof.xi_bar) << ',' << format_number(prof.fidelity_tilde)
           << ',' << format_number(prof.fidelity_zero) << ',' << format_number(prof.fidelity_bar) << '\n';
    }
    return kExitOk;
}

inline int cmd_grid(const Options &o, std::ostream &out) {
    const ThreeModeState state = resolve_state(o.state);
    require_genuine(state);
    const InputState input = resolve_input(o.input);
    const int n = o.grid > 0 ? o.grid : 400;
    const GridResult grid = grid_search(state, input, n, n, !o.csv.empty());
    out << "best xi: " << format_number(grid.best_xi) << '\n';
    out << "best phi: " << format_number(grid.best_phi) << '\n';
    out << "best fidelity: " << format_number(grid.best_fidelity) << '\n';
    if (!o.csv.empty()) {
        Output csv(o.csv, out);
        write_surface_csv(csv.stream(), grid);
    }
    RunReport rep;
    rep.command = "grid";
    rep.inputs = {{"state", o.state}, {"input", o.input}, {"grid", n}};
    rep.outputs = {{"best_xi", json_number(grid.best_xi.value())},
                   {"best_phi", grid.best_phi},
                   {"best_fidelity", grid.best_fidelity}};
    write_report(rep, o.out);
    return kExitOk;
}

inline int cmd_reproduce(const Options &o, std::ostream &out) {
    ReproduceOptions opt;
    opt.seed = seed_from_environment();
    if (o.grid > 0) {
        opt.oracle_grid = o.grid;
    }
    const RunReport rep = reproduce(opt);
    print_verdicts(out, rep.verdicts);
    int failed = 0;
    for (const auto &v : rep.verdicts) {
        failed += v.pass ? 0 : 1;
    }
    out << (failed == 0 ? "all " + std::to_string(rep.verdicts.size()) + " targets passed"
                        : std::to_string(failed) + " of " + std::to_string(rep.verdicts.size()) + " targets failed")
        << " in " << format_number(rep.wall_seconds, 3) << " s\n";
    write_report(rep, o.out);
    return rep.all_pass() ? kExitOk : kExitFailure;
}

/// Entry point; `args` excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out = std::cout, std::ostream &err = std::cerr) {
    CLI::App app{"Teleportation fidelity with a measured third mode", "gto"};
    app.require_subcommand(1);
    Options o;

    auto add_state = [&](CLI::App *sub) {
        sub->add_option("--state", o.state, "JSON file, symmetric:q=<v>, example1 or example2")->required();
    };
    auto add_input = [&](CLI::App *sub) {
        sub->add_option("--input", o.input, "coherent, squeezed:<xi>,<phi> or JSON file")->capture_default_str();
    };
    auto add_out = [&](CLI::App *sub) { sub->add_option("--out", o.out, "write a JSON report here"); };

    CLI::App *check = app.add_subcommand("check", "genuineness and reduced-state separability");
    add_state(check);
    add_out(check);

    CLI::App *fidelity = app.add_subcommand("fidelity", "fidelity for one measurement (xi, phi)");
    add_state(fidelity);
    add_input(fidelity);
    fidelity->add_option("--xi", o.xi, "squeezing factor, 0..inf")->required();
    fidelity->add_option("--phi", o.phi, "squeezing phase in radians")->required();
    add_out(fidelity);

    CLI::App *opt = app.add_subcommand("optimize", "optimal Gaussian measurement on the third mode");
    add_state(opt);
    add_input(opt);
    opt->add_option("--grid", o.grid, "phase grid size");
    add_out(opt);

    CLI::App *sweep_q = app.add_subcommand("sweep-q", "symmetric channel sweep over q (CSV)");
    sweep_q->add_option("--q-min", o.q_min)->capture_default_str();
    sweep_q->add_option("--q-max", o.q_max)->capture_default_str();
    sweep_q->add_option("--n", o.n, "number of log-spaced points (default 100)");
    sweep_q->add_option("--csv", o.csv, "CSV path (default stdout)");

    CLI::App *sweep_phi = app.add_subcommand("sweep-phi", "fixed-phase analysis over phi (CSV)");
    add_state(sweep_phi);
    add_input(sweep_phi);
    sweep_phi->add_option("--n", o.n, "number of phases in [0, pi) (default 360)");
    sweep_phi->add_option("--csv", o.csv, "CSV path (default stdout)");

    CLI::App *grid = app.add_subcommand("grid", "brute-force (xi, phi) grid search");
    add_state(grid);
    add_input(grid);
    grid->add_option("--grid", o.grid, "points per axis (default 400)");
    grid->add_option("--csv", o.csv, "fidelity surface CSV");
    add_out(grid);

    CLI::App *repro = app.add_subcommand("reproduce", "run every reproduction target");
    repro->add_option("--grid", o.grid, "oracle grid per axis (default 400)");
    add_out(repro);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) {
            return cmd_check(o, out);
        }
        if (fidelity->parsed()) {
            return cmd_fidelity(o, out);
        }
        if (opt->parsed()) {
            return cmd_optimize(o, out);
        }
        if (sweep_q->parsed()) {
            return cmd_sweep_q(o, out);
        }
        if (sweep_phi->parsed()) {
            return cmd_sweep_phi(o, out);
        }
        if (grid->parsed()) {
            return cmd_grid(o, out);
        }
        if (repro->parsed()) {
            return cmd_reproduce(o, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SchemaError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const StructuralError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace gto::cli
