#pragma once

// Command-line front end. run_command() never calls exit(); it returns
// 0 on success, 1 on a domain error and 2 on a usage error.

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringpursuit/config.hpp"
#include "ringpursuit/dynamics.hpp"
#include "ringpursuit/io.hpp"
#include "ringpursuit/param_sweep.hpp"
#include "ringpursuit/reachability.hpp"
#include "ringpursuit/tgc_solver.hpp"
#include "ringpursuit/worst_case.hpp"

namespace ringpursuit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Raw flag values; anything left empty falls back to the config file or defaults.
struct Flags {
    std::optional<std::string> config;
    std::optional<double> R, rho, gamma, r;
    std::optional<double> angle_tol, range_tol, time_step;
    std::optional<int> max_iters;
    std::optional<std::string> out, svg;

    std::optional<std::string> kind;
    std::optional<std::string> heading;
    std::optional<std::string> dir;
    std::optional<std::string> theta0;

    std::optional<std::string> vary;
    std::optional<std::string> values;
    std::optional<std::string> heading_from, heading_to;
    std::optional<int> heading_count;

    std::vector<std::string> pursuers;
    std::optional<int> grid;
    std::optional<double> resolution;
};

struct Parser {
    std::unique_ptr<CLI::App> app;
    CLI::App* solve = nullptr;
    CLI::App* simulate = nullptr;
    CLI::App* sweep = nullptr;
    CLI::App* reach = nullptr;
};

namespace detail {

inline void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON run configuration; flags override its values");
    sub->add_option("--R", f.R, "disk radius (default 1)");
    sub->add_option("--rho", f.rho, "capture radius (default 0.5)");
    sub->add_option("--gamma", f.gamma, "pursuer/evader speed ratio, 0 < gamma < 1 (default 0.5)");
    sub->add_option("--r", f.r, "evader start distance from the centre (default 0.4)");
    sub->add_option("--angle-tol", f.angle_tol, "angle tolerance in rad (default 1e-10)");
    sub->add_option("--range-tol", f.range_tol, "range tolerance (default 1e-9)");
    sub->add_option("--time-step", f.time_step, "upper bound on the simulation step (default 0.01)");
    sub->add_option("--max-iters", f.max_iters, "bisection iteration cap (default 200)");
    sub->add_option("--out", f.out, "output CSV path (default: standard output)");
}

inline void add_direction(CLI::App* sub, Flags& f) {
    sub->add_option("--dir", f.dir, "pursuer direction: cw or ccw (default cw)");
}

}  // namespace detail

inline Parser make_parser(Flags& f) {
    Parser p;
    p.app = std::make_unique<CLI::App>("Ring-constrained pursuit of a faster evader", "ringpursuit");
    p.app->require_subcommand(1);

    p.solve = p.app->add_subcommand("solve", "Pursuer start for one capture configuration");
    detail::add_common(p.solve, f);
    p.solve->add_option("--kind", f.kind, "point, exc, tac, tgc or worst (default worst)");
    p.solve->add_option("--heading", f.heading, "evader heading in rad, e.g. 5.0265 or 1.6pi");
    detail::add_direction(p.solve, f);

    p.simulate = p.app->add_subcommand("simulate", "Trajectory of one engagement");
    detail::add_common(p.simulate, f);
    p.simulate->add_option("--heading", f.heading, "evader heading in rad, e.g. 5.0265 or 1.6pi");
    p.simulate->add_option("--theta0", f.theta0, "pursuer start angle in rad (default: worst-case start)");
    detail::add_direction(p.simulate, f);

    p.sweep = p.app->add_subcommand("sweep", "Worst-case capture locations while one parameter varies");
    detail::add_common(p.sweep, f);
    p.sweep->add_option("--vary", f.vary, "gamma, rho or r (default gamma)");
    p.sweep->add_option("--values", f.values, "comma-separated values of the varied parameter");
    p.sweep->add_option("--heading-from", f.heading_from, "first heading in rad (default pi)");
    p.sweep->add_option("--heading-to", f.heading_to, "last heading in rad (default 2pi)");
    p.sweep->add_option("--heading-count", f.heading_count, "number of headings (default 73)");
    detail::add_direction(p.sweep, f);
    p.sweep->add_option("--svg", f.svg, "also write a scatter of capture points");

    p.reach = p.app->add_subcommand("reach", "Escape and capture heading intervals");
    detail::add_common(p.reach, f);
    p.reach->add_option("--pursuer", f.pursuers, "pursuer as theta:dir[:favorable]; repeatable");
    p.reach->add_option("--grid", f.grid, "initial heading samples (default 720)");
    p.reach->add_option("--resolution", f.resolution, "boundary tolerance in rad (default 1e-6)");
    p.reach->add_option("--svg", f.svg, "also write a heading fan figure");
    return p;
}

/// Top-level help followed by the help of every subcommand.
inline std::string help_text() {
    Flags f;
    Parser p = make_parser(f);
    std::string text = p.app->help();
    for (CLI::App* sub : {p.solve, p.simulate, p.sweep, p.reach}) text += "\n" + sub->help();
    return text;
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline RunConfig build_config(const Flags& f) {
    RunConfig cfg;
    if (f.config) cfg = parse_config(read_file(*f.config));
    if (f.R) cfg.R = *f.R;
    if (f.rho) cfg.rho = *f.rho;
    if (f.gamma) cfg.gamma = *f.gamma;
    if (f.r) cfg.r = *f.r;
    if (f.angle_tol) cfg.tol.angle_tol = *f.angle_tol;
    if (f.range_tol) cfg.tol.range_tol = *f.range_tol;
    if (f.time_step) cfg.tol.time_step = *f.time_step;
    if (f.max_iters) cfg.tol.max_bisection_iters = *f.max_iters;
    if (f.out) cfg.out = *f.out;
    if (f.svg) cfg.svg = *f.svg;
    if (f.kind) cfg.kind = parse_solve_kind(*f.kind);
    if (f.heading) cfg.heading = parse_angle("heading", *f.heading);
    if (f.dir) cfg.direction = parse_direction("dir", *f.dir);
    if (f.theta0) cfg.theta0 = parse_angle("theta0", *f.theta0);
    if (f.vary) {
        if (*f.vary != "gamma" && *f.vary != "rho" && *f.vary != "r") {
            throw UsageError("--vary must be one of gamma, rho, r");
        }
        cfg.vary = parse_sweep_axis(*f.vary);
    }
    if (f.values) cfg.values = parse_value_list("values", *f.values);
    if (f.heading_from) cfg.headings.from = parse_angle("heading-from", *f.heading_from);
    if (f.heading_to) cfg.headings.to = parse_angle("heading-to", *f.heading_to);
    if (f.heading_count) cfg.headings.count = *f.heading_count;
    if (!f.pursuers.empty()) {
        cfg.pursuers.clear();
        for (const auto& s : f.pursuers) cfg.pursuers.push_back(parse_pursuer(s));
    }
    if (f.grid) cfg.grid = *f.grid;
    if (f.resolution) cfg.resolution = *f.resolution;
    cfg.validate();
    return cfg;
}

// Writes to cfg.out, or to `out` when no path was given.
inline void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
    if (path.empty() || path == "-") {
        write(out);
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    write(file);
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

inline double require_heading(const RunConfig& cfg) {
    if (!cfg.heading) throw UsageError("--heading is required");
    return *cfg.heading;
}

inline CaptureSolution unwrap(const SolveOutcome<CaptureSolution>& o, const char* kind) {
    if (!o) throw DomainError("kind", std::string(kind) + " configuration does not exist: " + to_string(o.failure()));
    return *o;
}

inline int run_solve(const RunConfig& cfg, std::ostream& out) {
    const ScenarioParams p = cfg.scenario();
    const double psi = require_heading(cfg);
    const Direction dir = cfg.direction;
    io::SolutionRow row;
    switch (cfg.kind) {
        case SolveKind::Point: row = io::solution_row("point", point_capture_start(p, psi, dir)); break;
        case SolveKind::Exc: row = io::solution_row("exc", exc_start(p, psi, dir)); break;
        case SolveKind::Tac: row = io::solution_row("tac", unwrap(tac_start(p, psi, dir), "tac")); break;
        case SolveKind::Tgc: row = io::solution_row("tgc", unwrap(solve_tgc(p, psi, dir), "tgc")); break;
        case SolveKind::Worst: {
            const WorstCaseResult w = worst_case_start(p, psi, dir);
            row = io::solution_row("worst", w.solution);
            row.travel = w.travel;
            break;
        }
    }
    emit(cfg.out, out, [&](std::ostream& os) { io::write_solution_csv(os, {row}); });
    return kExitOk;
}

inline int run_simulate(const RunConfig& cfg, std::ostream& out) {
    const ScenarioParams p = cfg.scenario();
    const double psi = require_heading(cfg);
    const double theta0 = cfg.theta0 ? *cfg.theta0 : worst_case_start(p, psi, cfg.direction).solution.theta_p0;
    const double horizon = 1.1 * exit_for_heading(p, psi).distance / p.v_e();
    const Trajectory tr = simulate(p, EvaderIntent{psi}, PursuerSpec{theta0, cfg.direction}, horizon);
    emit(cfg.out, out, [&](std::ostream& os) { io::write_trajectory_csv(os, tr); });
    if (!cfg.out.empty() && cfg.out != "-") {
        out << (tr.outcome.captured() ? "captured" : "escaped") << " t=" << io::fmt(tr.outcome.t)
            << " r_pe=" << io::fmt(tr.outcome.r_pe) << " min_range=" << io::fmt(tr.min_range) << '\n';
    }
    return kExitOk;
}

inline int run_sweep(const RunConfig& cfg, std::ostream& out) {
    const ScenarioParams p = cfg.scenario();
    const std::vector<double> values = cfg.values.empty() ? default_sweep_values(cfg.vary) : cfg.values;
    const std::vector<double> headings = heading_grid(cfg.headings.from, cfg.headings.to, cfg.headings.count);
    const std::vector<SweepRecord> records = sweep(p, cfg.vary, values, headings, cfg.direction);
    emit(cfg.out, out, [&](std::ostream& os) { io::write_sweep_csv(os, records); });
    if (!cfg.svg.empty()) emit(cfg.svg, out, [&](std::ostream& os) { io::write_sweep_svg(os, p, records); });
    if (!cfg.out.empty() && cfg.out != "-") {
        for (const auto& s : summarize(records)) {
            out << to_string(cfg.vary) << '=' << io::fmt(s.value) << " mean_cap_r=" << io::fmt(s.mean_capture_radius)
                << " cells=" << s.cells << " failed=" << s.failed << '\n';
        }
    }
    return kExitOk;
}

inline int run_reach(const RunConfig& cfg, std::ostream& out) {
    if (cfg.pursuers.empty()) throw UsageError("at least one --pursuer is required");
    const ScenarioParams p = cfg.scenario();
    const HeadingIntervalSet set = escape_set(p, cfg.pursuers, EscapeSetOptions{cfg.grid, cfg.resolution});
    emit(cfg.out, out, [&](std::ostream& os) { io::write_intervals_csv(os, set); });
    if (!cfg.svg.empty()) {
        emit(cfg.svg, out, [&](std::ostream& os) { io::write_reach_svg(os, p, set, cfg.pursuers); });
    }
    if (!cfg.out.empty() && cfg.out != "-") {
        out << "escape_measure=" << io::fmt(escape_measure(set)) << " intervals=" << set.intervals.size() << '\n';
    }
    return kExitOk;
}

}  // namespace detail

/// `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags f;
    Parser parser = make_parser(f);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        parser.app->parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << help_text();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const RunConfig cfg = detail::build_config(f);
        if (parser.solve->parsed()) return detail::run_solve(cfg, out);
        if (parser.simulate->parsed()) return detail::run_simulate(cfg, out);
        if (parser.sweep->parsed()) return detail::run_sweep(cfg, out);
        return detail::run_reach(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigSyntaxError& e) {
        err << "config syntax error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

}  // namespace ringpursuit::cli
