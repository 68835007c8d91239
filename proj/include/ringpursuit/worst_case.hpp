#pragma once

// Worst-case pursuer start for a constant evader heading: among the capture
// configurations that exist (EXC always, TAC and TGC when they do), the one
// whose start lies farthest behind the exit point along the orbit direction.

#include <cmath>
#include <vector>

#include "ringpursuit/angles.hpp"
#include "ringpursuit/capture_geometry.hpp"
#include "ringpursuit/numerics.hpp"
#include "ringpursuit/parallel.hpp"
#include "ringpursuit/scenario.hpp"
#include "ringpursuit/tgc_solver.hpp"

namespace ringpursuit {

enum class Regime { EXC, TGC, TAC, Point };

constexpr const char* to_string(Regime r) {
    switch (r) {
        case Regime::EXC: return "EXC";
        case Regime::TGC: return "TGC";
        case Regime::TAC: return "TAC";
        case Regime::Point: return "Point";
    }
    return "?";
}

constexpr Regime regime_of(CaptureKind k) {
    switch (k) {
        case CaptureKind::Point: return Regime::Point;
        case CaptureKind::ExitPoint: return Regime::EXC;
        case CaptureKind::Tangent: return Regime::TAC;
        case CaptureKind::TouchAndGo: return Regime::TGC;
    }
    return Regime::EXC;
}

/// Angular range from a start angle forward to the exit point. Uses the
/// unwrapped solution angles, so a start nearly a full lap back is not
/// confused with one just behind the exit.
inline double range_behind_exit(const CaptureSolution& s) {
    return sign(s.direction) * (s.theta_f - s.theta_p0);
}

struct WorstCaseResult {
    CaptureSolution solution;
    double travel = 0.0;  // theta_P0 -> theta_F along the orbit direction
    Regime regime = Regime::EXC;

    double pursuer_arc() const { return solution.pursuer_arc(); }
};

inline WorstCaseResult make_worst_case(const CaptureSolution& s) {
    return {s, range_behind_exit(s), regime_of(s.kind)};
}

inline WorstCaseResult worst_case_start(const ScenarioParams& p, double psi, Direction dir) {
    if (p.rho() == 0.0) return make_worst_case(point_capture_start(p, psi, dir));

    WorstCaseResult best = make_worst_case(exc_start(p, psi, dir));
    auto consider = [&best](const SolveOutcome<CaptureSolution>& c) {
        if (!c) return;
        const WorstCaseResult w = make_worst_case(*c);
        if (w.travel > best.travel) best = w;
    };
    consider(solve_tgc(p, psi, dir));
    consider(tac_start(p, psi, dir));
    return best;
}

inline std::vector<WorstCaseResult> worst_case_sweep(const ScenarioParams& p, const std::vector<double>& headings,
                                                     Direction dir) {
    if (headings.empty()) throw DomainError("headings", "must not be empty");
    return detail::parallel_map(headings.size(),
                                [&](std::size_t i) { return worst_case_start(p, headings[i], dir); });
}

/// `count` headings evenly spaced over [lo, hi], endpoints included.
inline std::vector<double> heading_grid(double lo, double hi, int count) {
    if (count < 1) throw DomainError("count", "heading grid needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    }
    return out;
}

struct RegimeBoundary {
    double heading = 0.0;
    Regime before = Regime::EXC;
    Regime after = Regime::EXC;
};

/// Headings in [lo, hi] where the worst-case regime changes, located by
/// bisection between adjacent samples of a `samples`-point grid.
inline std::vector<RegimeBoundary> regime_boundaries(const ScenarioParams& p, double lo, double hi, Direction dir,
                                                     int samples = 73) {
    const std::vector<double> grid = heading_grid(lo, hi, samples);
    const std::vector<WorstCaseResult> w = worst_case_sweep(p, grid, dir);
    std::vector<RegimeBoundary> out;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (w[i].regime == w[i - 1].regime) continue;
        const Regime left = w[i - 1].regime;
        const Bracket b = bisect([&](double psi) { return worst_case_start(p, psi, dir).regime != left; },
                                 grid[i - 1], grid[i], p.tol().angle_tol, p.tol().max_bisection_iters);
        out.push_back({b.mid(), left, w[i].regime});
    }
    return out;
}

}  // namespace ringpursuit
