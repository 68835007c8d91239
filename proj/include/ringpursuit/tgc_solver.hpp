#pragma once

// Touch-and-go capture: the capture circle grazes the evader, R_PE = rho and
// R_PE' = 0 at the same instant.
//
// The unknown is the pursuer's final ring angle, written as an offset omega
// behind the exit point (theta_Pf = theta_F - a*omega). It is bracketed by
// the TAC offset and the EXC offset. For a candidate, the pursuer is frozen at
// its final point Q, the capture instant t* is where the evader's ray leaves
// the rho-circle about Q (the later root, capped at the exit), and the
// residual is the range rate at t* with the pursuer moving through Q. The
// bracket is bisected on the sign of that residual and the start is
// backtracked from t*.

#include <algorithm>
#include <cmath>

#include "ringpursuit/capture_geometry.hpp"
#include "ringpursuit/dynamics.hpp"
#include "ringpursuit/numerics.hpp"
#include "ringpursuit/scenario.hpp"

namespace ringpursuit {

struct TgcCandidate {
    double offset = 0.0;    // omega
    double theta_pf = 0.0;
    double t_capture = 0.0;
    double range_rate = 0.0;
};

inline constexpr double kTgcRateTol = 1e-6;

/// Residual of the touch-and-go condition for a pursuer final point `offset`
/// radians behind the exit point.
inline TgcCandidate tgc_candidate(const ScenarioParams& p, double psi, Direction dir, double offset) {
    const ExitInfo ex = exit_for_heading(p, psi);
    const double a = sign(dir);
    TgcCandidate c;
    c.offset = offset;
    c.theta_pf = ex.theta_f - a * offset;
    const Vec2 q = Vec2::polar(p.R(), c.theta_pf);
    const Vec2 u = heading_vector(psi);
    const Vec2 eq = p.evader_start() - q;
    const double b = eq.dot(u);
    const double disc = std::max(0.0, b * b - (eq.dot(eq) - p.rho() * p.rho()));
    c.t_capture = std::min(-b + std::sqrt(disc), ex.distance);

    const AgentState e{evader_position(p, psi, c.t_capture).x, evader_position(p, psi, c.t_capture).y, psi};
    const AgentState pu{q.x, q.y, c.theta_pf + a * kPi / 2.0};
    c.range_rate = cartesian_range_rate(p, e, pu);
    return c;
}

namespace detail {

// True when a pursuer starting at theta_p0 comes strictly inside the capture
// circle before t_end. Samples the closed-form range and polishes each sampled
// local minimum.
inline bool contact_before(const ScenarioParams& p, double psi, const PursuerSpec& pu, double t_end) {
    constexpr int kSamples = 256;
    const double limit = p.rho() - p.tol().range_tol;
    auto range = [&](double t) {
        return (evader_position(p, psi, t) - Vec2::polar(p.R(), pursuer_angle(p, pu, t))).norm();
    };
    const double h = t_end / kSamples;
    double prev2 = range(0.0);
    if (prev2 < limit) return true;
    double prev = range(h);
    for (int k = 2; k <= kSamples; ++k) {
        const double cur = range(k * h);
        if (prev < limit) return true;
        if (prev <= prev2 && prev <= cur) {
            const Minimum m = golden_section_min(range, (k - 2) * h, k * h, 1e-12);
            // The graze at t_end itself is the intended contact.
            if (m.value < limit && m.x < t_end - 1e-9) return true;
        }
        prev2 = prev;
        prev = cur;
    }
    return false;
}

}  // namespace detail

inline SolveOutcome<CaptureSolution> solve_tgc(const ScenarioParams& p, double psi, Direction dir) {
    if (p.rho() == 0.0) return SolveFailure::NoBracket;
    const auto tac = tac_start(p, psi, dir);
    if (!tac) return SolveFailure::NoBracket;

    const double tac_offset = tac->offset;
    const double exc_offset = chord_offset(p);
    const TgcCandidate at_tac = tgc_candidate(p, psi, dir, tac_offset);
    const TgcCandidate at_exc = tgc_candidate(p, psi, dir, exc_offset);
    if (at_tac.range_rate == 0.0 || at_exc.range_rate == 0.0 ||
        std::signbit(at_tac.range_rate) == std::signbit(at_exc.range_rate)) {
        return SolveFailure::NoBracket;
    }

    const bool exc_sign = std::signbit(at_exc.range_rate);
    const ToleranceConfig& tol = p.tol();
    const Bracket b = bisect(
        [&](double w) { return std::signbit(tgc_candidate(p, psi, dir, w).range_rate) == exc_sign; },
        tac_offset, exc_offset, tol.angle_tol, tol.max_bisection_iters);
    if (!b.converged) return SolveFailure::NoConvergence;

    const TgcCandidate best = tgc_candidate(p, psi, dir, b.mid());
    if (std::abs(best.range_rate) > kTgcRateTol) return SolveFailure::NoConvergence;

    const ExitInfo ex = exit_for_heading(p, psi);
    const double a = sign(dir);
    CaptureSolution s;
    s.kind = CaptureKind::TouchAndGo;
    s.direction = dir;
    s.psi_e = psi;
    s.theta_f = ex.theta_f;
    s.theta_pf = best.theta_pf;
    s.t_c = best.t_capture / p.v_e();
    s.theta_p0 = s.theta_pf - a * p.gamma() * s.t_c / p.R();
    s.capture_point = evader_position(p, psi, best.t_capture);
    s.evader_travel = best.t_capture;
    s.chord = (Vec2::polar(p.R(), s.theta_pf) - ex.point).norm();
    s.offset = best.offset;

    if (detail::contact_before(p, psi, PursuerSpec{s.theta_p0, dir}, s.t_c)) {
        return SolveFailure::PreemptedContact;
    }
    return s;
}

}  // namespace ringpursuit
