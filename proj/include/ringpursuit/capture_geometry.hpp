#pragma once

// Closed-form capture configurations: point capture, exit-point capture (EXC)
// and tangent capture (TAC).
//
// Sign convention: with a = sign(direction), a pursuer that has not yet
// reached the exit point F sits at theta_F - a*offset, and backtracking a
// capture at time t gives theta_P0 = theta_Pf - a*gamma*t/R.

#include <algorithm>
#include <cmath>

#include "ringpursuit/angles.hpp"
#include "ringpursuit/scenario.hpp"

namespace ringpursuit {

struct ExitInfo {
    double theta_f = 0.0;   // polar angle of the exit point, [0, 2pi)
    double distance = 0.0;  // EF
    Vec2 point{};
};

/// Which edge of the pursuer's capture disk meets the exit point.
/// Leading: the pursuer has not reached F yet (most travel).
/// Trailing: the pursuer has already passed F.
enum class CaptureEdge { Leading, Trailing };

/// Side of the evader's velocity on which the pursuer sits at tangency.
enum class TangentSide { Left, Right };

constexpr double edge_sign(CaptureEdge e) { return e == CaptureEdge::Leading ? 1.0 : -1.0; }

/// A pursuer approaching the exit point from upstream is on the evader's
/// left when it moves CW and on the right when it moves CCW.
constexpr TangentSide tangent_side(Direction d, CaptureEdge e = CaptureEdge::Leading) {
    const bool left = (d == Direction::CW) == (e == CaptureEdge::Leading);
    return left ? TangentSide::Left : TangentSide::Right;
}

inline Vec2 heading_vector(double psi) { return {std::cos(psi), std::sin(psi)}; }

inline Vec2 evader_position(const ScenarioParams& p, double psi, double t) {
    return p.evader_start() + t * heading_vector(psi);
}

/// Law-of-cosines distance from the evader start to the ring point at theta_f.
inline double exit_distance(const ScenarioParams& p, double theta_f) {
    const double R = p.R();
    const double r = p.r();
    return std::sqrt(std::max(0.0, R * R + r * r - 2.0 * R * r * std::cos(theta_f)));
}

/// Heading that takes the evader from (r, 0) through the ring point at theta_f.
inline double heading_for_exit(const ScenarioParams& p, double theta_f) {
    const Vec2 f = Vec2::polar(p.R(), theta_f);
    return normalize_angle(std::atan2(f.y, f.x - p.r()));
}

/// Forward intersection of the evader's ray with the ring.
inline ExitInfo exit_for_heading(const ScenarioParams& p, double psi) {
    const double R = p.R();
    const double r = p.r();
    // Positive root of t^2 + 2 r cos(psi) t + r^2 - R^2 = 0.
    const double b = r * std::cos(psi);
    const double s = r * std::sin(psi);
    const double root = std::sqrt(R * R - s * s);
    const double ef = b > 0.0 ? (R - r) * (R + r) / (b + root) : root - b;
    const Vec2 f = evader_position(p, psi, ef);
    return {normalize_angle(f.angle()), ef, f};
}

/// Ring angle subtended by a chord of length rho.
inline double chord_offset(double R, double rho) {
    if (!(rho >= 0.0 && rho < 2.0 * R)) {
        throw DomainError("rho", "chord offset needs 0 <= rho < 2R (got " + detail::describe(rho) + ")");
    }
    return 2.0 * std::asin(rho / (2.0 * R));
}

inline double chord_offset(const ScenarioParams& p) { return chord_offset(p.R(), p.rho()); }

/// Collocated capture at the exit point (the rho -> 0 configuration).
inline CaptureSolution point_capture_start(const ScenarioParams& p, double psi, Direction dir) {
    const ExitInfo ex = exit_for_heading(p, psi);
    const double a = sign(dir);
    CaptureSolution s;
    s.kind = CaptureKind::Point;
    s.direction = dir;
    s.psi_e = psi;
    s.theta_f = ex.theta_f;
    s.theta_pf = ex.theta_f;
    s.theta_p0 = ex.theta_f - a * p.gamma() * ex.distance / p.R();
    s.t_c = ex.distance / p.v_e();
    s.capture_point = ex.point;
    s.evader_travel = ex.distance;
    return s;
}

/// Exit-point capture: the capture disk's edge reaches F as the evader does.
inline CaptureSolution exc_start(const ScenarioParams& p, double psi, Direction dir,
                                 CaptureEdge edge = CaptureEdge::Leading) {
    const ExitInfo ex = exit_for_heading(p, psi);
    const double a = sign(dir);
    const double phi = chord_offset(p);
    CaptureSolution s;
    s.kind = CaptureKind::ExitPoint;
    s.direction = dir;
    s.psi_e = psi;
    s.theta_f = ex.theta_f;
    s.theta_pf = ex.theta_f - edge_sign(edge) * a * phi;
    s.theta_p0 = s.theta_pf - a * p.gamma() * ex.distance / p.R();
    s.t_c = ex.distance / p.v_e();
    s.capture_point = ex.point;
    s.evader_travel = ex.distance;
    s.chord = p.rho();
    s.offset = phi;
    return s;
}

/// Distance EI the evader covers before its path touches a capture circle
/// of radius rho whose centre lies on the ring, on `side` of the velocity.
///
/// Closing the loop E + EI*u + rho_s*n = P_f with |P_f| = R, u the heading,
/// n = u rotated by +pi/2 and rho_s = +/-rho for the left/right side gives
///   EI^2 + 2 r cos(psi) EI + r^2 + rho^2 - 2 r rho_s sin(psi) - R^2 = 0,
/// whose forward root is EI = -r cos(psi) + sqrt(R^2 - (r sin(psi) - rho_s)^2).
inline SolveOutcome<double> tac_tangent_distance(const ScenarioParams& p, double psi,
                                                 TangentSide side = TangentSide::Left) {
    const double R = p.R();
    const double r = p.r();
    const double rho_s = side == TangentSide::Left ? p.rho() : -p.rho();
    const double lateral = r * std::sin(psi) - rho_s;
    const double disc = R * R - lateral * lateral;
    if (disc < 0.0) return SolveFailure::NoTangency;
    const double ei = -r * std::cos(psi) + std::sqrt(disc);
    const double ef = exit_for_heading(p, psi).distance;
    const double tol = p.tol().range_tol;
    if (ei < -tol || ei > ef + tol) return SolveFailure::NoTangency;
    return std::clamp(ei, 0.0, ef);
}

/// Tangent capture: the capture circle of the pursuer, frozen at its final
/// ring point, is tangent to the evader's path at I.
inline SolveOutcome<CaptureSolution> tac_start(const ScenarioParams& p, double psi, Direction dir,
                                               CaptureEdge edge = CaptureEdge::Leading) {
    const auto ei = tac_tangent_distance(p, psi, tangent_side(dir, edge));
    if (!ei) return ei.failure();
    const ExitInfo ex = exit_for_heading(p, psi);
    const double a = sign(dir);
    const double i_to_f = ex.distance - *ei;
    const double c = std::hypot(i_to_f, p.rho());
    const double phi_c = 2.0 * std::asin(std::min(1.0, c / (2.0 * p.R())));

    CaptureSolution s;
    s.kind = CaptureKind::Tangent;
    s.direction = dir;
    s.psi_e = psi;
    s.theta_f = ex.theta_f;
    s.theta_pf = ex.theta_f - edge_sign(edge) * a * phi_c;
    s.theta_p0 = s.theta_pf - a * p.gamma() * *ei / p.R();
    s.t_c = *ei / p.v_e();
    s.capture_point = evader_position(p, psi, *ei);
    s.evader_travel = *ei;
    s.chord = c;
    s.offset = phi_c;
    return s;
}

}  // namespace ringpursuit
