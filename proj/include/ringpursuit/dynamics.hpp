#pragma once

// Kinematic simulator used as the ground-truth capture oracle.
//
// The evader's Cartesian state is advanced with fixed-step RK4; the pursuer is
// placed analytically on the ring (theta_P(t) = theta_P0 + a*gamma*t/R), so it
// never drifts off the circle. Capture (R_PE <= rho) and exit (|E| >= R) are
// detected per step and refined by bisection. A local minimum of R_PE inside a
// step is located from the sign change of the range rate, which lets grazing
// contacts be certified without shrinking the step.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ringpursuit/angles.hpp"
#include "ringpursuit/capture_geometry.hpp"
#include "ringpursuit/numerics.hpp"
#include "ringpursuit/scenario.hpp"

namespace ringpursuit {

struct AgentState {
    double x = 0.0;
    double y = 0.0;
    double heading = 0.0;

    Vec2 position() const { return {x, y}; }
};

/// Line-of-sight description of the pair. lambda is a diagnostic; the
/// propagated state is (r_pe, theta_p, phi_e, sigma_p).
struct RelativeState {
    double r_pe = 0.0;
    double theta_p = 0.0;
    double phi_e = 0.0;
    double sigma_p = 0.0;
    double lambda = 0.0;
};

/// Time derivatives of the RelativeState fields.
struct PolarRates {
    double r_pe = 0.0;
    double theta_p = 0.0;
    double phi_e = 0.0;
    double sigma_p = 0.0;
    double lambda = 0.0;
};

class SingularRange : public std::domain_error {
  public:
    SingularRange() : std::domain_error("line-of-sight angle undefined: range is zero") {}
};

/// R_PE' = v_E cos(phi_E) - v_P cos(sigma_P).
inline double relative_range_rate(const RelativeState& s, const ScenarioParams& p) {
    return p.v_e() * std::cos(s.phi_e) - p.v_p() * std::cos(s.sigma_p);
}

inline PolarRates polar_derivatives(const RelativeState& s, const ScenarioParams& p, Direction dir) {
    if (s.r_pe <= p.tol().range_tol) throw SingularRange();
    PolarRates d;
    d.lambda = (p.v_e() * std::sin(s.phi_e) - p.v_p() * std::sin(s.sigma_p)) / s.r_pe;
    d.r_pe = relative_range_rate(s, p);
    d.theta_p = sign(dir) * p.v_p() / p.R();
    d.phi_e = -d.lambda;
    d.sigma_p = d.theta_p - d.lambda;
    return d;
}

inline double pursuer_angle(const ScenarioParams& p, const PursuerSpec& ps, double t) {
    return ps.theta_p0 + sign(ps.direction) * p.gamma() * t / p.R();
}

inline AgentState pursuer_state(const ScenarioParams& p, const PursuerSpec& ps, double t) {
    const double th = pursuer_angle(p, ps, t);
    const Vec2 pos = Vec2::polar(p.R(), th);
    return {pos.x, pos.y, th + sign(ps.direction) * kPi / 2.0};
}

inline AgentState evader_state(const ScenarioParams& p, const EvaderIntent& e, double t) {
    const Vec2 pos = evader_position(p, e.psi_e, t);
    return {pos.x, pos.y, e.psi_e};
}

/// Relative polar quantities reconstructed from Cartesian states.
inline RelativeState relative_state(const AgentState& e, const AgentState& pu, double theta_p) {
    const Vec2 d = e.position() - pu.position();
    RelativeState s;
    s.r_pe = d.norm();
    s.lambda = d.angle();
    s.theta_p = theta_p;
    s.phi_e = e.heading - s.lambda;
    s.sigma_p = pu.heading - s.lambda;
    return s;
}

inline RelativeState relative_state_at(const ScenarioParams& p, const EvaderIntent& e,
                                       const PursuerSpec& ps, double t) {
    return relative_state(evader_state(p, e, t), pursuer_state(p, ps, t), pursuer_angle(p, ps, t));
}

/// Range rate from Cartesian positions and velocities.
inline double cartesian_range_rate(const ScenarioParams& p, const AgentState& e, const AgentState& pu) {
    const Vec2 d = e.position() - pu.position();
    const double n = d.norm();
    if (n == 0.0) return 0.0;
    const Vec2 ve = p.v_e() * heading_vector(e.heading);
    const Vec2 vp = p.v_p() * heading_vector(pu.heading);
    return d.dot(ve - vp) / n;
}

/// Step that keeps the capture disk from being tunnelled through, capped by
/// the configured time_step.
inline double effective_time_step(const ScenarioParams& p) {
    double scale = p.R() - p.r();
    if (p.rho() > 0.0) scale = std::min(scale, p.rho());
    return std::min({p.tol().time_step, 0.01 * p.R(), scale / (10.0 * (1.0 + p.gamma()))});
}

struct TrajectorySample {
    double t = 0.0;
    AgentState evader{};
    AgentState pursuer{};
    double r_pe = 0.0;
    double r_pe_rate = 0.0;
};

enum class OutcomeKind { Captured, Escaped };

struct Outcome {
    OutcomeKind kind = OutcomeKind::Escaped;
    double t = 0.0;
    double r_pe = 0.0;

    bool captured() const { return kind == OutcomeKind::Captured; }
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    Outcome outcome{};
    double exit_time = 0.0;
    // Minimum range over the simulated span (up to capture, or up to exit
    // when the run continues past capture).
    double min_range = std::numeric_limits<double>::infinity();
    double min_range_time = 0.0;
};

struct SimulationOptions {
    double time_step = 0.0;  // <= 0 selects effective_time_step()
    bool stop_at_capture = true;
    bool record_samples = true;
};

class HorizonExceeded : public std::runtime_error {
  public:
    HorizonExceeded() : std::runtime_error("simulate: horizon exceeded without capture or escape") {}
};

inline Trajectory simulate(const ScenarioParams& p, const EvaderIntent& ev, const PursuerSpec& pu,
                           double horizon, const SimulationOptions& opts = {}) {
    const double dt = opts.time_step > 0.0 ? opts.time_step : effective_time_step(p);
    const double rho = p.rho();
    const double range_tol = p.tol().range_tol;
    const Vec2 velocity = p.v_e() * heading_vector(ev.psi_e);
    auto field = [velocity](double, const StateVector<2>&) { return StateVector<2>{velocity.x, velocity.y}; };

    Trajectory traj;
    StateVector<2> y{p.r(), 0.0};
    double t = 0.0;

    auto evader_from = [&](double t0, const StateVector<2>& y0, double s) {
        const StateVector<2> ys = rk4_step<2>(field, t0, y0, s);
        return AgentState{ys[0], ys[1], ev.psi_e};
    };
    auto sample_at = [&](double t0, const StateVector<2>& y0, double s) {
        TrajectorySample smp;
        smp.t = t0 + s;
        smp.evader = evader_from(t0, y0, s);
        smp.pursuer = pursuer_state(p, pu, smp.t);
        smp.r_pe = (smp.evader.position() - smp.pursuer.position()).norm();
        smp.r_pe_rate = cartesian_range_rate(p, smp.evader, smp.pursuer);
        return smp;
    };
    auto record = [&](const TrajectorySample& s) {
        if (opts.record_samples) traj.samples.push_back(s);
        if (s.r_pe < traj.min_range) {
            traj.min_range = s.r_pe;
            traj.min_range_time = s.t;
        }
    };

    bool captured = false;
    auto mark_capture = [&](const TrajectorySample& s) {
        captured = true;
        traj.outcome = {OutcomeKind::Captured, s.t, s.r_pe};
    };

    const TrajectorySample first = sample_at(0.0, y, 0.0);
    record(first);
    if (first.r_pe - rho <= range_tol) {
        mark_capture(first);
        if (opts.stop_at_capture) return traj;
    }

    constexpr double kTimeTol = 1e-15;
    while (t < horizon) {
        const double h = std::min(dt, horizon - t);
        const StateVector<2> y1 = rk4_step<2>(field, t, y, h);
        const bool exits = std::hypot(y1[0], y1[1]) >= p.R();
        double span = h;
        if (exits) {
            const Bracket b = bisect(
                [&](double s) { return evader_from(t, y, s).position().norm() >= p.R(); }, 0.0, h,
                kTimeTol, 200);
            span = b.hi;
        }

        const TrajectorySample start = sample_at(t, y, 0.0);
        const TrajectorySample end = sample_at(t, y, span);
        // Interior minimum of the range inside this step.
        std::optional<TrajectorySample> interior;
        if (start.r_pe_rate < 0.0 && end.r_pe_rate > 0.0) {
            const Bracket b = bisect([&](double s) { return sample_at(t, y, s).r_pe_rate > 0.0; }, 0.0,
                                     span, kTimeTol, 200);
            interior = sample_at(t, y, b.mid());
            if (interior->r_pe < traj.min_range) {
                traj.min_range = interior->r_pe;
                traj.min_range_time = interior->t;
            }
        }

        if (!captured) {
            const double search_end = interior && interior->r_pe <= end.r_pe ? interior->t - t : span;
            const TrajectorySample probe = interior && interior->r_pe <= end.r_pe ? *interior : end;
            if (probe.r_pe - rho <= 0.0) {
                const Bracket b = bisect([&](double s) { return sample_at(t, y, s).r_pe <= rho; }, 0.0,
                                         search_end, kTimeTol, 200);
                mark_capture(sample_at(t, y, b.hi));
            } else if (probe.r_pe - rho <= range_tol) {
                mark_capture(probe);
            }
            if (captured && opts.stop_at_capture) {
                record(sample_at(t, y, traj.outcome.t - t));
                return traj;
            }
        }

        record(end);
        if (exits) {
            traj.exit_time = end.t;
            if (!captured) traj.outcome = {OutcomeKind::Escaped, end.t, end.r_pe};
            return traj;
        }
        t += h;
        y = y1;
    }
    throw HorizonExceeded();
}

struct CaptureVerdict {
    bool captured = false;
    double t = 0.0;     // first touch, or exit time when escaped
    double r_pe = 0.0;  // range at that instant
};

/// Capture check with the horizon set to 1.1 x the evader's exit time.
inline CaptureVerdict capture_oracle(const ScenarioParams& p, const EvaderIntent& ev, const PursuerSpec& pu,
                                     double time_step = 0.0) {
    const double horizon = 1.1 * exit_for_heading(p, ev.psi_e).distance / p.v_e();
    SimulationOptions opts;
    opts.time_step = time_step;
    opts.record_samples = false;
    const Trajectory tr = simulate(p, ev, pu, horizon, opts);
    return {tr.outcome.captured(), tr.outcome.t, tr.outcome.r_pe};
}

/// Fixed-step RK4 propagation of (R_PE, theta_P, phi_E, sigma_P).
inline RelativeState propagate_polar(const ScenarioParams& p, const RelativeState& s0, Direction dir,
                                     double duration, double dt) {
    auto field = [&](double, const StateVector<4>& y) {
        RelativeState s;
        s.r_pe = y[0];
        s.theta_p = y[1];
        s.phi_e = y[2];
        s.sigma_p = y[3];
        const PolarRates d = polar_derivatives(s, p, dir);
        return StateVector<4>{d.r_pe, d.theta_p, d.phi_e, d.sigma_p};
    };
    StateVector<4> y{s0.r_pe, s0.theta_p, s0.phi_e, s0.sigma_p};
    const int steps = std::max(1, static_cast<int>(std::llround(duration / dt)));
    const double h = duration / steps;
    for (int i = 0; i < steps; ++i) y = rk4_step<4>(field, i * h, y, h);
    RelativeState out;
    out.r_pe = y[0];
    out.theta_p = y[1];
    out.phi_e = y[2];
    out.sigma_p = y[3];
    // lambda is not propagated; recover it from phi_E = psi_E - lambda.
    out.lambda = s0.lambda + (s0.phi_e - out.phi_e);
    return out;
}

}  // namespace ringpursuit
