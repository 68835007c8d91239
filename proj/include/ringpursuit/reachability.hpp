#pragma once

// Escape and capture heading sets for one or more ring pursuers.
//
// For a heading, the starts from which a pursuer moving in a given direction
// captures form one arc of the ring when the evader begins outside the
// rho-band of the ring (r + rho < R): capture times then form a single
// interval and the admissible start moves continuously with them. The arc
// runs from the least-travel start (trailing edge of the capture disk) back
// to the worst-case start. Outside that domain, or within a hair of an arc
// end, the predicate asks the simulation oracle.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ringpursuit/angles.hpp"
#include "ringpursuit/capture_geometry.hpp"
#include "ringpursuit/dynamics.hpp"
#include "ringpursuit/numerics.hpp"
#include "ringpursuit/parallel.hpp"
#include "ringpursuit/scenario.hpp"
#include "ringpursuit/worst_case.hpp"

namespace ringpursuit {

enum class HeadingLabel { Escape, Capture };

constexpr const char* to_string(HeadingLabel l) { return l == HeadingLabel::Escape ? "ESCAPE" : "CAPTURE"; }

struct HeadingInterval {
    double lo = 0.0;
    double hi = 0.0;
    HeadingLabel label = HeadingLabel::Escape;

    double length() const { return hi - lo; }
    friend bool operator==(const HeadingInterval&, const HeadingInterval&) = default;
};

/// Ordered, disjoint arcs [lo, hi) covering [0, 2pi) exactly once.
/// Neighbouring list entries carry different labels; the first and last arc
/// may share a label (they meet across the 0/2pi seam).
struct HeadingIntervalSet {
    std::vector<HeadingInterval> intervals;
    double resolution = 1e-6;

    HeadingLabel label_at(double psi) const {
        const double x = normalize_angle(psi);
        for (const auto& iv : intervals) {
            if (x >= iv.lo && x < iv.hi) return iv.label;
        }
        return intervals.back().label;
    }

    double measure(HeadingLabel label) const {
        double m = 0.0;
        for (const auto& iv : intervals) {
            if (iv.label == label) m += iv.length();
        }
        return m;
    }

    std::size_t boundary_count() const { return intervals.empty() ? 0 : intervals.size() - 1; }

    void validate() const {
        if (intervals.empty()) throw std::logic_error("HeadingIntervalSet: empty");
        if (intervals.front().lo != 0.0 || intervals.back().hi != kTwoPi) {
            throw std::logic_error("HeadingIntervalSet: does not span [0, 2pi)");
        }
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            if (!(intervals[i].hi > intervals[i].lo)) throw std::logic_error("HeadingIntervalSet: empty arc");
            if (i > 0) {
                if (intervals[i].lo != intervals[i - 1].hi) throw std::logic_error("HeadingIntervalSet: gap");
                if (intervals[i].label == intervals[i - 1].label) {
                    throw std::logic_error("HeadingIntervalSet: neighbouring arcs share a label");
                }
            }
        }
    }
};

inline double escape_measure(const HeadingIntervalSet& s) { return s.measure(HeadingLabel::Escape); }

/// Starts that capture, as angular offsets behind the exit point along the
/// orbit direction: capture iff the pursuer's offset lies in [least, worst]
/// (mod 2pi).
struct CaptureArc {
    double theta_f = 0.0;
    double least = 0.0;
    double worst = 0.0;

    double width() const { return worst - least; }
};

/// True when the closed-form capture arc describes every capture for this
/// scenario (the evader starts outside the ring's rho-band).
inline bool capture_arc_exact(const ScenarioParams& p) { return p.r() + p.rho() < p.R(); }

/// Smallest offset behind the exit point from which a pursuer still captures:
/// the trailing edge of the capture disk meets the evader at some time in
/// [t_enter, EF], minimised over that time.
inline double least_travel_offset(const ScenarioParams& p, double psi, Direction dir) {
    const ExitInfo ex = exit_for_heading(p, psi);
    const double a = sign(dir);
    const double R = p.R();
    const double rho = p.rho();

    // The evader is within rho of the ring once |E| >= R - rho.
    const double inner = R - rho;
    double t_enter = 0.0;
    if (inner > p.r()) {
        const double b = p.r() * std::cos(psi);
        t_enter = -b + std::sqrt(std::max(0.0, b * b - p.r() * p.r() + inner * inner));
        t_enter = std::clamp(t_enter, 0.0, ex.distance);
    }

    auto offset_at = [&](double t) {
        const Vec2 e = evader_position(p, psi, t);
        const double radius = e.norm();
        double half = kPi;
        if (radius > 0.0) {
            const double c = (radius * radius + R * R - rho * rho) / (2.0 * radius * R);
            half = std::acos(std::clamp(c, -1.0, 1.0));
        }
        const double behind = a * std::remainder(ex.theta_f - e.angle(), kTwoPi);
        return behind - half + p.gamma() * t / R;
    };

    constexpr int kScan = 64;
    const double h = (ex.distance - t_enter) / kScan;
    int best_k = kScan;
    double best = offset_at(ex.distance);
    for (int k = 0; k < kScan; ++k) {
        const double v = offset_at(t_enter + k * h);
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    const double lo = t_enter + std::max(0, best_k - 1) * h;
    const double hi = t_enter + std::min(kScan, best_k + 1) * h;
    const Minimum m = golden_section_min(offset_at, lo, hi, 1e-13);
    return std::min(best, m.value);
}

inline CaptureArc capture_arc(const ScenarioParams& p, double psi, Direction dir) {
    const WorstCaseResult w = worst_case_start(p, psi, dir);
    return {w.solution.theta_f, least_travel_offset(p, psi, dir), w.travel};
}

namespace detail {

inline bool simulated_capture(const ScenarioParams& p, double psi, double theta_p0, Direction dir) {
    return capture_oracle(p, EvaderIntent{psi}, PursuerSpec{theta_p0, dir}).captured;
}

inline bool capture_in_direction(const ScenarioParams& p, double psi, double theta_p0, Direction dir) {
    if (!capture_arc_exact(p)) return simulated_capture(p, psi, theta_p0, dir);
    const CaptureArc arc = capture_arc(p, psi, dir);
    if (arc.width() >= kTwoPi) return true;
    const double offset = sign(dir) * (arc.theta_f - theta_p0);
    const double into = normalize_angle(offset - arc.least);
    const double band = 2.0 * p.tol().angle_tol;
    const bool near_edge = into < band || kTwoPi - into < band || std::abs(into - arc.width()) < band;
    if (near_edge) return simulated_capture(p, psi, theta_p0, dir);
    return into <= arc.width();
}

inline bool immediate_capture(const ScenarioParams& p, double theta_p0) {
    return (p.evader_start() - Vec2::polar(p.R(), theta_p0)).norm() <= p.rho();
}

}  // namespace detail

/// Whether `pursuer` captures an evader holding heading `psi`. A Favorable
/// pursuer picks whichever orbit direction captures.
inline bool capture_predicate(const ScenarioParams& p, double psi, const PursuerSpec& pursuer) {
    if (detail::immediate_capture(p, pursuer.theta_p0)) return true;
    if (detail::capture_in_direction(p, psi, pursuer.theta_p0, pursuer.direction)) return true;
    return pursuer.policy == DirectionPolicy::Favorable &&
           detail::capture_in_direction(p, psi, pursuer.theta_p0, reversed(pursuer.direction));
}

/// Same question answered by simulation alone.
inline bool simulated_capture_predicate(const ScenarioParams& p, double psi, const PursuerSpec& pursuer) {
    if (detail::simulated_capture(p, psi, pursuer.theta_p0, pursuer.direction)) return true;
    return pursuer.policy == DirectionPolicy::Favorable &&
           detail::simulated_capture(p, psi, pursuer.theta_p0, reversed(pursuer.direction));
}

inline HeadingLabel heading_label(const ScenarioParams& p, double psi, const std::vector<PursuerSpec>& pursuers) {
    for (const auto& pu : pursuers) {
        if (capture_predicate(p, psi, pu)) return HeadingLabel::Capture;
    }
    return HeadingLabel::Escape;
}

struct EscapeSetOptions {
    int grid = 720;
    double resolution = 1e-6;
};

/// Escape headings against every pursuer in `pursuers`: a heading escapes
/// only if no pursuer captures. Labels are sampled on a uniform grid and each
/// label change is bisected down to `resolution`.
inline HeadingIntervalSet escape_set(const ScenarioParams& p, const std::vector<PursuerSpec>& pursuers,
                                     const EscapeSetOptions& opts = {}) {
    if (pursuers.empty()) throw DomainError("pursuers", "at least one pursuer is required");
    for (const auto& pu : pursuers) pu.validate();
    if (opts.grid < 2) throw DomainError("grid", "needs at least 2 samples");
    if (!(opts.resolution > 0.0)) throw DomainError("resolution", "must be > 0");

    const auto n = static_cast<std::size_t>(opts.grid);
    const double step = kTwoPi / static_cast<double>(n);
    auto label = [&](double psi) { return heading_label(p, psi, pursuers); };
    const std::vector<HeadingLabel> samples =
        detail::parallel_map(n, [&](std::size_t k) { return label(static_cast<double>(k) * step); });

    std::vector<double> cuts(n, -1.0);
    const std::vector<double> located = detail::parallel_map(n, [&](std::size_t k) {
        const HeadingLabel here = samples[k];
        const HeadingLabel next = samples[(k + 1) % n];
        if (here == next) return -1.0;
        const double lo = static_cast<double>(k) * step;
        const double hi = k + 1 == n ? kTwoPi : static_cast<double>(k + 1) * step;
        const Bracket b = bisect([&](double psi) { return label(psi) == next; }, lo, hi, opts.resolution, 200);
        return b.mid();
    });

    HeadingIntervalSet out;
    out.resolution = opts.resolution;
    double start = 0.0;
    HeadingLabel current = samples[0];
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (located[k] < 0.0) continue;
        out.intervals.push_back({start, located[k], current});
        start = located[k];
        current = samples[k + 1];
    }
    // A change between the last sample and 2pi (same heading as sample 0).
    if (located[n - 1] >= 0.0) {
        out.intervals.push_back({start, located[n - 1], current});
        start = located[n - 1];
        current = samples[0];
    }
    out.intervals.push_back({start, kTwoPi, current});
    return out;
}

/// Labels of `s` at `grid` evenly spaced headings starting from 0.
inline std::vector<HeadingLabel> sample_labels(const HeadingIntervalSet& s, int grid) {
    std::vector<HeadingLabel> out(static_cast<std::size_t>(grid));
    for (int k = 0; k < grid; ++k) out[static_cast<std::size_t>(k)] = s.label_at(kTwoPi * k / grid);
    return out;
}

}  // namespace ringpursuit
