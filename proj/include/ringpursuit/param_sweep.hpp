#pragma once

// Capture locations of the worst-case start as one scenario parameter is
// varied over a heading grid.

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringpursuit/angles.hpp"
#include "ringpursuit/parallel.hpp"
#include "ringpursuit/scenario.hpp"
#include "ringpursuit/worst_case.hpp"

namespace ringpursuit {

enum class SweepAxis { Gamma, Rho, Rstart };

constexpr const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::Gamma: return "gamma";
        case SweepAxis::Rho: return "rho";
        case SweepAxis::Rstart: return "r";
    }
    return "?";
}

inline SweepAxis parse_sweep_axis(const std::string& s) {
    if (s == "gamma") return SweepAxis::Gamma;
    if (s == "rho") return SweepAxis::Rho;
    if (s == "r") return SweepAxis::Rstart;
    throw DomainError("vary", "must be one of gamma, rho, r (got '" + s + "')");
}

/// One (value, heading) cell. `regime` is empty when the cell failed, in
/// which case `error` says why and the numeric fields are NaN.
struct SweepRecord {
    SweepAxis axis = SweepAxis::Gamma;
    double value = 0.0;
    double heading = 0.0;
    // Evader position at the capture instant.
    Vec2 capture_point{};
    double capture_radius = 0.0;
    double theta_pf = 0.0;
    std::optional<Regime> regime;
    std::string error;

    bool ok() const { return regime.has_value(); }
};

inline ScenarioParams with_axis(const ScenarioParams& base, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::Gamma: return base.with_gamma(value);
        case SweepAxis::Rho: return base.with_rho(value);
        case SweepAxis::Rstart: return base.with_r(value);
    }
    return base;
}

/// 73 headings over [pi, 2pi]: the lower half of the disk.
inline std::vector<double> default_sweep_headings() { return heading_grid(kPi, kTwoPi, 73); }

inline std::vector<double> default_sweep_values(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Gamma: return {0.3, 0.5, 0.7};
        case SweepAxis::Rho: return {0.0, 0.1, 0.3, 0.5};
        case SweepAxis::Rstart: return {0.0, 0.1, 0.2, 0.3, 0.4};
    }
    return {};
}

/// Worst-case capture for every (value, heading) pair, value-major. A cell
/// that cannot be evaluated is recorded with its error and the sweep goes on.
inline std::vector<SweepRecord> sweep(const ScenarioParams& base, SweepAxis axis, const std::vector<double>& values,
                                      const std::vector<double>& headings, Direction dir) {
    const std::size_t nh = headings.size();
    return detail::parallel_map(values.size() * nh, [&](std::size_t i) {
        SweepRecord rec;
        rec.axis = axis;
        rec.value = values[i / nh];
        rec.heading = headings[i % nh];
        try {
            const ScenarioParams p = with_axis(base, axis, rec.value);
            const WorstCaseResult w = worst_case_start(p, rec.heading, dir);
            rec.capture_point = w.solution.capture_point;
            rec.capture_radius = w.solution.capture_point.norm();
            rec.theta_pf = w.solution.theta_pf;
            rec.regime = w.regime;
        } catch (const std::exception& e) {
            constexpr double nan = std::numeric_limits<double>::quiet_NaN();
            rec.capture_point = {nan, nan};
            rec.capture_radius = nan;
            rec.theta_pf = nan;
            rec.error = e.what();
        }
        return rec;
    });
}

struct SweepSummary {
    double value = 0.0;
    double mean_capture_radius = 0.0;
    int cells = 0;
    int failed = 0;
    std::map<Regime, int> regime_counts;

    int count(Regime r) const {
        const auto it = regime_counts.find(r);
        return it == regime_counts.end() ? 0 : it->second;
    }
};

/// Per-value statistics, in the order values first appear.
inline std::vector<SweepSummary> summarize(const std::vector<SweepRecord>& records) {
    std::vector<SweepSummary> out;
    for (const auto& rec : records) {
        if (out.empty() || out.back().value != rec.value) {
            out.emplace_back();
            out.back().value = rec.value;
        }
        SweepSummary& s = out.back();
        ++s.cells;
        if (!rec.ok()) {
            ++s.failed;
            continue;
        }
        s.mean_capture_radius += rec.capture_radius;
        ++s.regime_counts[*rec.regime];
    }
    for (auto& s : out) {
        const int good = s.cells - s.failed;
        s.mean_capture_radius = good > 0 ? s.mean_capture_radius / good : std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

}  // namespace ringpursuit
