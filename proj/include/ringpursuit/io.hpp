#pragma once

// CSV and SVG emission for trajectories, solutions, sweeps and heading sets.
// Floating values are printed with 12 significant digits.

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringpursuit/dynamics.hpp"
#include "ringpursuit/param_sweep.hpp"
#include "ringpursuit/reachability.hpp"
#include "ringpursuit/scenario.hpp"
#include "ringpursuit/worst_case.hpp"

namespace ringpursuit::io {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_number(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw CsvError("bad number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw CsvError("bad number '" + s + "'");
    } catch (const std::out_of_range&) {
        throw CsvError("number out of range '" + s + "'");
    }
}

// Reads rows after checking the header; each row must have the header's width.
inline std::vector<std::vector<std::string>> read_rows(std::istream& in, const std::string& header) {
    std::string line;
    if (!std::getline(in, line) || line != header) throw CsvError("expected header '" + header + "'");
    const std::size_t width = split_csv_line(header).size();
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != width) throw CsvError("row has " + std::to_string(fields.size()) + " fields: " + line);
        rows.push_back(std::move(fields));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Trajectories

inline constexpr const char* kTrajectoryHeader = "t,x_e,y_e,x_p,y_p,r_pe,r_pe_rate";

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << kTrajectoryHeader << '\n';
    for (const auto& s : tr.samples) {
        os << fmt(s.t) << ',' << fmt(s.evader.x) << ',' << fmt(s.evader.y) << ',' << fmt(s.pursuer.x) << ','
           << fmt(s.pursuer.y) << ',' << fmt(s.r_pe) << ',' << fmt(s.r_pe_rate) << '\n';
    }
}

/// Positions, range and range rate only; headings are not part of the file.
inline std::vector<TrajectorySample> read_trajectory_csv(std::istream& in) {
    std::vector<TrajectorySample> out;
    for (const auto& f : read_rows(in, kTrajectoryHeader)) {
        TrajectorySample s;
        s.t = parse_number(f[0]);
        s.evader.x = parse_number(f[1]);
        s.evader.y = parse_number(f[2]);
        s.pursuer.x = parse_number(f[3]);
        s.pursuer.y = parse_number(f[4]);
        s.r_pe = parse_number(f[5]);
        s.r_pe_rate = parse_number(f[6]);
        out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Single solutions (`solve`)

inline constexpr const char* kSolutionHeader =
    "kind,regime,heading_rad,direction,theta_f,theta_pf,theta_p0,t_c,cap_x,cap_y,evader_travel,travel";

struct SolutionRow {
    std::string kind;
    std::string regime;
    double heading = 0.0;
    std::string direction;
    double theta_f = 0.0;
    double theta_pf = 0.0;
    double theta_p0 = 0.0;
    double t_c = 0.0;
    Vec2 capture_point{};
    double evader_travel = 0.0;
    double travel = 0.0;
};

inline SolutionRow solution_row(const std::string& kind, const CaptureSolution& s) {
    return {kind,
            to_string(regime_of(s.kind)),
            s.psi_e,
            to_string(s.direction),
            s.theta_f,
            s.theta_pf,
            s.theta_p0,
            s.t_c,
            s.capture_point,
            s.evader_travel,
            range_behind_exit(s)};
}

inline void write_solution_csv(std::ostream& os, const std::vector<SolutionRow>& rows) {
    os << kSolutionHeader << '\n';
    for (const auto& r : rows) {
        os << r.kind << ',' << r.regime << ',' << fmt(r.heading) << ',' << r.direction << ',' << fmt(r.theta_f)
           << ',' << fmt(r.theta_pf) << ',' << fmt(r.theta_p0) << ',' << fmt(r.t_c) << ',' << fmt(r.capture_point.x)
           << ',' << fmt(r.capture_point.y) << ',' << fmt(r.evader_travel) << ',' << fmt(r.travel) << '\n';
    }
}

inline std::vector<SolutionRow> read_solution_csv(std::istream& in) {
    std::vector<SolutionRow> out;
    for (const auto& f : read_rows(in, kSolutionHeader)) {
        SolutionRow r;
        r.kind = f[0];
        r.regime = f[1];
        r.heading = parse_number(f[2]);
        r.direction = f[3];
        r.theta_f = parse_number(f[4]);
        r.theta_pf = parse_number(f[5]);
        r.theta_p0 = parse_number(f[6]);
        r.t_c = parse_number(f[7]);
        r.capture_point = {parse_number(f[8]), parse_number(f[9])};
        r.evader_travel = parse_number(f[10]);
        r.travel = parse_number(f[11]);
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parametric sweeps

inline constexpr const char* kSweepHeader = "param,value,heading_rad,cap_x,cap_y,cap_r,theta_pf,regime";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kSweepHeader << '\n';
    for (const auto& r : records) {
        os << to_string(r.axis) << ',' << fmt(r.value) << ',' << fmt(r.heading) << ',' << fmt(r.capture_point.x)
           << ',' << fmt(r.capture_point.y) << ',' << fmt(r.capture_radius) << ',' << fmt(r.theta_pf) << ','
           << (r.ok() ? to_string(*r.regime) : "Error") << '\n';
    }
}

inline Regime parse_regime(const std::string& s) {
    if (s == "EXC") return Regime::EXC;
    if (s == "TGC") return Regime::TGC;
    if (s == "TAC") return Regime::TAC;
    if (s == "Point") return Regime::Point;
    throw CsvError("unknown regime '" + s + "'");
}

inline std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
    std::vector<SweepRecord> out;
    for (const auto& f : read_rows(in, kSweepHeader)) {
        SweepRecord r;
        r.axis = parse_sweep_axis(f[0]);
        r.value = parse_number(f[1]);
        r.heading = parse_number(f[2]);
        r.capture_point = {parse_number(f[3]), parse_number(f[4])};
        r.capture_radius = parse_number(f[5]);
        r.theta_pf = parse_number(f[6]);
        if (f[7] == "Error") {
            r.error = "Error";
        } else {
            r.regime = parse_regime(f[7]);
        }
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Heading interval sets

inline constexpr const char* kIntervalHeader = "lo_rad,hi_rad,label";

inline void write_intervals_csv(std::ostream& os, const HeadingIntervalSet& set) {
    os << kIntervalHeader << '\n';
    for (const auto& iv : set.intervals) os << fmt(iv.lo) << ',' << fmt(iv.hi) << ',' << to_string(iv.label) << '\n';
}

inline HeadingIntervalSet read_intervals_csv(std::istream& in) {
    HeadingIntervalSet set;
    for (const auto& f : read_rows(in, kIntervalHeader)) {
        HeadingInterval iv;
        iv.lo = parse_number(f[0]);
        iv.hi = parse_number(f[1]);
        if (f[2] == "ESCAPE") {
            iv.label = HeadingLabel::Escape;
        } else if (f[2] == "CAPTURE") {
            iv.label = HeadingLabel::Capture;
        } else {
            throw CsvError("unknown label '" + f[2] + "'");
        }
        set.intervals.push_back(iv);
    }
    if (set.intervals.empty()) throw CsvError("no intervals");
    return set;
}

// ---------------------------------------------------------------------------
// Figures

inline constexpr const char* kEscapeColour = "#2ca02c";
inline constexpr const char* kCaptureColour = "#ff7f0e";

namespace detail {

// Maps scenario coordinates (disk of radius R) onto a square canvas, y up.
struct Canvas {
    double size = 480.0;
    double R = 1.0;

    double scale() const { return 0.45 * size / R; }
    double x(double v) const { return 0.5 * size + v * scale(); }
    double y(double v) const { return 0.5 * size - v * scale(); }
};

inline void svg_open(std::ostream& os, const Canvas& c) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << c.size << "\" height=\"" << c.size
       << "\" viewBox=\"0 0 " << c.size << ' ' << c.size << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<circle cx=\"" << fmt(c.x(0)) << "\" cy=\"" << fmt(c.y(0)) << "\" r=\"" << fmt(c.R * c.scale())
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
}

inline void svg_marker(std::ostream& os, const Canvas& c, Vec2 p, const char* colour, double radius_px) {
    os << "<rect x=\"" << fmt(c.x(p.x) - radius_px) << "\" y=\"" << fmt(c.y(p.y) - radius_px) << "\" width=\""
       << fmt(2 * radius_px) << "\" height=\"" << fmt(2 * radius_px) << "\" fill=\"" << colour << "\"/>\n";
}

}  // namespace detail

/// Fan of evader rays from its start to the ring, coloured by label, with the
/// pursuer starts marked on the ring.
inline void write_reach_svg(std::ostream& os, const ScenarioParams& p, const HeadingIntervalSet& set,
                            const std::vector<PursuerSpec>& pursuers, int rays = 360) {
    const detail::Canvas c{480.0, p.R()};
    detail::svg_open(os, c);
    const Vec2 e = p.evader_start();
    for (int k = 0; k < rays; ++k) {
        const double psi = kTwoPi * (k + 0.5) / rays;
        const Vec2 f = exit_for_heading(p, psi).point;
        const char* colour = set.label_at(psi) == HeadingLabel::Escape ? kEscapeColour : kCaptureColour;
        os << "<line x1=\"" << fmt(c.x(e.x)) << "\" y1=\"" << fmt(c.y(e.y)) << "\" x2=\"" << fmt(c.x(f.x))
           << "\" y2=\"" << fmt(c.y(f.y)) << "\" stroke=\"" << colour << "\" stroke-width=\"1\"/>\n";
    }
    detail::svg_marker(os, c, e, "#1f77b4", 4.0);
    for (const auto& pu : pursuers) {
        const Vec2 q = Vec2::polar(p.R(), pu.theta_p0);
        os << "<circle cx=\"" << fmt(c.x(q.x)) << "\" cy=\"" << fmt(c.y(q.y)) << "\" r=\"" << fmt(p.rho() * c.scale())
           << "\" fill=\"none\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n";
        detail::svg_marker(os, c, q, "#d62728", 4.0);
    }
    os << "</svg>\n";
}

/// Capture points of a sweep over the disk, one colour per swept value.
inline void write_sweep_svg(std::ostream& os, const ScenarioParams& p, const std::vector<SweepRecord>& records) {
    static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    const detail::Canvas c{480.0, p.R()};
    detail::svg_open(os, c);
    std::vector<double> values;
    for (const auto& r : records) {
        if (values.empty() || values.back() != r.value) values.push_back(r.value);
        if (!r.ok()) continue;
        const char* colour = kPalette[(values.size() - 1) % 8];
        os << "<circle cx=\"" << fmt(c.x(r.capture_point.x)) << "\" cy=\"" << fmt(c.y(r.capture_point.y))
           << "\" r=\"3\" fill=\"" << colour << "\"><title>" << to_string(r.axis) << '=' << fmt(r.value) << ' '
           << to_string(*r.regime) << "</title></circle>\n";
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << "<text x=\"8\" y=\"" << 18 + 16 * i << "\" font-size=\"12\" fill=\"" << kPalette[i % 8] << "\">"
           << (records.empty() ? "" : to_string(records.front().axis)) << " = " << fmt(values[i]) << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace ringpursuit::io
