#pragma once

// Shared domain types for the ring-pursuit scenario.
//
// The containment disk is centred at the origin with radius R. The evader
// starts at (r, 0) and runs a straight line at unit speed; a pursuer rides the
// boundary circle at speed gamma. Use CanonicalFrame to bring a scenario with
// an arbitrary evader start into this frame and back.

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "ringpursuit/angles.hpp"

namespace ringpursuit {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double angle() const { return std::atan2(y, x); }

    static Vec2 polar(double radius, double angle) {
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }
};

/// Validation failure on a user-facing value; `key()` names the field.
class DomainError : public std::invalid_argument {
  public:
    DomainError(std::string key, const std::string& constraint)
        : std::invalid_argument(key + ": " + constraint), key_(std::move(key)) {}

    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

namespace detail {
inline std::string describe(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}
}  // namespace detail

struct ToleranceConfig {
    double angle_tol = 1e-10;
    double range_tol = 1e-9;
    // Upper bound on the simulator step; see effective_time_step().
    double time_step = 0.01;
    int max_bisection_iters = 200;

    void validate() const {
        auto positive = [](const char* key, double v) {
            if (!(std::isfinite(v) && v > 0.0)) {
                throw DomainError(key, "must be finite and > 0 (got " + detail::describe(v) + ")");
            }
        };
        positive("angle_tol", angle_tol);
        positive("range_tol", range_tol);
        positive("time_step", time_step);
        if (max_bisection_iters < 1) {
            throw DomainError("max_bisection_iters",
                              "must be >= 1 (got " + std::to_string(max_bisection_iters) + ")");
        }
    }
};

/// Disk radius, capture radius, speed ratio and evader offset. Always valid:
/// the constructor rejects out-of-range fields with a DomainError.
class ScenarioParams {
  public:
    ScenarioParams(double R, double rho, double gamma, double r, ToleranceConfig tol = {})
        : R_(R), rho_(rho), gamma_(gamma), r_(r), tol_(tol) {
        check("R", std::isfinite(R) && R > 0.0, "must satisfy R > 0", R);
        check("rho", std::isfinite(rho) && rho >= 0.0 && rho < 2.0 * R,
              "must satisfy 0 <= rho < 2R", rho);
        check("gamma", std::isfinite(gamma) && gamma > 0.0 && gamma < 1.0,
              "must satisfy 0 < gamma < 1 (evader must be faster)", gamma);
        check("r", std::isfinite(r) && r >= 0.0 && r < R, "must satisfy 0 <= r < R", r);
        tol_.validate();
    }

    double R() const { return R_; }
    double rho() const { return rho_; }
    double gamma() const { return gamma_; }
    double r() const { return r_; }
    const ToleranceConfig& tol() const { return tol_; }

    double v_e() const { return 1.0; }
    double v_p() const { return gamma_; }
    Vec2 evader_start() const { return {r_, 0.0}; }

    ScenarioParams with_rho(double v) const { return {R_, v, gamma_, r_, tol_}; }
    ScenarioParams with_gamma(double v) const { return {R_, rho_, v, r_, tol_}; }
    ScenarioParams with_r(double v) const { return {R_, rho_, gamma_, v, tol_}; }
    ScenarioParams with_tol(const ToleranceConfig& t) const { return {R_, rho_, gamma_, r_, t}; }

    bool operator==(const ScenarioParams& o) const {
        return R_ == o.R_ && rho_ == o.rho_ && gamma_ == o.gamma_ && r_ == o.r_;
    }

  private:
    static void check(const char* key, bool ok, const char* constraint, double v) {
        if (!ok) throw DomainError(key, std::string(constraint) + " (got " + detail::describe(v) + ")");
    }

    double R_;
    double rho_;
    double gamma_;
    double r_;
    ToleranceConfig tol_;
};

enum class DirectionPolicy { Fixed, Favorable };

struct PursuerSpec {
    double theta_p0 = 0.0;
    Direction direction = Direction::CW;
    DirectionPolicy policy = DirectionPolicy::Fixed;

    void validate() const {
        if (!std::isfinite(theta_p0)) throw DomainError("theta_p0", "must be finite");
        if (direction != Direction::CW && direction != Direction::CCW) {
            throw DomainError("direction", "must be cw or ccw");
        }
    }
};

/// Constant evader heading. Exit point and exit distance are derived with
/// exit_for_heading() in capture_geometry.hpp.
struct EvaderIntent {
    double psi_e = 0.0;
};

enum class CaptureKind { Point, ExitPoint, Tangent, TouchAndGo };

constexpr const char* to_string(CaptureKind k) {
    switch (k) {
        case CaptureKind::Point: return "Point";
        case CaptureKind::ExitPoint: return "EXC";
        case CaptureKind::Tangent: return "TAC";
        case CaptureKind::TouchAndGo: return "TGC";
    }
    return "?";
}

/// A capture configuration for one heading and orbit direction.
///
/// Angles are unwrapped: theta_f is in [0, 2pi) and theta_pf / theta_p0 are
/// expressed relative to it without wrapping, so `direction * (theta_pf -
/// theta_p0)` is the pursuer's travel and never negative.
struct CaptureSolution {
    CaptureKind kind = CaptureKind::Point;
    Direction direction = Direction::CW;
    double psi_e = 0.0;
    double theta_f = 0.0;
    double theta_pf = 0.0;
    double theta_p0 = 0.0;
    double t_c = 0.0;
    Vec2 capture_point{};
    double evader_travel = 0.0;
    // Chord between pursuer final point and exit point, and its ring angle.
    // Only meaningful for ExitPoint and Tangent.
    double chord = 0.0;
    double offset = 0.0;

    double pursuer_arc() const { return sign(direction) * (theta_pf - theta_p0); }
};

enum class SolveFailure { NoTangency, NoBracket, NoConvergence, PreemptedContact };

constexpr const char* to_string(SolveFailure f) {
    switch (f) {
        case SolveFailure::NoTangency: return "NoTangency";
        case SolveFailure::NoBracket: return "NoBracket";
        case SolveFailure::NoConvergence: return "NoConvergence";
        case SolveFailure::PreemptedContact: return "PreemptedContact";
    }
    return "?";
}

/// Either a value or the reason a configuration does not exist.
template <class T>
class SolveOutcome {
  public:
    SolveOutcome(T value) : v_(std::move(value)) {}
    SolveOutcome(SolveFailure f) : v_(f) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    const T& value() const {
        if (!ok()) throw std::logic_error(std::string("no value: ") + to_string(failure()));
        return std::get<T>(v_);
    }
    const T& operator*() const { return value(); }
    const T* operator->() const { return &value(); }
    SolveFailure failure() const { return std::get<SolveFailure>(v_); }

  private:
    std::variant<T, SolveFailure> v_;
};

/// Rotation that carries a general evader start onto the positive x axis.
class CanonicalFrame {
  public:
    explicit CanonicalFrame(Vec2 evader_start)
        : rotation_(evader_start.norm() > 0.0 ? evader_start.angle() : 0.0),
          offset_(evader_start.norm()) {}

    double evader_offset() const { return offset_; }
    double rotation() const { return rotation_; }

    double to_canonical_angle(double world) const { return world - rotation_; }
    double to_world_angle(double canonical) const { return canonical + rotation_; }

    Vec2 to_world_point(Vec2 p) const {
        const double c = std::cos(rotation_);
        const double s = std::sin(rotation_);
        return {c * p.x - s * p.y, s * p.x + c * p.y};
    }

    PursuerSpec to_canonical(PursuerSpec p) const {
        p.theta_p0 = to_canonical_angle(p.theta_p0);
        return p;
    }

  private:
    double rotation_;
    double offset_;
};

}  // namespace ringpursuit
