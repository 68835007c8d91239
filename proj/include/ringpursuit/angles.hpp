#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringpursuit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Orbit direction of a ring pursuer. The underlying value is the sign of
/// the polar-angle rate: CW strictly decreases the angle.
enum class Direction : int { CW = -1, CCW = 1 };

constexpr double sign(Direction d) { return static_cast<double>(static_cast<int>(d)); }
constexpr Direction reversed(Direction d) { return d == Direction::CW ? Direction::CCW : Direction::CW; }
constexpr const char* to_string(Direction d) { return d == Direction::CW ? "cw" : "ccw"; }

/// Wraps an angle into [0, 2pi).
inline double normalize_angle(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("normalize_angle: non-finite angle");
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    // fmod of a tiny negative value can round back up to exactly 2pi.
    if (y >= kTwoPi) y = 0.0;
    return y;
}

/// Angle traversed when moving from `from` to `to` in `direction`, in [0, 2pi).
inline double signed_arc(double from, double to, Direction direction) {
    return normalize_angle(sign(direction) * (to - from));
}

/// Representative of `x` (mod 2pi) closest to `reference`.
inline double unwrap_near(double x, double reference) {
    return reference + std::remainder(x - reference, kTwoPi);
}

}  // namespace ringpursuit
