#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

namespace ringpursuit {

/// Bracket produced by bisect(); `lo` keeps the false side, `hi` the true side.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    int iterations = 0;
    bool converged = false;

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return std::abs(hi - lo); }
};

/// Bisection on a boolean predicate that is false at `lo` and true at `hi`.
/// Works for either ordering of lo/hi. Stops once the bracket is narrower
/// than `tol` or after `max_iter` halvings.
template <class Pred>
Bracket bisect(Pred&& is_hi_side, double lo, double hi, double tol, int max_iter) {
    Bracket b{lo, hi, 0, false};
    while (b.iterations < max_iter) {
        if (b.width() <= tol) {
            b.converged = true;
            return b;
        }
        const double m = b.mid();
        if (m == b.lo || m == b.hi) {  // no representable midpoint left
            b.converged = true;
            return b;
        }
        if (is_hi_side(m)) {
            b.hi = m;
        } else {
            b.lo = m;
        }
        ++b.iterations;
    }
    b.converged = b.width() <= tol;
    return b;
}

struct Minimum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section minimisation of a unimodal function on [lo, hi].
template <class F>
Minimum golden_section_min(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < max_iter && (hi - lo) > tol; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? Minimum{x1, f1} : Minimum{x2, f2};
}

template <std::size_t N>
using StateVector = std::array<double, N>;

/// One classical fourth-order Runge-Kutta step of y' = f(t, y).
template <std::size_t N, class F>
StateVector<N> rk4_step(F&& f, double t, const StateVector<N>& y, double h) {
    auto axpy = [](const StateVector<N>& base, const StateVector<N>& k, double s) {
        StateVector<N> out{};
        for (std::size_t i = 0; i < N; ++i) out[i] = base[i] + s * k[i];
        return out;
    };
    const StateVector<N> k1 = f(t, y);
    const StateVector<N> k2 = f(t + 0.5 * h, axpy(y, k1, 0.5 * h));
    const StateVector<N> k3 = f(t + 0.5 * h, axpy(y, k2, 0.5 * h));
    const StateVector<N> k4 = f(t + h, axpy(y, k3, h));
    StateVector<N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

}  // namespace ringpursuit
