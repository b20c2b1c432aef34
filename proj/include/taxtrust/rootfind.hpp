#pragma once

#include <cmath>
#include <utility>

#include "taxtrust/errors.hpp"

namespace taxtrust {

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct RootOptions {
    double f_tol = 1e-12;  // absolute tolerance on the residual
    double x_tol = 1e-15;  // relative bracket-width floor
    int max_iter = 200;
};

/// Bracketed root finding: bisection interleaved with secant steps.
/// Requires f(lo) and f(hi) of opposite sign. Derivative-free and fully
/// deterministic, so repeated calls are bitwise identical.
template <class F>
RootResult find_root(F&& f, double lo, double hi, RootOptions opts = {}) {
    double fa = f(lo);
    double fb = f(hi);
    if (fa == 0.0) return {lo, 0.0, 0};
    if (fb == 0.0) return {hi, 0.0, 0};
    if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0) == (fb > 0.0)) {
        throw Error(Errc::NoConvergence, "find_root: endpoints do not bracket a root");
    }

    double a = lo, b = hi;
    for (int it = 1; it <= opts.max_iter; ++it) {
        double x;
        if (it % 2 == 1 && fb != fa) {
            // secant estimate, kept strictly interior; otherwise bisect
            x = b - fb * (b - a) / (fb - fa);
            const double margin = 1e-3 * (b - a);
            if (!std::isfinite(x) || x <= a + margin || x >= b - margin) {
                x = 0.5 * (a + b);
            }
        } else {
            x = 0.5 * (a + b);
        }
        const double fx = f(x);
        if (std::abs(fx) <= opts.f_tol) {
            return {x, fx, it};
        }
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        const double width_floor = opts.x_tol * std::max(1.0, std::abs(b));
        if (b - a <= width_floor) {
            // Bracket at machine resolution; the root is located even if the
            // residual scale keeps |f| above f_tol.
            const double mid = 0.5 * (a + b);
            return {mid, f(mid), it};
        }
    }
    throw Error(Errc::NoConvergence, "find_root: iteration cap reached");
}

/// Grows hi geometrically from `start` until f changes sign against f(lo).
/// Returns the bracketing upper end.
template <class F>
double grow_bracket(F&& f, double lo, double start, int max_doublings = 120) {
    const double flo = f(lo);
    double hi = start;
    for (int i = 0; i < max_doublings; ++i) {
        const double fhi = f(hi);
        if (!std::isnan(fhi) && (fhi > 0.0) != (flo > 0.0)) return hi;
        if (fhi == 0.0) return hi;
        hi *= 2.0;
    }
    throw Error(Errc::NoConvergence, "grow_bracket: no sign change found");
}

} // namespace taxtrust
