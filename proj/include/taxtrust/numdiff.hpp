#pragma once

#include <array>
#include <cmath>

#include "taxtrust/errors.hpp"

namespace taxtrust {

/// Differentiation step rule used throughout: h = scale * max(1, |x|).
inline double fd_step(double x, double scale = 1e-5) {
    return scale * std::max(1.0, std::abs(x));
}

/// A three-point differentiation stencil on [lo, hi) around x.
/// Central where both x-h and x+h are admissible; otherwise a second-order
/// one-sided stencil pointing into the domain (the boundary case is flagged,
/// not fatal). All consumers share one stencil per evaluation point so the
/// welfare and allocation derivatives see identical abscissae.
struct Stencil {
    std::array<double, 3> points{};
    std::array<double, 3> weights{};
    int size = 0;
    bool one_sided = false;
};

inline Stencil make_stencil(double x, double h, double lo, double hi) {
    if (!(h > 0.0)) throw Error(Errc::InvalidParameter, "stencil step must be > 0");
    Stencil s;
    if (x - h >= lo && x + h < hi) {
        s.points = {x - h, x + h, 0.0};
        s.weights = {-1.0 / (2.0 * h), 1.0 / (2.0 * h), 0.0};
        s.size = 2;
    } else if (x + 2.0 * h < hi) {
        // forward: f'(x) ~ (-3 f(x) + 4 f(x+h) - f(x+2h)) / (2h)
        s.points = {x, x + h, x + 2.0 * h};
        s.weights = {-3.0 / (2.0 * h), 4.0 / (2.0 * h), -1.0 / (2.0 * h)};
        s.size = 3;
        s.one_sided = true;
    } else if (x - 2.0 * h >= lo) {
        // backward mirror
        s.points = {x, x - h, x - 2.0 * h};
        s.weights = {3.0 / (2.0 * h), -4.0 / (2.0 * h), 1.0 / (2.0 * h)};
        s.size = 3;
        s.one_sided = true;
    } else {
        throw Error(Errc::DomainError, "differentiation interval too narrow for step");
    }
    return s;
}

template <class F>
double apply_stencil(const Stencil& s, F&& f) {
    double acc = 0.0;
    for (int i = 0; i < s.size; ++i) acc += s.weights[i] * f(s.points[i]);
    return acc;
}

/// One-shot derivative of f at x over the domain [lo, hi).
template <class F>
double derivative(F&& f, double x, double h, double lo, double hi) {
    return apply_stencil(make_stencil(x, h, lo, hi), f);
}

} // namespace taxtrust
