#pragma once

#include <cmath>

namespace taxtrust {

struct GoldenResult {
    double x = 0.0;
    int evaluations = 0;
};

/// Golden-section search for the maximum of f on [a, b].
/// Shrinks the bracket to the requested width; assumes f is unimodal on the
/// interval (callers establish that with a coarse scan first).
template <class F>
GoldenResult golden_section_max(F&& f, double a, double b, double x_tol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5)-1)/2
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (b - a > x_tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return {0.5 * (a + b), evals};
}

} // namespace taxtrust
