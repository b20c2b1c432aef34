#pragma once

#include <algorithm>
#include <cmath>

#include "taxtrust/equilibrium.hpp"
#include "taxtrust/planner.hpp"
#include "taxtrust/statistics.hpp"

namespace taxtrust {

/// Closed forms for the normalized log/linear specification:
/// theta_bar = 1/Y*, tau* = 1 - 1/(theta Y*), G* = Y* - 1/theta above the
/// threshold, corner below. theta is a probability and stays inside (0,1).
struct IsoClosedForm {
    double Y_star = 0.0;
    double theta = 0.0;
    double theta_bar = 0.0;
    double tau_star = 0.0;
    double G_star = 0.0;

    bool interior() const { return tau_star > 0.0; }
};

/// Report of the closed form vs the numerical pipeline. All three entries are
/// max absolute discrepancies between two independently computed routes.
struct IsoCrosscheck {
    double Y_star = 0.0;
    double threshold_discrepancy = 0.0;
    double tau_star_discrepancy = 0.0;
    double derivative_discrepancy = 0.0;

    double worst() const {
        return std::max({threshold_discrepancy, tau_star_discrepancy,
                         derivative_discrepancy});
    }
};

inline double iso_threshold(double Y_star) {
    if (!(Y_star > 0.0) || !std::isfinite(Y_star)) {
        throw Error(Errc::DomainError, "iso_threshold requires Y_star > 0");
    }
    return 1.0 / Y_star;
}

inline IsoClosedForm iso_solution(double Y_star, double theta) {
    if (!(Y_star > 0.0) || !std::isfinite(Y_star)) {
        throw Error(Errc::DomainError, "iso_solution requires Y_star > 0");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(Errc::DomainError, "iso_solution requires theta in (0,1)");
    }
    IsoClosedForm out;
    out.Y_star = Y_star;
    out.theta = theta;
    out.theta_bar = 1.0 / Y_star;
    if (theta > out.theta_bar) {
        out.tau_star = 1.0 - 1.0 / (theta * Y_star);
        out.G_star = Y_star - 1.0 / theta;
    } else {
        out.tau_star = 0.0;
        out.G_star = 0.0;
    }
    return out;
}

/// Compares the closed forms against the numerical pipeline:
///  (a) 1/Y* vs trust_threshold,
///  (b) closed-form tau* vs solve_optimal_tax,
///  (c) -1/(1-tau) + theta*Y* vs dW_scaled * ubar_C on a tau grid.
/// The derivative grid stays at or below 0.75*tau_max, where the central
/// difference truncation error is comfortably under the 1e-8 reporting scale.
inline IsoCrosscheck iso_crosscheck(const Economy& econ) {
    if (econ.mode != Mode::IsoelasticNormalized) {
        throw Error(Errc::ModeMismatch, "iso_crosscheck requires IsoelasticNormalized mode");
    }
    IsoCrosscheck out;
    const Equilibrium eq0 = solve_household(econ, 0.0);
    out.Y_star = eq0.Y;

    const ThresholdResult thr = trust_threshold(econ);
    out.threshold_discrepancy = std::abs(iso_threshold(out.Y_star) - thr.theta_bar);

    const IsoClosedForm closed = iso_solution(out.Y_star, econ.theta);
    const PlannerSolution numeric = solve_optimal_tax(econ);
    out.tau_star_discrepancy = std::abs(closed.tau_star - numeric.tau_star);

    constexpr int kGridPoints = 16;
    const double grid_top = 0.75 * econ.tau_max;
    for (int i = 0; i < kGridPoints; ++i) {
        const double tau = grid_top * i / (kGridPoints - 1);
        const SufficientStats s = sufficient_stats(econ, tau);
        const double numeric_slope = s.dW_scaled * s.ubar_C;
        const double closed_slope = -1.0 / (1.0 - tau) + econ.theta * out.Y_star;
        out.derivative_discrepancy =
            std::max(out.derivative_discrepancy, std::abs(numeric_slope - closed_slope));
    }
    return out;
}

} // namespace taxtrust
