#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "taxtrust/economy.hpp"
#include "taxtrust/equilibrium.hpp"
#include "taxtrust/numdiff.hpp"
#include "taxtrust/optimize.hpp"
#include "taxtrust/rootfind.hpp"
#include "taxtrust/statistics.hpp"

namespace taxtrust {

enum class Regime { Corner, Interior };

inline const char* regime_name(Regime r) {
    return r == Regime::Corner ? "corner" : "interior";
}

/// Trust threshold theta_bar = (MEB0/MR0) * (uC0/uG0) and its components.
struct ThresholdResult {
    double theta_bar = 0.0;
    double MEB0 = 0.0;
    double MR0 = 0.0;
    double uC0 = 0.0;
    double uG0 = 0.0;
    bool in_unit_interval = false;
};

struct PlannerSolution {
    double theta = 0.0;
    Regime regime = Regime::Corner;
    double tau_star = 0.0;
    double W_star = 0.0;
    double G_star = 0.0;
    std::optional<double> ramsey_residual; // interior optima only
    long iterations = 0;                   // welfare evaluations spent
};

struct OracleResult {
    double tau_argmax = 0.0;
    double W_max = 0.0;
};

struct BoundaryPoint {
    double theta = 0.0;
    Regime regime = Regime::Corner;
    double tau_star = 0.0;
};

inline ThresholdResult trust_threshold(const Economy& econ) {
    const Equilibrium eq0 = solve_household(econ, 0.0);
    const UtilityEval u0 = eval_utility(econ.utility, eq0.C, 0.0, eq0.L);
    if (!std::isfinite(u0.u_G) || u0.u_G == 0.0) {
        throw Error(Errc::DegenerateMarginalUtility,
                    "u_G at the no-tax allocation is " +
                        std::string(std::isfinite(u0.u_G) ? "zero" : "infinite"));
    }
    const SufficientStats s0 = sufficient_stats(econ, 0.0);
    if (!(s0.MEB > 0.0) || !(s0.MR > 0.0)) {
        throw Error(Errc::DomainError, "threshold requires MEB(0) > 0 and MR(0) > 0");
    }
    ThresholdResult out;
    out.MEB0 = s0.MEB;
    out.MR0 = s0.MR;
    out.uC0 = u0.u_C;
    out.uG0 = u0.u_G;
    out.theta_bar = (s0.MEB / s0.MR) * (u0.u_C / u0.u_G);
    out.in_unit_interval = out.theta_bar > 0.0 && out.theta_bar < 1.0;
    return out;
}

namespace detail {

// dW/dtau by the shared stencil rule (unscaled).
inline double welfare_slope(const Economy& econ, double tau, long& evals) {
    const Stencil st = make_stencil(tau, fd_step(tau), 0.0, econ.tau_max);
    double dW = 0.0;
    for (int i = 0; i < st.size; ++i) {
        dW += st.weights[i] * expected_welfare(econ, st.points[i]);
    }
    evals += st.size;
    return dW;
}

} // namespace detail

/// Regime decision and optimal tax. Corner (tau* = 0, exactly) when
/// theta <= theta_bar; otherwise a 256-point scan brackets the global maximum
/// of W on [0, tau_max), golden-section refinement shrinks the bracket to
/// 1e-10, and a final root solve on the finite-difference first-order
/// condition pins tau* well below the flat-maximum float plateau. An argmax in
/// the last scan cell means the optimum presses against tau_max, which is
/// reported as BoundaryMaximum rather than clamped.
inline PlannerSolution solve_optimal_tax(const Economy& econ) {
    ThresholdResult thr;
    try {
        thr = trust_threshold(econ);
    } catch (const Error& e) {
        if (e.code() == Errc::DegenerateMarginalUtility) {
            throw Error(Errc::ThresholdDegenerate,
                        std::string("trust threshold degenerate: ") + e.what());
        }
        throw;
    }

    PlannerSolution sol;
    sol.theta = econ.theta;
    if (econ.theta <= thr.theta_bar) {
        sol.regime = Regime::Corner;
        sol.tau_star = 0.0;
        sol.G_star = 0.0;
        sol.W_star = expected_welfare(econ, 0.0);
        sol.iterations = 1;
        return sol;
    }

    constexpr int kScanPoints = 256;
    const double cell = econ.tau_max / kScanPoints;
    long evals = 0;
    int best = 0;
    double bestW = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScanPoints; ++i) {
        const double W = expected_welfare(econ, i * cell);
        ++evals;
        if (W > bestW) { // ties break toward the smaller tau
            bestW = W;
            best = i;
        }
    }
    if (best == kScanPoints - 1) {
        throw Error(Errc::BoundaryMaximum,
                    "welfare still increasing at tau_max = " + std::to_string(econ.tau_max));
    }

    const double lo = (best == 0) ? 0.0 : (best - 1) * cell;
    const double hi = (best + 1) * cell;
    const GoldenResult golden = golden_section_max(
        [&](double t) { return expected_welfare(econ, t); }, lo, hi, 1e-10);
    evals += golden.evaluations;

    double tau_star = golden.x;
    const double slope_lo = detail::welfare_slope(econ, lo, evals);
    const double slope_hi = detail::welfare_slope(econ, hi, evals);
    if (slope_lo > 0.0 && slope_hi < 0.0) {
        tau_star = find_root(
                       [&](double t) { return detail::welfare_slope(econ, t, evals); },
                       lo, hi)
                       .x;
    }

    const Equilibrium eq = solve_household(econ, tau_star);
    const SufficientStats stats = sufficient_stats(econ, tau_star);
    sol.regime = Regime::Interior;
    sol.tau_star = tau_star;
    sol.G_star = eq.T;
    sol.W_star = expected_welfare(econ, tau_star);
    sol.ramsey_residual = std::abs(stats.MEB / stats.MR - stats.MVF);
    sol.iterations = evals + 1;
    return sol;
}

/// Exhaustive grid evaluation of expected welfare on {0, h, 2h, ...} < tau_max.
/// Verification oracle, deliberately simple; ties break toward the smaller tau.
inline OracleResult brute_force_oracle(const Economy& econ, double grid_step) {
    if (!(grid_step > 0.0) || !(grid_step <= 1e-2)) {
        throw Error(Errc::InvalidParameter, "oracle grid step must lie in (0, 1e-2]");
    }
    OracleResult out;
    out.W_max = -std::numeric_limits<double>::infinity();
    for (long i = 0;; ++i) {
        const double tau = i * grid_step;
        if (!(tau < econ.tau_max)) break;
        const double W = expected_welfare(econ, tau);
        if (W > out.W_max) {
            out.W_max = W;
            out.tau_argmax = tau;
        }
    }
    return out;
}

/// solve_optimal_tax across a trust grid, in grid order.
inline std::vector<BoundaryPoint> regime_boundary_scan(const Economy& econ,
                                                       std::span<const double> thetas) {
    std::vector<BoundaryPoint> out;
    out.reserve(thetas.size());
    for (double theta : thetas) {
        const PlannerSolution sol = solve_optimal_tax(with_theta(econ, theta));
        out.push_back({theta, sol.regime, sol.tau_star});
    }
    return out;
}

} // namespace taxtrust
