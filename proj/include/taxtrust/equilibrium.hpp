#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "taxtrust/economy.hpp"
#include "taxtrust/errors.hpp"
#include "taxtrust/rootfind.hpp"

namespace taxtrust {

/// Private equilibrium induced by a tax rate. T = tau * B holds exactly;
/// C satisfies the mode's budget identity to solver precision.
struct Equilibrium {
    double tau = 0.0;
    double L = 0.0;  // labor
    double C = 0.0;  // private consumption, > 0
    double Y = 0.0;  // output f(L)
    double w = 0.0;  // competitive wage f'(L)
    double Pi = 0.0; // profits f(L) - w*L, rebated lump-sum
    double B = 0.0;  // tax base: w*L (GeneralLaborTax) or Y (IsoelasticNormalized)
    double T = 0.0;  // revenue tau * B
};

struct RevenuePoint {
    double tau = 0.0;
    double B = 0.0;
    double T = 0.0;
};

namespace detail {

// max_L { ln f(L) - phi(L) }: first-order condition f'(L)/f(L) = phi'(L).
// The left side decreases from +inf, the right side is non-decreasing, so the
// residual crosses zero exactly once.
inline double solve_labor_normalized(const Economy& econ) {
    const auto residual = [&](double L) {
        const ProductionEval p = eval_production(econ.production, L);
        return p.fprime / p.Y - labor_disutility_prime(econ.utility, L);
    };
    const double lo = 1e-9;
    const double hi = grow_bracket(residual, lo, 1.0);
    return find_root(residual, lo, hi).x;
}

// Household FOC with a labor-income tax: (1-tau) * w * E[u_C] + E[u_L] = 0,
// with w, Pi taken as given and G integrated out. For the separable families
// implemented here u_C and u_L do not depend on G, so the expectation is the
// marginal utility at G = 0. Equilibrium imposes w = f'(L), Pi = f(L) - w*L.
inline double solve_labor_general(const Economy& econ, double tau) {
    const auto residual = [&](double L) {
        const ProductionEval p = eval_production(econ.production, L);
        const double C = (1.0 - tau) * p.fprime * L + (p.Y - p.fprime * L);
        const UtilityEval u = eval_utility(econ.utility, C, 0.0, L);
        return (1.0 - tau) * p.fprime * u.u_C + u.u_L;
    };
    const double lo = 1e-9;
    const double hi = grow_bracket(residual, lo, 1.0);
    return find_root(residual, lo, hi).x;
}

} // namespace detail

inline Equilibrium solve_household(const Economy& econ, double tau) {
    if (!(tau >= 0.0) || !(tau < econ.tau_max) || !(tau < 1.0)) {
        throw Error(Errc::DomainError,
                    "tau must lie in [0, tau_max) with tau < 1, got " + std::to_string(tau));
    }
    Equilibrium eq;
    eq.tau = tau;
    switch (econ.mode) {
        case Mode::IsoelasticNormalized: {
            eq.L = detail::solve_labor_normalized(econ);
            const ProductionEval p = eval_production(econ.production, eq.L);
            eq.Y = p.Y;
            eq.w = p.fprime;
            eq.Pi = eq.Y - eq.w * eq.L;
            eq.B = eq.Y;
            eq.C = (1.0 - tau) * eq.Y;
            break;
        }
        case Mode::GeneralLaborTax: {
            eq.L = detail::solve_labor_general(econ, tau);
            const ProductionEval p = eval_production(econ.production, eq.L);
            eq.Y = p.Y;
            eq.w = p.fprime;
            eq.Pi = eq.Y - eq.w * eq.L;
            eq.B = eq.w * eq.L;
            eq.C = (1.0 - tau) * eq.w * eq.L + eq.Pi;
            break;
        }
    }
    eq.T = tau * eq.B;
    if (!(eq.C > 0.0)) {
        throw Error(Errc::DegenerateAllocation, "equilibrium consumption is non-positive");
    }
    return eq;
}

/// Batched solve over an ordered tax grid; failures carry the offending tau.
inline std::vector<RevenuePoint> revenue_curve(const Economy& econ,
                                               std::span<const double> taus) {
    std::vector<RevenuePoint> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        try {
            const Equilibrium eq = solve_household(econ, tau);
            out.push_back({tau, eq.B, eq.T});
        } catch (const Error& e) {
            throw Error(e.code(),
                        "revenue_curve at tau=" + std::to_string(tau) + ": " + e.what());
        }
    }
    return out;
}

} // namespace taxtrust
