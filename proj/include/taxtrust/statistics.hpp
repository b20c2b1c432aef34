#pragma once

#include <array>
#include <cmath>
#include <span>

#include "taxtrust/economy.hpp"
#include "taxtrust/equilibrium.hpp"
#include "taxtrust/numdiff.hpp"

namespace taxtrust {

/// The three sufficient statistics plus the welfare-derivative decomposition
/// at an evaluation point. MEB and MVF are normalized by the expected marginal
/// utility of consumption ubar_C = theta*uC_honest + (1-theta)*uC_opp, which
/// makes the identity dW_scaled = -MEB + MVF*MR hold by construction at every
/// tau (for the separable families ubar_C coincides with either branch).
struct SufficientStats {
    double tau = 0.0;
    double MR = 0.0;        // marginal revenue T'(tau)
    double MEB = 0.0;       // marginal excess burden, consumption units
    double MVF = 0.0;       // trust-adjusted marginal value of public funds
    double dW_scaled = 0.0; // (1/ubar_C) * dW/dtau
    double uC_honest = 0.0, uG_honest = 0.0, uL_honest = 0.0;
    double uC_opp = 0.0, uL_opp = 0.0;
    double ubar_C = 0.0;
    bool one_sided = false; // step underflow at a boundary; one-sided stencil used
};

inline double expected_welfare(const Economy& econ, double tau) {
    const Equilibrium eq = solve_household(econ, tau);
    const double honest = eval_utility(econ.utility, eq.C, eq.T, eq.L).u;
    const double opportunistic = eval_utility(econ.utility, eq.C, 0.0, eq.L).u;
    return econ.theta * honest + (1.0 - econ.theta) * opportunistic;
}

inline SufficientStats sufficient_stats(const Economy& econ, double tau,
                                        double step_scale = 1e-5) {
    if (!(tau >= 0.0) || !(tau < econ.tau_max)) {
        throw Error(Errc::DomainError, "sufficient_stats requires 0 <= tau < tau_max");
    }
    const double h = fd_step(tau, step_scale);
    const Stencil st = make_stencil(tau, h, 0.0, econ.tau_max);

    // Evaluate the equilibrium map once per stencil point; every derivative
    // below shares these abscissae, which keeps the decomposition residual at
    // the level of the truncation error rather than of solver noise.
    std::array<Equilibrium, 3> eqs{};
    std::array<double, 3> W{};
    for (int i = 0; i < st.size; ++i) {
        eqs[i] = solve_household(econ, st.points[i]);
        const double honest = eval_utility(econ.utility, eqs[i].C, eqs[i].T, eqs[i].L).u;
        const double opp = eval_utility(econ.utility, eqs[i].C, 0.0, eqs[i].L).u;
        W[i] = econ.theta * honest + (1.0 - econ.theta) * opp;
    }
    double Tprime = 0.0, Cprime = 0.0, Lprime = 0.0, dW = 0.0;
    for (int i = 0; i < st.size; ++i) {
        Tprime += st.weights[i] * eqs[i].T;
        Cprime += st.weights[i] * eqs[i].C;
        Lprime += st.weights[i] * eqs[i].L;
        dW += st.weights[i] * W[i];
    }

    const Equilibrium eq = solve_household(econ, tau);
    const UtilityEval honest = eval_utility(econ.utility, eq.C, eq.T, eq.L);
    const UtilityEval opp = eval_utility(econ.utility, eq.C, 0.0, eq.L);

    SufficientStats s;
    s.tau = tau;
    s.one_sided = st.one_sided;
    s.uC_honest = honest.u_C;
    s.uG_honest = honest.u_G;
    s.uL_honest = honest.u_L;
    s.uC_opp = opp.u_C;
    s.uL_opp = opp.u_L;
    s.ubar_C = econ.theta * honest.u_C + (1.0 - econ.theta) * opp.u_C;
    s.MR = Tprime;
    const double private_effect =
        econ.theta * (honest.u_C * Cprime + honest.u_L * Lprime) +
        (1.0 - econ.theta) * (opp.u_C * Cprime + opp.u_L * Lprime);
    s.MEB = -private_effect / s.ubar_C;
    s.MVF = econ.theta * honest.u_G / s.ubar_C;
    s.dW_scaled = dW / s.ubar_C;
    return s;
}

/// Max over the grid of |dW_scaled - (-MEB + MVF*MR)|.
inline double check_decomposition(const Economy& econ, std::span<const double> taus,
                                  double step_scale = 1e-5) {
    double worst = 0.0;
    for (double tau : taus) {
        const SufficientStats s = sufficient_stats(econ, tau, step_scale);
        const double residual = std::abs(s.dW_scaled - (-s.MEB + s.MVF * s.MR));
        worst = std::max(worst, residual);
    }
    return worst;
}

} // namespace taxtrust
