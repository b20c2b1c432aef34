#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "taxtrust/errors.hpp"

namespace taxtrust {

/// Utility families. Both share the private block ln C - phi(L) with
/// phi(L) = psi * L^(1+eta) / (1+eta); they differ in how the public good
/// enters: linearly (g*G) or with constant curvature (g * G^(1-gamma)/(1-gamma)).
enum class UtilityFamily { LogSeparable, PowerG };

/// Production families. Power: f(L) = A * L^alpha, 0 < alpha < 1.
enum class ProductionFamily { Power };

/// How the tax enters the household problem.
///  - IsoelasticNormalized: labor solves max ln f(L) - phi(L); the chosen L
///    is tax-invariant and the tax applies to total output, C = (1-tau)*Y.
///  - GeneralLaborTax: proportional tax on labor income w*L, profits rebated
///    lump-sum, labor distorted through the first-order condition.
enum class Mode { IsoelasticNormalized, GeneralLaborTax };

struct UtilitySpec {
    UtilityFamily family = UtilityFamily::LogSeparable;
    double psi = 1.0;   // disutility-of-labor scale, > 0
    double eta = 1.0;   // labor curvature, >= 0
    double g = 1.0;     // public-good weight, > 0
    double gamma = 0.0; // public-good curvature (PowerG only), in [0,1)

    bool operator==(const UtilitySpec&) const = default;
};

struct ProductionSpec {
    ProductionFamily family = ProductionFamily::Power;
    double A = 1.0;     // TFP scale, > 0
    double alpha = 0.5; // output elasticity of labor, in (0,1)

    bool operator==(const ProductionSpec&) const = default;
};

/// Immutable after build_economy(); every downstream operation is a pure
/// function of an Economy value, so concurrent use needs no synchronization.
struct Economy {
    UtilitySpec utility;
    ProductionSpec production;
    double theta = 0.5;    // trust: probability the government is honest, in (0,1)
    double tau_max = 0.99; // admissible tax rates form [0, tau_max), tau_max in (0,1]
    Mode mode = Mode::IsoelasticNormalized;

    bool operator==(const Economy&) const = default;
};

struct UtilityEval {
    double u;   // utility level
    double u_C; // marginal utility of consumption
    double u_G; // marginal utility of the public good
    double u_L; // marginal (dis)utility of labor, <= 0
};

struct ProductionEval {
    double Y;      // output f(L)
    double fprime; // marginal product f'(L); +inf sentinel at L = 0 when alpha < 1
};

namespace detail {

inline void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw Error(Errc::InvalidParameter,
                    std::string(field) + " must be finite");
    }
}

} // namespace detail

/// phi(L) = psi * L^(1+eta) / (1+eta)
inline double labor_disutility(const UtilitySpec& u, double L) {
    return u.psi * std::pow(L, 1.0 + u.eta) / (1.0 + u.eta);
}

/// phi'(L) = psi * L^eta
inline double labor_disutility_prime(const UtilitySpec& u, double L) {
    return u.psi * std::pow(L, u.eta);
}

inline UtilityEval eval_utility(const UtilitySpec& spec, double C, double G, double L) {
    if (!(C > 0.0)) {
        throw Error(Errc::DomainError, "eval_utility requires C > 0");
    }
    if (G < 0.0 || L < 0.0) {
        throw Error(Errc::DomainError, "eval_utility requires G >= 0 and L >= 0");
    }
    UtilityEval out{};
    const double phi = labor_disutility(spec, L);
    out.u_C = 1.0 / C;
    out.u_L = -labor_disutility_prime(spec, L);
    switch (spec.family) {
        case UtilityFamily::LogSeparable:
            out.u = std::log(C) - phi + spec.g * G;
            out.u_G = spec.g;
            break;
        case UtilityFamily::PowerG:
            // g * G^(1-gamma) / (1-gamma); at G = 0 with gamma > 0 the level is 0
            // and u_G is +inf (IEEE pow handles both ends).
            out.u = std::log(C) - phi +
                    spec.g * std::pow(G, 1.0 - spec.gamma) / (1.0 - spec.gamma);
            out.u_G = spec.g * std::pow(G, -spec.gamma);
            break;
    }
    return out;
}

inline ProductionEval eval_production(const ProductionSpec& spec, double L) {
    if (L < 0.0) {
        throw Error(Errc::DomainError, "eval_production requires L >= 0");
    }
    ProductionEval out{};
    out.Y = spec.A * std::pow(L, spec.alpha);
    out.fprime = (L == 0.0) ? std::numeric_limits<double>::infinity()
                            : spec.A * spec.alpha * std::pow(L, spec.alpha - 1.0);
    return out;
}

inline void validate_utility(const UtilitySpec& u) {
    detail::require_finite(u.psi, "psi");
    detail::require_finite(u.eta, "eta");
    detail::require_finite(u.g, "g");
    if (!(u.psi > 0.0)) throw Error(Errc::InvalidParameter, "psi must be > 0");
    if (!(u.eta >= 0.0)) throw Error(Errc::InvalidParameter, "eta must be >= 0");
    if (!(u.g > 0.0)) throw Error(Errc::InvalidParameter, "g must be > 0");
    if (u.family == UtilityFamily::PowerG) {
        detail::require_finite(u.gamma, "gamma");
        if (!(u.gamma >= 0.0 && u.gamma < 1.0)) {
            throw Error(Errc::InvalidParameter, "gamma must lie in [0,1)");
        }
    }
}

inline void validate_production(const ProductionSpec& p) {
    detail::require_finite(p.A, "A");
    detail::require_finite(p.alpha, "alpha");
    if (!(p.A > 0.0)) throw Error(Errc::InvalidParameter, "A must be > 0");
    if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
        throw Error(Errc::InvalidParameter, "alpha must lie in (0,1)");
    }
}

inline Economy build_economy(const UtilitySpec& utility,
                             const ProductionSpec& production,
                             double theta, double tau_max, Mode mode) {
    validate_utility(utility);
    validate_production(production);
    detail::require_finite(theta, "theta");
    detail::require_finite(tau_max, "tau_max");
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(Errc::InvalidParameter, "theta must lie in (0,1)");
    }
    if (!(tau_max > 0.0 && tau_max <= 1.0)) {
        throw Error(Errc::InvalidParameter, "tau_max must lie in (0,1]");
    }
    if (mode == Mode::IsoelasticNormalized) {
        // The normalized mode relies on ln C + g*G with unit weight so the
        // closed forms of the isoelastic module apply verbatim.
        if (utility.family != UtilityFamily::LogSeparable || utility.g != 1.0) {
            throw Error(Errc::IncompatibleMode,
                        "IsoelasticNormalized mode requires LogSeparable utility with g = 1");
        }
    }
    return Economy{utility, production, theta, tau_max, mode};
}

/// Same economy, different trust level. Revalidates theta.
inline Economy with_theta(const Economy& econ, double theta) {
    return build_economy(econ.utility, econ.production, theta, econ.tau_max, econ.mode);
}

} // namespace taxtrust
