#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "taxtrust/isoelastic.hpp"
#include "taxtrust/planner.hpp"
#include "testutil.hpp"

using namespace taxtrust;
using Catch::Matchers::WithinAbs;

TEST_CASE("trust threshold: worked values") {
    SECTION("Y* = 2 gives theta_bar = 1/2 with the stated components") {
        const ThresholdResult t = trust_threshold(testutil::iso_economy(2.0, 0.8));
        CHECK_THAT(t.theta_bar, WithinAbs(0.5, 1e-9));
        CHECK_THAT(t.MEB0, WithinAbs(2.0, 1e-8));
        CHECK_THAT(t.MR0, WithinAbs(2.0, 1e-8));
        CHECK_THAT(t.uC0, WithinAbs(0.5, 1e-10));
        CHECK(t.uG0 == 1.0);
        CHECK(t.in_unit_interval);
    }
    SECTION("Y* = sqrt(2)") {
        const ThresholdResult t = trust_threshold(testutil::iso_sqrt2_economy(0.8));
        CHECK_THAT(t.theta_bar, WithinAbs(1.0 / std::sqrt(2.0), 1e-9));
    }
    SECTION("doubling g halves theta_bar, all else equal") {
        const ThresholdResult g1 = trust_threshold(testutil::general_economy(0.3, 2.0, 1.0));
        const ThresholdResult g2 = trust_threshold(testutil::general_economy(0.3, 2.0, 2.0));
        CHECK(g2.theta_bar == g1.theta_bar / 2.0);
    }
    SECTION("PowerG with gamma > 0 degenerates") {
        UtilitySpec u;
        u.family = UtilityFamily::PowerG;
        u.gamma = 0.5;
        ProductionSpec p;
        p.A = 2.0;
        p.alpha = 0.5;
        const Economy econ = build_economy(u, p, 0.8, 0.99, Mode::GeneralLaborTax);
        try {
            trust_threshold(econ);
            FAIL("expected DegenerateMarginalUtility");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::DegenerateMarginalUtility);
        }
        try {
            solve_optimal_tax(econ);
            FAIL("expected ThresholdDegenerate");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::ThresholdDegenerate);
        }
    }
}

TEST_CASE("planner regimes") {
    SECTION("theta exactly at the computed threshold is a corner") {
        Economy econ = testutil::iso_economy(2.0, 0.8);
        const double theta_bar = trust_threshold(econ).theta_bar;
        const PlannerSolution sol = solve_optimal_tax(with_theta(econ, theta_bar));
        CHECK(sol.regime == Regime::Corner);
        CHECK(sol.tau_star == 0.0);
        CHECK(sol.G_star == 0.0);
        CHECK_FALSE(sol.ramsey_residual.has_value());
    }
    SECTION("corner is exact, not merely small") {
        for (double theta : {0.1, 0.3, 0.4999}) {
            const PlannerSolution sol = solve_optimal_tax(testutil::iso_economy(2.0, theta));
            CHECK(sol.regime == Regime::Corner);
            CHECK(sol.tau_star == 0.0);
            CHECK(sol.W_star == expected_welfare(testutil::iso_economy(2.0, theta), 0.0));
        }
    }
    SECTION("interior optimum near theta = 1 hits the closed form") {
        const Economy econ = testutil::iso_economy(2.0, 1.0 - 1e-12);
        const PlannerSolution sol = solve_optimal_tax(econ);
        CHECK(sol.regime == Regime::Interior);
        CHECK_THAT(sol.tau_star, WithinAbs(0.5, 1e-9));
        CHECK_THAT(sol.G_star, WithinAbs(1.0, 1e-8));
        REQUIRE(sol.ramsey_residual.has_value());
        CHECK(*sol.ramsey_residual <= 1e-6);
    }
    SECTION("interior optimum for the sqrt(2) example") {
        const Economy econ = testutil::iso_sqrt2_economy(0.9);
        const PlannerSolution sol = solve_optimal_tax(econ);
        const double sqrt2 = std::sqrt(2.0);
        CHECK(sol.regime == Regime::Interior);
        CHECK_THAT(sol.tau_star, WithinAbs(1.0 - 1.0 / (0.9 * sqrt2), 1e-8));
        CHECK_THAT(sol.G_star, WithinAbs(sqrt2 - 1.0 / 0.9, 1e-8));
        // independent route: exhaustive grid search
        const OracleResult oracle = brute_force_oracle(econ, 1e-3);
        CHECK(std::abs(sol.tau_star - oracle.tau_argmax) <= 1e-3);
    }
    SECTION("boundary maximum is an error, not a clamp") {
        const Economy econ = testutil::iso_economy(5.0, 0.95, 0.2);
        // closed form wants tau* ~ 0.789, far beyond tau_max = 0.2
        try {
            solve_optimal_tax(econ);
            FAIL("expected BoundaryMaximum");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::BoundaryMaximum);
        }
    }
}

TEST_CASE("brute-force oracle") {
    SECTION("locates the closed-form optimum") {
        const Economy econ = testutil::iso_economy(2.0, 1.0 - 1e-12);
        const OracleResult r = brute_force_oracle(econ, 1e-4);
        CHECK(std::abs(r.tau_argmax - 0.5) <= 1e-4);
    }
    SECTION("low trust pins the argmax at zero") {
        const OracleResult r = brute_force_oracle(testutil::iso_economy(2.0, 0.1), 1e-3);
        CHECK(r.tau_argmax == 0.0);
    }
    SECTION("step validation") {
        const Economy econ = testutil::iso_economy(2.0, 0.8);
        CHECK_THROWS_AS(brute_force_oracle(econ, 0.02), Error);
        CHECK_THROWS_AS(brute_force_oracle(econ, 0.0), Error);
        CHECK_THROWS_AS(brute_force_oracle(econ, -1e-4), Error);
    }
}

TEST_CASE("planner agrees with the oracle across economies") {
    testutil::QuasiRandom3 q;
    const double h = 1e-3;
    for (int i = 0; i < 6; ++i) {
        q.next();
        const double Y = testutil::lerp(1.3, 5.0, q.x);
        const double theta = testutil::lerp(0.05, 0.95, q.y);
        const Economy econ = testutil::iso_economy(Y, theta);
        PlannerSolution sol;
        try {
            sol = solve_optimal_tax(econ);
        } catch (const Error& e) {
            REQUIRE(e.code() == Errc::BoundaryMaximum);
            continue;
        }
        const OracleResult oracle = brute_force_oracle(econ, h);
        CHECK(std::abs(sol.tau_star - oracle.tau_argmax) <= h);
        // grid-resolution certificate of global optimality
        CHECK(sol.W_star + 5e-15 * std::max(1.0, std::abs(sol.W_star)) >= oracle.W_max);
    }
    for (int i = 0; i < 4; ++i) {
        q.next();
        const double A = testutil::lerp(1.5, 4.0, q.x);
        const double theta = testutil::lerp(0.3, 0.95, q.y);
        const Economy econ = testutil::general_economy(theta, A);
        const PlannerSolution sol = solve_optimal_tax(econ);
        const OracleResult oracle = brute_force_oracle(econ, h);
        CHECK(std::abs(sol.tau_star - oracle.tau_argmax) <= h);
        CHECK(sol.W_star + 5e-15 * std::max(1.0, std::abs(sol.W_star)) >= oracle.W_max);
    }
}

TEST_CASE("interior optima satisfy the Ramsey rule") {
    testutil::QuasiRandom3 q;
    for (int i = 0; i < 8; ++i) {
        q.next();
        const double A = testutil::lerp(1.5, 4.0, q.x);
        const double theta = testutil::lerp(0.65, 0.97, q.y);
        const PlannerSolution sol = solve_optimal_tax(testutil::general_economy(theta, A));
        if (sol.regime == Regime::Interior) {
            REQUIRE(sol.ramsey_residual.has_value());
            CHECK(*sol.ramsey_residual <= 1e-6);
        }
    }
}

TEST_CASE("sign of the origin slope matches theta vs theta_bar") {
    testutil::QuasiRandom3 q;
    int checked = 0;
    for (int i = 0; i < 80 && checked < 50; ++i) {
        q.next();
        const Economy base = (i % 2 == 0)
                                 ? testutil::iso_economy(testutil::lerp(1.2, 6.0, q.x), 0.5)
                                 : testutil::general_economy(0.5, testutil::lerp(1.5, 4.0, q.x),
                                                             testutil::lerp(1.0, 3.0, q.z));
        const ThresholdResult thr = trust_threshold(base);
        const double theta = testutil::lerp(0.02, 0.98, q.y);
        if (std::abs(theta - thr.theta_bar) < 1e-6) continue;
        const Economy econ = with_theta(base, theta);
        const double slope = sufficient_stats(econ, 0.0).dW_scaled;
        if (theta > thr.theta_bar) {
            CHECK(slope > 0.0);
        } else {
            CHECK(slope < 0.0);
        }
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("regime boundary scan brackets the threshold") {
    const Economy econ = testutil::iso_economy(2.0, 0.8);
    std::vector<double> thetas;
    for (int i = 40; i <= 60; ++i) thetas.push_back(i / 100.0);
    const auto rows = regime_boundary_scan(econ, thetas);
    REQUIRE(rows.size() == thetas.size());

    size_t first_interior = rows.size();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].regime == Regime::Interior) {
            first_interior = i;
            break;
        }
    }
    REQUIRE(first_interior < rows.size());
    REQUIRE(first_interior > 0);
    // the switch must straddle theta_bar = 0.5 within one grid cell
    CHECK(rows[first_interior - 1].theta <= 0.5 + 1e-9);
    CHECK(rows[first_interior].theta >= 0.5 - 1e-9);
    CHECK(rows[first_interior].theta - rows[first_interior - 1].theta <= 0.01 + 1e-12);

    // tau*(theta) is non-decreasing past the switch, with concave shape
    std::vector<double> taus;
    for (size_t i = first_interior; i < rows.size(); ++i) taus.push_back(rows[i].tau_star);
    for (size_t i = 1; i < taus.size(); ++i) CHECK(taus[i] >= taus[i - 1]);
    for (size_t i = 2; i < taus.size(); ++i) {
        const double second = (taus[i] - taus[i - 1]) - (taus[i - 1] - taus[i - 2]);
        CHECK(second <= 1e-9);
    }
}
