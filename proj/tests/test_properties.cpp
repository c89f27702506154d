#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// Randomized invariants over wide parameter ranges.

#include <cmath>

#include "otto/analytic.hpp"
#include "otto/continuous.hpp"
#include "otto/discrete.hpp"
#include "otto/mapping.hpp"
#include "otto/rng.hpp"
#include "otto/verify.hpp"

using namespace otto;

namespace {

BathParams random_bath(Rng& rng) {
    return BathParams::from_damping(rng.uniform(0, 4), rng.uniform(0.05, 3), rng.log_uniform(-2, 2));
}

}  // namespace

TEST_CASE("discrete first law, heat oracles and Clausius over 10^4 thermal samples") {
    Rng rng(101);
    double worst_first = 0, worst_route = 0, worst_clausius = 0, worst_cat = 0;
    for (int i = 0; i < 10000; ++i) {
        BathParams h = random_bath(rng), c = random_bath(rng);
        EngineSpec s = (i % 2) ? otto_spec(h, c, 1.0) : qubit_catalyst_spec(h, c, 1.0);
        CatalystState cat = solve_catalyst(s);
        CycleReport r = run_cycle(s, cat);
        double scale = std::max({1.0, h.omega, c.omega});
        worst_first = std::max(worst_first, std::abs(r.work - r.q_hot - r.q_cold) / scale);
        worst_route = std::max(worst_route, r.heat_route_gap / scale);
        worst_clausius = std::max(worst_clausius, -clausius_check(r, h.beta, c.beta));
        worst_cat = std::max(worst_cat, r.catalyst_residual);
        if (s.catalyst_dim == 2) {
            // Every catalyst projector sees zero net flow.
            HilbertLayout L = s.layout();
            for (int m = 0; m < 2; ++m) {
                double sum = 0;
                for (std::size_t k = 0; k < s.swaps.size(); ++k)
                    sum += ((L.digits(s.swaps[k].u)[0] == m) - (L.digits(s.swaps[k].d)[0] == m)) * r.delta_p[k];
                CHECK(std::abs(sum) <= 1e-12);
            }
            CHECK(std::abs(r.delta_p[0] - r.delta_p[1]) <= 1e-12);
        }
    }
    CHECK(worst_first <= 1e-12);
    CHECK(worst_route <= 1e-12);
    CHECK(worst_clausius <= 1e-10);
    CHECK(worst_cat <= 1e-12);
}

TEST_CASE("permutations are involutions") {
    Rng rng(103);
    for (int i = 0; i < 200; ++i) {
        EngineSpec s = qubit_catalyst_spec(random_bath(rng), random_bath(rng), 1.0);
        Matrix m = permutation_matrix(s).matrix();
        CHECK((m * m - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("steady-state invariants over a random grid") {
    Rng rng(107);
    for (int i = 0; i < 60; ++i) {
        GridPoint gp = random_grid_point(rng);
        for (const EngineSpec& s : {otto_spec(gp.hot(), gp.cold(), gp.g), qubit_catalyst_spec(gp.hot(), gp.cold(), gp.g)}) {
            Superoperator L = build_liouvillian(s);
            CHECK(L.trace_preserving(1e-10));
            StationaryState ss = stationary_state(L);
            CHECK(ss.residual <= 1e-10);
            SteadyStateReport r = currents_and_power(s, ss);
            CHECK(r.first_law_residual <= 1e-10);
            CHECK(r.current_route_gap <= 1e-9 * std::max(1.0, std::abs(r.j_hot)));
            CHECK(r.clausius_margin >= -1e-8);
            CHECK(r.entropy_production >= -1e-8);
            CHECK(r.int_vanish_residuals[0] <= 1e-10);
            CHECK(r.int_vanish_residuals[1] <= 1e-10);
            double n = s.catalyst_dim == 1 ? 1.0 : 2.0;
            CHECK(std::abs(r.efficiency.value - (1 - s.cold.omega / (n * s.hot.omega))) <= 1e-9);
        }
    }
}

TEST_CASE("efficiency does not depend on rates or coupling") {
    Rng rng(109);
    const double ah = 0.7, ac = 0.2, wc = 0.35;
    for (int i = 0; i < 30; ++i) {
        BathParams h = BathParams::from_damping(-std::log(ah), 1.0, rng.log_uniform(-1.5, 1.5));
        BathParams c = BathParams::from_damping(-std::log(ac) / wc, wc, rng.log_uniform(-1.5, 1.5));
        double g = rng.log_uniform(-1, 1);
        CHECK(std::abs(solve_steady_state(otto_spec(h, c, g)).efficiency.value - 0.65) <= 1e-9);
        CHECK(std::abs(solve_steady_state(qubit_catalyst_spec(h, c, g)).efficiency.value - 0.825) <= 1e-9);
    }
}

TEST_CASE("zeta and kappa stay at or below one over 10^4 samples") {
    Rng rng(113);
    for (int i = 0; i < 10000; ++i) {
        double ah = rng.uniform(), ac = rng.uniform();
        double z = analytic::zeta(ah, ac), k = analytic::kappa(ah, ac);
        double omz = analytic::one_minus_zeta(ah, ac), omk = analytic::one_minus_kappa(ah, ac);
        REQUIRE(z <= 1 + 1e-12);
        REQUIRE(k <= 1 + 1e-12);
        REQUIRE(omz >= -1e-14);
        REQUIRE(omk >= -1e-14);
        REQUIRE(std::abs((1 - z) - omz) <= 1e-12);
        REQUIRE(std::abs((1 - k) - omk) <= 1e-12);
    }
}

TEST_CASE("closed-form currents track the numerical ones on a random grid") {
    Rng rng(127);
    for (int i = 0; i < 60; ++i) {
        GridPoint gp = random_grid_point(rng);
        BathParams h = gp.hot(), c = gp.cold();
        double no = analytic::otto_current(h.relaxation_rate(), c.relaxation_rate(), gp.g,
                                           analytic::otto_delta_p(h.gibbs_factor(), c.gibbs_factor()));
        double nc = analytic::cat_current(analytic::rate_constants(h.gamma_plus, h.gamma_minus, c.gamma_plus, c.gamma_minus), gp.g,
                                          analytic::cat_delta_p(h.gibbs_factor(), c.gibbs_factor()).value());
        CHECK(std::abs(solve_steady_state(otto_spec(h, c, gp.g)).currents[0] - no) <= 1e-9 * std::abs(no));
        CHECK(std::abs(solve_steady_state(qubit_catalyst_spec(h, c, gp.g)).currents[0] - nc) <= 1e-9 * std::abs(nc));
    }
}
