#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "otto/analytic.hpp"
#include "otto/discrete.hpp"
#include "otto/rng.hpp"

using namespace otto;

namespace {

// Bath with Gibbs factor a at gap omega.
BathParams bath(double a, double omega, double gamma_minus = 1.0) {
    return BathParams::from_damping(-std::log(a) / omega, omega, gamma_minus);
}

BathParams zero_temperature(double omega) { return BathParams::from_damping(100 / omega, omega, 1.0); }

}  // namespace

TEST_CASE("permutation matrix") {
    EngineSpec s = otto_spec(bath(0.5, 1.0), bath(0.25, 0.4), 1.0);
    Matrix m = permutation_matrix(s).matrix();
    Matrix want = Matrix::Identity(4, 4);
    want(1, 1) = want(2, 2) = 0;
    want(1, 2) = want(2, 1) = 1;
    CHECK((m - want).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m * m - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    EngineSpec c = qubit_catalyst_spec(bath(0.5, 1.0), bath(0.25, 0.4), 1.0);
    Matrix mc = permutation_matrix(c).matrix();
    CHECK((mc * mc - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((mc * mc.adjoint() - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);

    EngineSpec empty = s;
    empty.swaps.clear();
    CHECK((permutation_matrix(empty).matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    EngineSpec overlap = c;
    overlap.swaps[1].d = overlap.swaps[0].u;
    CHECK_THROWS_AS(permutation_matrix(overlap), std::domain_error);
}

TEST_CASE("initial state") {
    EngineSpec s = otto_spec(bath(0.5, 1.0), bath(0.25, 0.4), 1.0);
    DensityMatrix r = build_initial_state(s, {{1.0}});
    CHECK(r.violations().empty());
    CHECK(r.population(0) == doctest::Approx(1 / (1.5 * 1.25)));

    EngineSpec hot_inf = otto_spec(BathParams::from_damping(0, 1, 1), BathParams::from_damping(0, 0.4, 1), 1.0);
    DensityMatrix mixed = build_initial_state(hot_inf, {{1.0}});
    CHECK((mixed.matrix() - 0.25 * Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-15);

    EngineSpec c = qubit_catalyst_spec(bath(0.5, 1.0), bath(0.25, 0.4), 1.0);
    DensityMatrix rc = build_initial_state(c, {{1.0, 0.0}});
    for (int k = 4; k < 8; ++k) CHECK(rc.population(k) == 0.0);
    CHECK_THROWS_AS(build_initial_state(c, {{1.0}}), std::domain_error);
    CHECK_THROWS_AS(build_initial_state(c, {{0.7, 0.7}}), std::domain_error);
}

TEST_CASE("probability flows") {
    EngineSpec s = otto_spec(bath(0.5, 1.0), bath(0.25, 0.4), 1.0);
    auto dp = probability_flows(s, build_initial_state(s, {{1.0}}));
    CHECK(std::abs(dp[0] - 0.25 / (1.5 * 1.25)) <= 1e-15);
    CHECK(std::abs(dp[0] - analytic::otto_delta_p(0.5, 0.25)) <= 1e-15);

    EngineSpec eq = otto_spec(bath(0.3, 1.0), bath(0.3, 0.4), 1.0);
    CHECK(std::abs(probability_flows(eq, build_initial_state(eq, {{1.0}}))[0]) <= 1e-16);

    double ah = 0.6;
    EngineSpec c = qubit_catalyst_spec(bath(ah, 1.0), bath(ah * ah, 0.4), 1.0);
    auto dpc = probability_flows(c, build_initial_state(c, solve_catalyst(c)));
    CHECK(std::abs(dpc[0]) <= 1e-15);
    CHECK(std::abs(dpc[1]) <= 1e-15);

    Matrix m = build_initial_state(s, {{1.0}}).matrix();
    m(1, 2) = m(2, 1) = 1e-6;
    CHECK_THROWS_AS(probability_flows(s, DensityMatrix(Operator(s.layout(), m))), std::domain_error);
}

TEST_CASE("catalyst solve") {
    EngineSpec zero = qubit_catalyst_spec(zero_temperature(1.0), zero_temperature(0.4), 1.0);
    auto p0 = solve_catalyst(zero);
    CHECK(std::abs(p0.populations[0] - 1.0) <= 1e-12);
    CHECK(std::abs(p0.populations[1]) <= 1e-12);

    EngineSpec inf = qubit_catalyst_spec(BathParams::from_damping(0, 1, 1), BathParams::from_damping(0, 0.4, 1), 1.0);
    auto ph = solve_catalyst(inf);
    CHECK(std::abs(ph.populations[0] - 0.5) <= 1e-15);
    CHECK(std::abs(ph.populations[1] - 0.5) <= 1e-15);

    EngineSpec mid = qubit_catalyst_spec(bath(0.37, 1.0), bath(0.21, 0.4), 1.0);
    CHECK(std::abs(solve_catalyst(mid).populations[0] - analytic::cat_population(0.37, 0.21)) <= 1e-12);

    EngineSpec otto = otto_spec(bath(0.37, 1.0), bath(0.21, 0.4), 1.0);
    CHECK(solve_catalyst(otto).populations == std::vector<double>{1.0});

    // Two catalyst levels with no swap touching them cannot be pinned down.
    EngineSpec loose = mid;
    loose.swaps.clear();
    CHECK_THROWS_WITH_AS(solve_catalyst(loose), "no simple-permutation catalyst exists for this spec", std::domain_error);
}

TEST_CASE("run_cycle efficiencies") {
    EngineSpec o = otto_spec(bath(0.5, 1.0), bath(0.1, 0.4), 1.0);
    CycleReport ro = run_cycle(o, {{1.0}});
    CHECK(ro.efficiency.regime == Regime::engine);
    CHECK(std::abs(ro.efficiency.value - 0.6) <= 1e-12);
    CHECK(std::abs(ro.work - (ro.q_hot + ro.q_cold)) <= 1e-15);

    EngineSpec c = qubit_catalyst_spec(bath(0.5, 1.0), bath(0.1, 0.4), 1.0);
    CatalystState cat = solve_catalyst(c);
    CycleReport rc = run_cycle(c, cat);
    CHECK(rc.efficiency.regime == Regime::engine);
    CHECK(std::abs(rc.efficiency.value - 0.8) <= 1e-12);
    CHECK(rc.catalyst_residual <= 1e-12);
    CHECK(rc.heat_route_gap <= 1e-12);

    // A wrong catalyst is not restored.
    CycleReport bad = run_cycle(c, {{0.5, 0.5}});
    CHECK(bad.catalyst_residual > 1e-3);
}

TEST_CASE("undefined and non-engine efficiencies are tagged") {
    EngineSpec eq = otto_spec(bath(0.3, 1.0), bath(0.3, 0.4), 1.0);
    CycleReport r = run_cycle(eq, {{1.0}});
    CHECK(r.efficiency.regime == Regime::undefined);
    CHECK(std::abs(clausius_check(r, eq.hot.beta, eq.cold.beta)) <= 1e-15);

    // Cold bath hotter in the Gibbs sense: a_c > a_h drives a heat pump.
    EngineSpec rev = otto_spec(bath(0.2, 1.0), bath(0.6, 0.4), 1.0);
    CycleReport rr = run_cycle(rev, {{1.0}});
    CHECK(rr.efficiency.regime == Regime::non_engine);
    CHECK(rr.work < 0);
}

TEST_CASE("equal temperatures give no work") {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        double beta = rng.uniform(0.01, 3);
        BathParams h = BathParams::from_damping(beta, rng.uniform(0.1, 2), 1.0);
        BathParams c = BathParams::from_damping(beta, rng.uniform(0.1, 2), 1.0);
        for (const EngineSpec& s : {otto_spec(h, c, 1.0), qubit_catalyst_spec(h, c, 1.0)}) {
            CycleReport r = run_cycle(s, solve_catalyst(s));
            CHECK(r.work <= 1e-15);
            CHECK(clausius_check(r, beta, beta) >= -1e-15);
        }
    }
}

TEST_CASE("catalytic work formula with the operator-trace sign") {
    Rng rng(29);
    for (int i = 0; i < 200; ++i) {
        double ah = rng.uniform(), ac = rng.uniform(), wh = 1.0, wc = rng.uniform(0.05, 1.9);
        EngineSpec c = qubit_catalyst_spec(bath(ah, wh), bath(ac, wc), 1.0);
        CycleReport r = run_cycle(c, solve_catalyst(c));
        auto dp = analytic::cat_delta_p(ah, ac);
        CHECK(std::abs(r.delta_p[0] - dp.value()) <= 1e-12);
        // W = -(2 w_h - w_c) dp: extracted work is positive when a_h^2 > a_c.
        CHECK(std::abs(r.work + (2 * wh - wc) * dp.value()) <= 1e-12);
    }
}

TEST_CASE("full cycle returns the initial state") {
    EngineSpec c = qubit_catalyst_spec(bath(0.55, 1.0), bath(0.12, 0.4), 1.0);
    DensityMatrix r0 = build_initial_state(c, solve_catalyst(c));
    DensityMatrix r1 = full_cycle(c, r0);
    CHECK((r1.matrix() - r0.matrix()).cwiseAbs().maxCoeff() <= 1e-12);

    DensityMatrix wrong = build_initial_state(c, {{0.9, 0.1}});
    CHECK((full_cycle(c, wrong).matrix() - wrong.matrix()).cwiseAbs().maxCoeff() > 1e-3);
}
