#include "otto/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "otto/analytic.hpp"
#include "otto/config.hpp"
#include "otto/mapping.hpp"
#include "otto/sweep.hpp"

namespace otto {

namespace {

const std::set<std::string> kFaultable{"efficiency_otto", "efficiency_catalytic", "current_otto",
                                       "current_catalytic", "discrete_catalyst_population",
                                       "discrete_work_formula", "zeta_identity", "kappa_identity",
                                       "tau_general_form"};

struct Acc {
    double worst = 0.0;
    void take(double x) { worst = std::max(worst, std::isfinite(x) ? x : std::numeric_limits<double>::infinity()); }
};

struct PointOut {
    double eta_otto = 0, eta_cat = 0;
    double cur_otto = 0, cur_cat = 0;
    double map_work = 0, map_eta = 0, map_table = 0, tau_uniform = 0;
    double balance = 0, first_law = 0;
    double clausius = 0, sigma = 0, int_vanish = 0;
    double supp = 0, tau_general = 0;
    double heat_routes = 0, cat_pop = 0, closure = 0, work_formula = 0, clausius_disc = 0;
};

double rel(double num, double ref) {
    return std::abs(num - ref) / std::max(std::abs(ref), std::numeric_limits<double>::min());
}

}  // namespace

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string VerifyReport::text() const {
    std::ostringstream os;
    char buf[256];
    for (const auto& c : checks) {
        std::snprintf(buf, sizeof buf, "%s  %-30s worst=%-12.4g tol=%-8.3g", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                      c.worst, c.tolerance);
        os << buf;
        if (!c.detail.empty()) os << "  " << c.detail;
        os << '\n';
    }
    std::snprintf(buf, sizeof buf, "%zu checks, %s, %.2f s\n", checks.size(), all_pass() ? "all passed" : "FAILED",
                  seconds);
    os << buf;
    return os.str();
}

BathParams GridPoint::hot() const { return BathParams::from_damping(-std::log(a_h) / omega_h, omega_h, gamma_h_minus); }
BathParams GridPoint::cold() const { return BathParams::from_damping(-std::log(a_c) / omega_c, omega_c, gamma_c_minus); }

GridPoint random_grid_point(Rng& rng) {
    GridPoint p;
    p.a_h = rng.uniform();
    p.a_c = rng.uniform();
    p.omega_h = 1.0;
    p.omega_c = rng.uniform(0.05, 0.95);
    p.gamma_h_minus = rng.log_uniform(-1.5, 1.5);
    p.gamma_c_minus = rng.log_uniform(-1.5, 1.5);
    p.g = rng.log_uniform(-1.0, 1.0);
    return p;
}

std::vector<GridPoint> random_grid(std::uint64_t seed, int n) {
    Rng rng(seed);
    std::vector<GridPoint> out;
    for (int i = 0; i < n; ++i) out.push_back(random_grid_point(rng));
    return out;
}

std::vector<double> catalyst_stationary_relations(const EngineSpec& spec, const DensityMatrix& rho) {
    if (spec.catalyst_dim != 2 || spec.swaps.size() != 2) throw std::domain_error("relations need the qubit-catalyst engine");
    // Catalyst labels 1, 2.
    auto p = [&](int s, int h, int c) { return rho.population(basis_index(2, s - 1, h, c)); };
    const double ghp = spec.hot.gamma_plus, ghm = spec.hot.gamma_minus;
    const double gcp = spec.cold.gamma_plus, gcm = spec.cold.gamma_minus;
    const double g = spec.swaps[0].g;
    const double n = probability_currents(spec, rho)[0];
    analytic::RateConstants k = analytic::rate_constants(ghp, ghm, gcp, gcm);
    return {
        -(ghp + gcp) * p(1, 0, 0) + ghm * p(1, 1, 0) + gcm * p(1, 0, 1),
        -n - (ghp + gcp) * p(2, 0, 0) + ghm * p(2, 1, 0) + gcm * p(2, 0, 1),
        -n - (ghp + gcm) * p(1, 0, 1) + ghm * p(1, 1, 1) + gcp * p(1, 0, 0),
        -(ghp + gcm) * p(2, 0, 1) + ghm * p(2, 1, 1) + gcp * p(2, 0, 0),
        n - (ghm + gcp) * p(1, 1, 0) + ghp * p(1, 0, 0) + gcm * p(1, 1, 1),
        n - (ghm + gcp) * p(2, 1, 0) + ghp * p(2, 0, 0) + gcm * p(2, 1, 1),
        -(ghm + gcm) * p(1, 1, 1) + ghp * p(1, 0, 1) + gcp * p(1, 1, 0),
        -(ghm + gcm) * p(2, 1, 1) + ghp * p(2, 0, 1) + gcp * p(2, 1, 0),
        -2 * g * g * (p(2, 1, 0) - p(1, 0, 1)) - 0.5 * k.B_rate * n,
        -2 * g * g * (p(1, 1, 0) - p(2, 0, 0)) - 0.5 * k.A_rate * n,
    };
}

VerifyReport run_verification(const VerifyOptions& opts) {
    if (opts.n_points < 1) throw ConfigError("verify needs at least one point");
    if (!opts.inject_fault.empty() && !kFaultable.count(opts.inject_fault))
        throw ConfigError("cannot inject a fault into check '" + opts.inject_fault + "'");
    auto t0 = std::chrono::steady_clock::now();
    auto fudge = [&](const char* name) { return opts.inject_fault == name ? 1.0 + 1e-6 : 1.0; };

    const auto grid = random_grid(opts.seed, opts.n_points);
    std::vector<PointOut> out(grid.size());
    parallel_for(grid.size(), opts.threads, [&](std::size_t i) {
        const GridPoint& gp = grid[i];
        PointOut& o = out[i];
        BathParams hot = gp.hot(), cold = gp.cold();
        EngineSpec so = otto_spec(hot, cold, gp.g);
        EngineSpec sc = qubit_catalyst_spec(hot, cold, gp.g);
        const double ah = hot.gibbs_factor(), ac = cold.gibbs_factor();

        EquivalenceReport eo = verify_equivalence(so);
        EquivalenceReport ec = verify_equivalence(sc);

        o.eta_otto = std::abs(eo.eta_continuous.value - (1 - gp.omega_c / gp.omega_h) * fudge("efficiency_otto"));
        o.eta_cat = std::abs(ec.eta_continuous.value - (1 - gp.omega_c / (2 * gp.omega_h)) * fudge("efficiency_catalytic"));

        double n_otto = analytic::otto_current(hot.relaxation_rate(), cold.relaxation_rate(), gp.g,
                                               analytic::otto_delta_p(ah, ac));
        auto k = analytic::rate_constants(hot.gamma_plus, hot.gamma_minus, cold.gamma_plus, cold.gamma_minus);
        double n_cat = analytic::cat_current(k, gp.g, analytic::cat_delta_p(ah, ac).value());
        o.cur_otto = rel(eo.steady.currents[0], n_otto * fudge("current_otto"));
        o.cur_cat = std::max(rel(ec.steady.currents[0], n_cat * fudge("current_catalytic")),
                             rel(ec.steady.currents[1], n_cat * fudge("current_catalytic")));

        for (const EquivalenceReport* e : {&eo, &ec}) {
            o.map_work = std::max(o.map_work, e->p_times_tau_minus_w / std::abs(e->work_per_cycle));
            o.map_eta = std::max(o.map_eta, e->eta_gap);
            const TableResiduals& t = e->table;
            o.map_table = std::max({o.map_table, t.heat_hot, t.heat_cold, t.work, t.clausius, t.efficiency, t.catalysis});
            o.tau_uniform = std::max(o.tau_uniform, e->tau_uniform_residual / std::abs(e->tau));
            o.first_law = std::max(o.first_law, e->steady.first_law_residual);
            o.clausius = std::max(o.clausius, -e->steady.clausius_margin);
            o.sigma = std::max(o.sigma, -e->steady.entropy_production);
            o.int_vanish = std::max({o.int_vanish, e->steady.int_vanish_residuals[0], e->steady.int_vanish_residuals[1]});
            o.heat_routes = std::max(o.heat_routes, e->cycle.heat_route_gap);
            o.clausius_disc = std::max(o.clausius_disc, -e->cycle.clausius_margin);
            DensityMatrix rho0 = build_initial_state(e == &eo ? so : sc, e->catalyst);
            DensityMatrix rho1 = full_cycle(e == &eo ? so : sc, rho0);
            o.closure = std::max(o.closure, (rho1.matrix() - rho0.matrix()).cwiseAbs().maxCoeff());
        }
        o.balance = std::abs(ec.steady.currents[0] - ec.steady.currents[1]);
        o.cat_pop = std::abs(ec.catalyst.populations[0] - analytic::cat_population(ah, ac) * fudge("discrete_catalyst_population"));
        double w_ref = (2 * gp.omega_h - gp.omega_c) * (ah * ah - ac) / ((1 + ah) * (1 + ac) * (1 + 2 * ah + ac));
        o.work_formula = std::abs(ec.cycle.work - w_ref * fudge("discrete_work_formula"));
        for (double r : catalyst_stationary_relations(sc, ec.steady.rho_ss)) o.supp = std::max(o.supp, std::abs(r));
        double tau_gen = analytic::cat_tau_from_times(ah, ac, hot.equilibration_time(), cold.equilibration_time(), gp.g);
        o.tau_general = rel(analytic::cat_denominator(k, gp.g), tau_gen * fudge("tau_general_form"));
    });

    VerifyReport rep;
    auto add = [&](const std::string& name, double worst, double tol, const std::string& detail = "") {
        rep.checks.push_back({name, worst, tol, worst <= tol, detail});
    };
    auto worst_of = [&](double PointOut::*f) {
        Acc a;
        for (const auto& o : out) a.take(o.*f);
        return a.worst;
    };
    std::string npts = std::to_string(grid.size()) + " grid points";
    add("efficiency_otto", worst_of(&PointOut::eta_otto), 1e-9, npts);
    add("efficiency_catalytic", worst_of(&PointOut::eta_cat), 1e-9, npts);
    add("current_otto", worst_of(&PointOut::cur_otto), 1e-9, "relative");
    add("current_catalytic", worst_of(&PointOut::cur_cat), 1e-9, "relative");
    add("mapping_power_time_work", worst_of(&PointOut::map_work), 1e-9, "|P tau - W|/|W|");
    add("mapping_efficiency_gap", worst_of(&PointOut::map_eta), 1e-9);
    add("mapping_table_rows", worst_of(&PointOut::map_table), 1e-9, "heats, work, Clausius, eta, catalysis");
    add("mapping_tau_uniform", worst_of(&PointOut::tau_uniform), 1e-9, "relative");
    add("catalyst_current_balance", worst_of(&PointOut::balance), 1e-10);
    add("first_law_continuous", worst_of(&PointOut::first_law), 1e-10);
    add("clausius_continuous", worst_of(&PointOut::clausius), 1e-8, "worst negative margin");
    add("entropy_production", worst_of(&PointOut::sigma), 1e-8, "worst negative sigma");
    add("int_vanish", worst_of(&PointOut::int_vanish), 1e-10);
    add("supplement_relations", worst_of(&PointOut::supp), 1e-9, "ten stationary relations");
    add("tau_general_form", worst_of(&PointOut::tau_general), 1e-10, "relative");
    add("discrete_heat_routes", worst_of(&PointOut::heat_routes), 1e-12);
    add("discrete_catalyst_population", worst_of(&PointOut::cat_pop), 1e-12);
    add("discrete_cycle_closure", worst_of(&PointOut::closure), 1e-12);
    add("discrete_work_formula", worst_of(&PointOut::work_formula), 1e-12);
    add("discrete_clausius", worst_of(&PointOut::clausius_disc), 1e-10, "worst negative margin");

    // Characteristic-time coefficients on 10^4 uniform samples.
    {
        Rng rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
        Acc bound, zid, kid, order, nonneg;
        for (int i = 0; i < 10000; ++i) {
            double ah = rng.uniform(), ac = rng.uniform(), gt = rng.log_uniform(-1, 2);
            double z = analytic::zeta(ah, ac), kp = analytic::kappa(ah, ac);
            bound.take(std::max(z, kp) - 1);
            double omz = analytic::one_minus_zeta(ah, ac) * fudge("zeta_identity");
            double omk = analytic::one_minus_kappa(ah, ac) * fudge("kappa_identity");
            zid.take(std::abs((1 - z) - omz));
            kid.take(std::abs((1 - kp) - omk));
            nonneg.take(-std::min(omz, omk));
            double tau_cat = z * (1 + kp / (gt * gt));
            double tau_otto = 1 + 1 / (gt * gt);
            order.take(tau_cat / tau_otto - 1);
        }
        add("zeta_kappa_bound", bound.worst, 1e-12, "max(zeta, kappa) - 1 over 1e4 samples");
        add("zeta_identity", zid.worst, 1e-12);
        add("kappa_identity", kid.worst, 1e-12);
        add("zeta_kappa_nonnegative_forms", nonneg.worst, 1e-14);
        add("tau_ordering", order.worst, 1e-9, "tau_cat/tau_otto - 1 at equal tau_eq");
    }

    // Matched-efficiency comparison on the power/efficiency trade-off grid.
    {
        FamilyParams f = family_from_ratios(0.1, 10, 10);
        const int n = 100;
        std::vector<Comparison> cmp(n);
        parallel_for(n, opts.threads, [&](std::size_t i) {
            cmp[i] = compare_at_efficiency(f, 0.01 + 0.88 * static_cast<double>(i) / (n - 1));
        });
        Acc dom;
        dom.worst = -std::numeric_limits<double>::infinity();
        int both = 0;
        double peak_o = 0, peak_c = 0;
        for (const auto& c : cmp) {
            peak_o = std::max(peak_o, c.otto.power);
            peak_c = std::max(peak_c, c.cat.power);
            if (c.otto.regime == Regime::engine && c.cat.regime == Regime::engine) {
                ++both;
                dom.take((c.otto.power - c.cat.power) / c.otto.power);
            }
        }
        CheckResult r{"fig2_power_dominance", dom.worst, 0.0, both == n && dom.worst < 0,
                      std::to_string(both) + " engine points, (P_otto - P_cat)/P_otto"};
        rep.checks.push_back(r);
        Comparison lim = compare_at_efficiency(f, 0.9 - 1e-5);
        double ratio = std::max(lim.otto.power / peak_o, lim.cat.power / peak_c);
        bool positive = lim.otto.power > 0 && lim.cat.power > 0;
        rep.checks.push_back({"fig2_carnot_limit", ratio, 1e-3, positive && ratio < 1e-3, "P(0.9 - 1e-5)/peak"});
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    add("runtime_seconds", rep.seconds, 60.0);
    return rep;
}

}  // namespace otto
