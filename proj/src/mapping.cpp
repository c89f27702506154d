#include "otto/mapping.hpp"

#include <algorithm>
#include <cmath>

namespace otto {

namespace {

constexpr double kBoundary = 1e-13;

double rel_gap(double a, double b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

EquivalenceReport verify_equivalence(const EngineSpec& spec) {
    auto bad = validate(spec);
    if (!bad.empty()) throw std::domain_error("verify_equivalence: " + bad.front());
    EquivalenceReport r;
    r.catalyst = solve_catalyst(spec);
    r.cycle = run_cycle(spec, r.catalyst);
    r.steady = solve_steady_state(spec);

    const std::size_t n = spec.swaps.size();
    for (std::size_t i = 0; i < n; ++i) {
        double dp = r.cycle.delta_p[i];
        double c = r.steady.currents[i];
        if (std::abs(dp) < kBoundary || c == 0.0) throw MappingSingular("mapping singular at equilibrium boundary");
        r.tau_i.push_back(dp / c);
    }
    double sum = 0.0;
    for (double t : r.tau_i) sum += t;
    r.tau = n ? sum / static_cast<double>(n) : 0.0;
    for (double a : r.tau_i)
        for (double b : r.tau_i) r.tau_uniform_residual = std::max(r.tau_uniform_residual, std::abs(a - b));

    double dp_spread = 0.0;
    for (double a : r.cycle.delta_p)
        for (double b : r.cycle.delta_p) dp_spread = std::max(dp_spread, std::abs(a - b));
    r.simple_permutation = dp_spread <= 1e-12;

    r.eta_discrete = r.cycle.efficiency;
    r.eta_continuous = r.steady.efficiency;
    r.eta_gap = (r.eta_discrete.defined() && r.eta_continuous.defined())
                    ? std::abs(r.eta_discrete.value - r.eta_continuous.value)
                    : (r.eta_discrete.defined() == r.eta_continuous.defined() ? 0.0 : 1.0);
    r.work_per_cycle = r.cycle.work;
    r.power = r.steady.power;
    r.p_times_tau_minus_w = std::abs(r.power * r.tau - r.work_per_cycle);

    TableResiduals& t = r.table;
    t.heat_hot = rel_gap(r.cycle.q_hot, r.steady.j_hot * r.tau);
    t.heat_cold = rel_gap(r.cycle.q_cold, r.steady.j_cold * r.tau);
    t.work = rel_gap(r.cycle.work, r.power * r.tau);
    double cl_scale = std::max(std::abs(spec.hot.beta * r.cycle.q_hot), std::abs(spec.cold.beta * r.cycle.q_cold));
    t.clausius = cl_scale == 0.0 ? 0.0 : std::abs(r.cycle.clausius_margin - r.steady.clausius_margin * r.tau) / cl_scale;
    t.efficiency = r.eta_gap;

    HilbertLayout L = spec.layout();
    double dp_scale = 0.0;
    for (double dp : r.cycle.delta_p) dp_scale = std::max(dp_scale, std::abs(dp));
    for (int m = 0; m < spec.catalyst_dim; ++m) {
        double disc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int lu = L.digits(spec.swaps[i].u)[0] == m ? 1 : 0;
            int ld = L.digits(spec.swaps[i].d)[0] == m ? 1 : 0;
            disc += (lu - ld) * r.cycle.delta_p[i];
        }
        double cont = r.steady.catalysis_residuals[static_cast<std::size_t>(m)] * r.tau;
        t.catalysis = std::max(t.catalysis, (std::abs(disc) + std::abs(cont)) / dp_scale);
    }
    return r;
}

FamilyParams family_from_ratios(double bhwh, double bc_over_bh, double g_tau_eq, double tau_eq, double omega_h) {
    if (!(bhwh > 0) || !(bc_over_bh > 1) || !(g_tau_eq > 0) || !(tau_eq > 0) || !(omega_h > 0))
        throw std::domain_error("family parameters out of range");
    FamilyParams f;
    f.omega_h = omega_h;
    f.beta_h = bhwh / omega_h;
    f.beta_c = bc_over_bh * f.beta_h;
    f.tau_eq = tau_eq;
    f.g = g_tau_eq / tau_eq;
    return f;
}

EngineSpec otto_at_efficiency(const FamilyParams& f, double eta) {
    if (!(eta < 1)) throw std::domain_error("efficiency must be < 1");
    double wc = f.omega_h * (1 - eta);
    return otto_spec(BathParams::from_equilibration_time(f.beta_h, f.omega_h, f.tau_eq),
                     BathParams::from_equilibration_time(f.beta_c, wc, f.tau_eq), f.g);
}

EngineSpec catalytic_at_efficiency(const FamilyParams& f, double eta) {
    if (!(eta < 1)) throw std::domain_error("efficiency must be < 1");
    double wc = 2 * f.omega_h * (1 - eta);
    return qubit_catalyst_spec(BathParams::from_equilibration_time(f.beta_h, f.omega_h, f.tau_eq),
                               BathParams::from_equilibration_time(f.beta_c, wc, f.tau_eq), f.g);
}

static MachinePoint evaluate(const EngineSpec& spec) {
    MachinePoint m;
    CycleReport cyc = run_cycle(spec, solve_catalyst(spec));
    SteadyStateReport ss = solve_steady_state(spec);
    m.work = cyc.work;
    m.power = ss.power;
    if (std::abs(cyc.delta_p[0]) < kBoundary || ss.currents[0] == 0.0) return m;
    m.tau = cyc.delta_p[0] / ss.currents[0];
    bool engine = cyc.efficiency.regime == Regime::engine && ss.efficiency.regime == Regime::engine;
    m.regime = engine ? Regime::engine : Regime::non_engine;
    return m;
}

Comparison compare_at_efficiency(const FamilyParams& f, double eta) {
    Comparison c;
    c.eta = eta;
    c.otto = evaluate(otto_at_efficiency(f, eta));
    c.cat = evaluate(catalytic_at_efficiency(f, eta));
    return c;
}

}  // namespace otto
