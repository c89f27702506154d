#include "otto/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <thread>

#include "otto/analytic.hpp"
#include "otto/continuous.hpp"
#include "otto/discrete.hpp"
#include "otto/mapping.hpp"

namespace otto {

namespace {

const std::vector<std::string> kInputs{"engine",        "parameter",     "value",        "omega_h",
                                       "omega_c",       "beta_h",        "beta_c",       "gamma_h_plus",
                                       "gamma_h_minus", "gamma_c_plus",  "gamma_c_minus", "g"};
const std::vector<std::string> kDiscrete{"catalyst_p", "delta_p",       "q_hot",        "q_cold",
                                         "work",       "eta_disc",      "regime_disc",  "clausius_disc",
                                         "catalyst_residual"};
const std::vector<std::string> kContinuous{"current",         "j_hot",           "j_cold",
                                           "power",           "eta_cont",        "regime_cont",
                                           "clausius_cont",   "entropy_production", "int_vanish_hot",
                                           "int_vanish_cold", "catalysis_residual", "first_law_residual",
                                           "spectral_gap"};
const std::vector<std::string> kMapped{"eta_target", "tau", "tau_spread", "zeta", "kappa"};

std::vector<std::string> concat(std::initializer_list<const std::vector<std::string>*> parts) {
    std::vector<std::string> out;
    for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + format_number(xs[i]);
    return s.empty() ? "NA" : s;
}

std::string eff(const Efficiency& e) { return e.defined() ? format_number(e.value) : "NA"; }

constexpr double kNA = std::numeric_limits<double>::quiet_NaN();

}  // namespace

const std::string& ResultRow::get(const std::string& column) const {
    for (const auto& [k, v] : cells)
        if (k == column) return v;
    throw std::out_of_range("no column '" + column + "'");
}

const std::vector<std::string>& column_names(RunMode mode) {
    static const std::vector<std::string> disc = concat({&kInputs, &kDiscrete, &kMapped});
    static const std::vector<std::string> cont = concat({&kInputs, &kContinuous, &kMapped});
    static const std::vector<std::string> full = concat({&kInputs, &kDiscrete, &kContinuous, &kMapped});
    switch (mode) {
        case RunMode::discrete: return disc;
        case RunMode::continuous: return cont;
        default: return full;
    }
}

std::string format_number(double x) {
    if (!std::isfinite(x)) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<Task> build_tasks(const SweepConfig& c) {
    std::vector<double> values;
    std::string param;
    if (c.sweep) {
        values = c.sweep->values();
        param = c.sweep->parameter;
    } else {
        values.push_back(kNA);
    }
    std::vector<Task> tasks;
    for (double v : values) {
        for (EngineKind k : c.engines) {
            Task t;
            t.engine = k;
            t.parameter = param;
            t.value = v;
            if (k == EngineKind::custom) {
                t.spec = *c.custom;
                if (param == "g")
                    for (auto& p : t.spec.swaps) p.g = v;
                if (param == "omega_c")
                    t.spec.cold = BathParams::from_damping(t.spec.cold.beta, v, t.spec.cold.gamma_minus);
                auto bad = validate(t.spec);
                if (!bad.empty()) throw ConfigError("custom engine at " + param + " = " + format_number(v) + ": " + bad.front());
            } else {
                double bhwh = param == "beta_h_omega_h" ? v : c.beta_h_omega_h;
                double ratio = param == "beta_c_over_beta_h" ? v : c.beta_c_over_beta_h;
                double gteq = param == "g_tau_eq" ? v : c.g_tau_eq;
                FamilyParams f = family_from_ratios(bhwh, ratio, gteq, c.tau_eq, c.omega_h);
                const double n = k == EngineKind::otto ? 1.0 : 2.0;
                double wc;
                if (param == "eta") wc = n * f.omega_h * (1 - v);
                else if (param == "omega_c") wc = v;
                else if (c.eta) wc = n * f.omega_h * (1 - *c.eta);
                else wc = *c.omega_c;
                if (!(wc > 0)) throw ConfigError("cold gap must be positive");
                BathParams hot = BathParams::from_equilibration_time(f.beta_h, f.omega_h, f.tau_eq);
                BathParams cold = BathParams::from_equilibration_time(f.beta_c, wc, f.tau_eq);
                t.spec = k == EngineKind::otto ? otto_spec(hot, cold, f.g) : qubit_catalyst_spec(hot, cold, f.g);
                t.eta_target = 1 - wc / (n * f.omega_h);
            }
            tasks.push_back(std::move(t));
        }
    }
    return tasks;
}

ResultRow evaluate_task(const Task& t, RunMode mode) {
    const EngineSpec& s = t.spec;
    std::map<std::string, std::string> v;
    v["engine"] = engine_name(t.engine);
    v["parameter"] = t.parameter.empty() ? "none" : t.parameter;
    v["value"] = format_number(t.value);
    v["omega_h"] = format_number(s.hot.omega);
    v["omega_c"] = format_number(s.cold.omega);
    v["beta_h"] = format_number(s.hot.beta);
    v["beta_c"] = format_number(s.cold.beta);
    v["gamma_h_plus"] = format_number(s.hot.gamma_plus);
    v["gamma_h_minus"] = format_number(s.hot.gamma_minus);
    v["gamma_c_plus"] = format_number(s.cold.gamma_plus);
    v["gamma_c_minus"] = format_number(s.cold.gamma_minus);
    std::vector<double> gs;
    for (const auto& p : s.swaps) gs.push_back(p.g);
    v["g"] = join(gs);
    v["eta_target"] = t.eta_target ? format_number(*t.eta_target) : "NA";

    double zeta = kNA, kappa = kNA;
    if (t.engine == EngineKind::otto) zeta = kappa = 1.0;
    if (t.engine == EngineKind::qubit_catalyst) {
        zeta = analytic::zeta(s.hot.gibbs_factor(), s.cold.gibbs_factor());
        kappa = analytic::kappa(s.hot.gibbs_factor(), s.cold.gibbs_factor());
    }
    v["zeta"] = format_number(zeta);
    v["kappa"] = format_number(kappa);

    std::vector<double> dp, cur;
    if (mode != RunMode::continuous) {
        CatalystState cat = solve_catalyst(s);
        CycleReport r = run_cycle(s, cat);
        dp = r.delta_p;
        v["catalyst_p"] = join(cat.populations);
        v["delta_p"] = join(r.delta_p);
        v["q_hot"] = format_number(r.q_hot);
        v["q_cold"] = format_number(r.q_cold);
        v["work"] = format_number(r.work);
        v["eta_disc"] = eff(r.efficiency);
        v["regime_disc"] = regime_name(r.efficiency.regime);
        v["clausius_disc"] = format_number(r.clausius_margin);
        v["catalyst_residual"] = format_number(r.catalyst_residual);
    }
    if (mode != RunMode::discrete) {
        SteadyStateReport r = solve_steady_state(s);
        cur = r.currents;
        v["current"] = join(r.currents);
        v["j_hot"] = format_number(r.j_hot);
        v["j_cold"] = format_number(r.j_cold);
        v["power"] = format_number(r.power);
        v["eta_cont"] = eff(r.efficiency);
        v["regime_cont"] = regime_name(r.efficiency.regime);
        v["clausius_cont"] = format_number(r.clausius_margin);
        v["entropy_production"] = format_number(r.entropy_production);
        v["int_vanish_hot"] = format_number(r.int_vanish_residuals[0]);
        v["int_vanish_cold"] = format_number(r.int_vanish_residuals[1]);
        double cr = 0.0;
        for (double x : r.catalysis_residuals) cr = std::max(cr, std::abs(x));
        v["catalysis_residual"] = format_number(cr);
        v["first_law_residual"] = format_number(r.first_law_residual);
        v["spectral_gap"] = format_number(r.spectral_gap);
    }

    double tau = kNA, spread = kNA;
    if (mode == RunMode::full && !dp.empty()) {
        bool ok = true;
        std::vector<double> taus;
        for (std::size_t i = 0; i < dp.size(); ++i) {
            if (std::abs(dp[i]) < 1e-13 || cur[i] == 0.0) ok = false;
            else taus.push_back(dp[i] / cur[i]);
        }
        if (ok) {
            double sum = 0.0;
            for (double x : taus) sum += x;
            tau = sum / static_cast<double>(taus.size());
            auto [lo, hi] = std::minmax_element(taus.begin(), taus.end());
            spread = *hi - *lo;
        }
    }
    v["tau"] = format_number(tau);
    v["tau_spread"] = format_number(spread);

    ResultRow row;
    for (const auto& col : column_names(mode)) {
        auto it = v.find(col);
        row.cells.emplace_back(col, it == v.end() ? "NA" : it->second);
    }
    return row;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : hw;
    workers = std::max<std::size_t>(1, std::min(workers, n));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<ResultRow> evaluate_all(const std::vector<Task>& tasks, RunMode mode, int threads) {
    std::vector<ResultRow> rows(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) { rows[i] = evaluate_task(tasks[i], mode); });
    return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows, RunMode mode, const std::vector<std::string>& columns) {
    const auto& all = column_names(mode);
    for (const auto& c : columns)
        if (std::find(all.begin(), all.end(), c) == all.end()) throw ConfigError("unknown output column '" + c + "'");
    std::vector<std::string> cols;
    for (const auto& c : all)
        if (columns.empty() || std::find(columns.begin(), columns.end(), c) != columns.end()) cols.push_back(c);

    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + r.get(cols[i]);
        out += '\n';
    }
    return out;
}

std::string run_to_csv(const SweepConfig& config, RunMode mode, int threads) {
    // Validate the column list before doing any work.
    to_csv({}, mode, config.columns);
    return to_csv(evaluate_all(build_tasks(config), mode, threads), mode, config.columns);
}

}  // namespace otto
