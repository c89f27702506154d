#include "otto/engine_spec.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace otto {

namespace {

void throw_if(const std::vector<std::string>& v, const char* what) {
    if (v.empty()) return;
    std::string msg = what;
    for (auto& s : v) msg += ": " + s;
    throw std::domain_error(msg);
}

Matrix number_op() {
    Matrix n = Matrix::Zero(2, 2);
    n(1, 1) = 1.0;
    return n;
}

}  // namespace

BathParams BathParams::from_rates(double beta, double omega, double gamma_plus, double gamma_minus) {
    BathParams b{beta, omega, gamma_plus, gamma_minus};
    throw_if(b.violations(), "invalid bath");
    return b;
}

BathParams BathParams::from_damping(double beta, double omega, double gamma_minus) {
    BathParams b{beta, omega, 0.0, gamma_minus};
    b.gamma_plus = b.gibbs_factor() * gamma_minus;
    throw_if(b.violations(), "invalid bath");
    return b;
}

BathParams BathParams::from_equilibration_time(double beta, double omega, double tau_eq) {
    if (!(tau_eq > 0) || !std::isfinite(tau_eq)) throw std::domain_error("invalid bath: tau_eq must be > 0");
    BathParams b{beta, omega, 0.0, 0.0};
    double a = b.gibbs_factor();
    b.gamma_minus = 2.0 / (tau_eq * (1.0 + a));
    b.gamma_plus = a * b.gamma_minus;
    throw_if(b.violations(), "invalid bath");
    return b;
}

double BathParams::gibbs_factor() const { return std::exp(-beta * omega); }

std::vector<std::string> BathParams::violations() const {
    std::vector<std::string> v;
    if (!std::isfinite(beta) || !std::isfinite(omega) || !std::isfinite(gamma_plus) || !std::isfinite(gamma_minus)) {
        v.emplace_back("non-finite bath parameter");
        return v;
    }
    if (beta < 0) v.emplace_back("negative inverse temperature");
    if (omega <= 0) v.emplace_back("qubit gap must be positive");
    if (gamma_plus <= 0 || gamma_minus <= 0) {
        v.emplace_back("rates must be positive");
        return v;
    }
    if (std::abs(gamma_plus / gamma_minus - gibbs_factor()) > 1e-12) v.emplace_back("detailed balance violated");
    return v;
}

int basis_index(int catalyst_dim, int s, int h, int c) {
    return HilbertLayout({catalyst_dim, 2, 2}).index({s, h, c});
}

EngineSpec otto_spec(const BathParams& hot, const BathParams& cold, double g) {
    EngineSpec spec{1, hot, cold, {{basis_index(1, 0, 1, 0), basis_index(1, 0, 0, 1), g}}};
    throw_if(validate(spec), "invalid Otto engine");
    return spec;
}

EngineSpec qubit_catalyst_spec(const BathParams& hot, const BathParams& cold, double g) {
    EngineSpec spec{2, hot, cold,
                    {{basis_index(2, 1, 0, 0), basis_index(2, 0, 1, 0), g},
                     {basis_index(2, 0, 0, 1), basis_index(2, 1, 1, 0), g}}};
    throw_if(validate(spec), "invalid qubit-catalyst engine");
    return spec;
}

PairEnergetics energy_differences(const EngineSpec& spec, std::size_t pair_index) {
    if (pair_index >= spec.swaps.size()) throw std::out_of_range("energy_differences: pair index out of range");
    auto [hh, hc] = hamiltonians(spec);
    const SwapPair& p = spec.swaps[pair_index];
    PairEnergetics e;
    e.d_eps_h = hh(p.u, p.u).real() - hh(p.d, p.d).real();
    e.d_eps_c = hc(p.u, p.u).real() - hc(p.d, p.d).real();
    e.omega_i = e.d_eps_h + e.d_eps_c;
    return e;
}

std::pair<Operator, Operator> hamiltonians(const EngineSpec& spec) {
    HilbertLayout L = spec.layout();
    Operator hh = embed(L, 1, spec.hot.omega * number_op());
    Operator hc = embed(L, 2, spec.cold.omega * number_op());
    return {hh, hc};
}

std::vector<std::string> validate(const EngineSpec& spec) {
    std::vector<std::string> v;
    if (spec.catalyst_dim < 1) {
        v.emplace_back("catalyst dimension must be >= 1");
        return v;
    }
    for (auto& s : spec.hot.violations()) v.push_back("hot bath: " + s);
    for (auto& s : spec.cold.violations()) v.push_back("cold bath: " + s);
    // Repeat the detailed balance message unprefixed so callers can match it.
    bool db_broken = false;
    for (const BathParams* b : {&spec.hot, &spec.cold})
        for (auto& s : b->violations()) db_broken = db_broken || s == "detailed balance violated";
    if (db_broken) v.emplace_back("detailed balance violated");

    const int n = 4 * spec.catalyst_dim;
    std::set<int> seen;
    bool overlap = false;
    for (const auto& p : spec.swaps) {
        if (p.u < 0 || p.u >= n || p.d < 0 || p.d >= n) {
            v.emplace_back("swap index out of range");
            continue;
        }
        if (p.u == p.d) v.emplace_back("swap pair maps a state to itself");
        if (!(p.g > 0) || !std::isfinite(p.g)) v.emplace_back("coupling must be positive");
        if (!seen.insert(p.u).second || (p.u != p.d && !seen.insert(p.d).second)) overlap = true;
    }
    if (overlap) v.emplace_back("swap indices not disjoint");
    return v;
}

}  // namespace otto
