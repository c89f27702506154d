#include "otto/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otto {

namespace {

constexpr double kDiagTol = 1e-12;
constexpr double kHeatTol = 1e-12;

// Weight of the (h, c) part of flat index k under the product Gibbs state.
double qubit_weight(const EngineSpec& spec, int k) {
    auto dig = spec.layout().digits(k);
    DensityMatrix rh = gibbs_qubit(spec.hot.beta, spec.hot.omega);
    DensityMatrix rc = gibbs_qubit(spec.cold.beta, spec.cold.omega);
    return rh.population(dig[1]) * rc.population(dig[2]);
}

}  // namespace

std::vector<std::string> CatalystState::violations(int expected_dim) const {
    std::vector<std::string> v;
    if (static_cast<int>(populations.size()) != expected_dim) {
        v.emplace_back("catalyst dimension mismatch");
        return v;
    }
    double sum = 0.0;
    for (double p : populations) {
        if (!std::isfinite(p) || p < 0) v.emplace_back("negative or non-finite catalyst population");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) v.emplace_back("catalyst populations do not sum to 1");
    return v;
}

Operator permutation_matrix(const EngineSpec& spec) {
    auto v = validate(spec);
    for (auto& s : v)
        if (s == "swap indices not disjoint" || s == "swap index out of range" ||
            s == "swap pair maps a state to itself")
            throw std::domain_error("permutation_matrix: " + s);
    HilbertLayout L = spec.layout();
    const int n = L.total_dim();
    std::vector<int> image(n);
    for (int k = 0; k < n; ++k) image[k] = k;
    for (const auto& p : spec.swaps) std::swap(image[p.u], image[p.d]);
    Matrix s = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) s(image[k], k) = 1.0;
    return {L, s};
}

DensityMatrix build_initial_state(const EngineSpec& spec, const CatalystState& cat) {
    auto v = cat.violations(spec.catalyst_dim);
    if (!v.empty()) throw std::domain_error("build_initial_state: " + v.front());
    Operator rs = Operator::diagonal(HilbertLayout({spec.catalyst_dim}), cat.populations);
    DensityMatrix rh = gibbs_qubit(spec.hot.beta, spec.hot.omega);
    DensityMatrix rc = gibbs_qubit(spec.cold.beta, spec.cold.omega);
    return DensityMatrix(tensor(tensor(rs, rh.op()), rc.op()));
}

std::vector<double> probability_flows(const EngineSpec& spec, const DensityMatrix& rho) {
    if (rho.layout() != spec.layout()) throw std::domain_error("probability_flows: layout mismatch");
    Matrix off = rho.matrix();
    off.diagonal().setZero();
    if (off.size() > 0 && off.cwiseAbs().maxCoeff() > kDiagTol)
        throw std::domain_error("probability_flows: state is not diagonal in the computational basis");
    std::vector<double> dp;
    dp.reserve(spec.swaps.size());
    for (const auto& p : spec.swaps) dp.push_back(rho.population(p.u) - rho.population(p.d));
    return dp;
}

CatalystState solve_catalyst(const EngineSpec& spec) {
    const int d = spec.catalyst_dim;
    if (d == 1) return {{1.0}};
    const HilbertLayout L = spec.layout();
    const std::size_t n = spec.swaps.size();

    // delta_p_i = c_i . q with q the catalyst populations.
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = spec.swaps[i];
        c(i, L.digits(p.u)[0]) += qubit_weight(spec, p.u);
        c(i, L.digits(p.d)[0]) -= qubit_weight(spec, p.d);
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(n > 0 ? n : 1);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, d);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    for (std::size_t i = 0; i + 1 < n; ++i) m.row(i) = c.row(i) - c.row(i + 1);
    m.row(rows - 1).setOnes();
    rhs(rows - 1) = 1.0;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    const char* msg = "no simple-permutation catalyst exists for this spec";
    if (qr.rank() < d) throw std::domain_error(msg);
    Eigen::VectorXd q = qr.solve(rhs);
    if ((m * q - rhs).cwiseAbs().maxCoeff() > 1e-12) throw std::domain_error(msg);
    CatalystState cat;
    for (Eigen::Index k = 0; k < d; ++k) {
        if (q(k) < -1e-12) throw std::domain_error(msg);
        cat.populations.push_back(std::max(0.0, q(k)));
    }
    return cat;
}

CycleReport run_cycle(const EngineSpec& spec, const CatalystState& cat) {
    auto v = validate(spec);
    if (!v.empty()) throw std::domain_error("run_cycle: " + v.front());
    DensityMatrix rho = build_initial_state(spec, cat);
    Operator s = permutation_matrix(spec);
    DensityMatrix after(s * rho.op() * s.adjoint());
    auto [hh, hc] = hamiltonians(spec);

    CycleReport r;
    Operator diff = rho.op() - after.op();
    r.q_hot = expectation(hh, DensityMatrix(diff)).real();
    r.q_cold = expectation(hc, DensityMatrix(diff)).real();

    r.delta_p = probability_flows(spec, rho);
    double qh_flow = 0.0, qc_flow = 0.0;
    for (std::size_t i = 0; i < spec.swaps.size(); ++i) {
        PairEnergetics e = energy_differences(spec, i);
        qh_flow += e.d_eps_h * r.delta_p[i];
        qc_flow += e.d_eps_c * r.delta_p[i];
    }
    const double scale = std::max({1.0, spec.hot.omega, spec.cold.omega});
    r.heat_route_gap = std::max(std::abs(qh_flow - r.q_hot), std::abs(qc_flow - r.q_cold));
    if (r.heat_route_gap > kHeatTol * scale)
        throw NumericalInconsistency("run_cycle: operator-trace and flow heats disagree");

    r.work = r.q_hot + r.q_cold;
    r.efficiency = Efficiency::from(r.work, r.q_hot, 1e-14 * scale);
    r.clausius_margin = -(spec.hot.beta * r.q_hot + spec.cold.beta * r.q_cold);

    DensityMatrix marginal = partial_trace(after, {0});
    for (int k = 0; k < spec.catalyst_dim; ++k)
        r.catalyst_residual = std::max(r.catalyst_residual, std::abs(marginal.population(k) - cat.populations[k]));
    return r;
}

DensityMatrix full_cycle(const EngineSpec& spec, const DensityMatrix& rho) {
    Operator s = permutation_matrix(spec);
    DensityMatrix after(s * rho.op() * s.adjoint());
    DensityMatrix rs = partial_trace(after, {0});
    DensityMatrix rh = gibbs_qubit(spec.hot.beta, spec.hot.omega);
    DensityMatrix rc = gibbs_qubit(spec.cold.beta, spec.cold.omega);
    return tensor(tensor(rs, rh), rc);
}

double clausius_check(const CycleReport& report, double beta_h, double beta_c) {
    return -(beta_h * report.q_hot + beta_c * report.q_cold);
}

}  // namespace otto
