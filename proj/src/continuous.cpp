#include "otto/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otto {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// J X J^dag - (1/2){J^dag J, X}
Matrix jump_term(const Matrix& j) {
    const Eigen::Index d = j.rows();
    Matrix id = Matrix::Identity(d, d);
    Matrix jj = j.adjoint() * j;
    return kron(j.conjugate(), j) - 0.5 * kron(id, jj) - 0.5 * kron(jj.transpose(), id);
}

Matrix lowering() {
    Matrix l = Matrix::Zero(2, 2);
    l(0, 1) = 1.0;
    return l;
}

double rate_scale(const EngineSpec& spec) {
    double s = std::max(spec.hot.relaxation_rate(), spec.cold.relaxation_rate());
    for (const auto& p : spec.swaps) s = std::max(s, p.g);
    return s;
}

double energy_scale(const EngineSpec& spec) { return std::max(spec.hot.omega, spec.cold.omega); }

}  // namespace

Superoperator::Superoperator(HilbertLayout layout, Matrix m) : layout_(std::move(layout)), m_(std::move(m)) {
    const Eigen::Index n = static_cast<Eigen::Index>(layout_.total_dim()) * layout_.total_dim();
    if (m_.rows() != n || m_.cols() != n) throw std::domain_error("superoperator dimension does not match layout");
}

Operator Superoperator::apply(const Operator& x) const {
    if (x.layout() != layout_) throw std::domain_error("superoperator apply: layout mismatch");
    return {layout_, unvec(m_ * vec(x.matrix()), dim())};
}

Operator Superoperator::apply_adjoint(const Operator& o) const {
    if (o.layout() != layout_) throw std::domain_error("superoperator apply_adjoint: layout mismatch");
    // Hilbert-Schmidt adjoint of a Hermiticity-preserving map is the conjugate transpose.
    return {layout_, unvec(m_.adjoint() * vec(o.matrix()), dim())};
}

Superoperator Superoperator::operator+(const Superoperator& o) const {
    if (o.layout_ != layout_) throw std::domain_error("superoperator sum: layout mismatch");
    return {layout_, m_ + o.m_};
}

bool Superoperator::trace_preserving(double tol) const {
    return apply_adjoint(Operator::identity(layout_)).max_abs() <= tol;
}

Matrix vec(const Matrix& x) { return x.reshaped(x.size(), 1); }

Matrix unvec(const Matrix& v, int d) {
    if (v.size() != static_cast<Eigen::Index>(d) * d) throw std::domain_error("unvec: size mismatch");
    return v.reshaped(d, d);
}

Superoperator left_mult(const Operator& a) {
    Matrix id = Matrix::Identity(a.dim(), a.dim());
    return {a.layout(), kron(id, a.matrix())};
}

Superoperator right_mult(const Operator& b) {
    Matrix id = Matrix::Identity(b.dim(), b.dim());
    return {b.layout(), kron(b.matrix().transpose(), id)};
}

Superoperator commutator_super(const Operator& h) {
    const cplx mi(0.0, -1.0);
    return {h.layout(), mi * (left_mult(h).matrix() - right_mult(h).matrix())};
}

Operator build_interaction(const EngineSpec& spec) {
    HilbertLayout L = spec.layout();
    Matrix v = Matrix::Zero(L.total_dim(), L.total_dim());
    for (const auto& p : spec.swaps) {
        v(p.u, p.d) += p.g;
        v(p.d, p.u) += p.g;
    }
    return {L, v};
}

Superoperator build_dissipator(const HilbertLayout& layout, const BathParams& bath, Qubit which) {
    auto bad = bath.violations();
    if (!bad.empty()) throw std::domain_error("build_dissipator: " + bad.front());
    Matrix l = embed(layout, static_cast<std::size_t>(which), lowering()).matrix();
    Matrix m = bath.gamma_minus * jump_term(l) + bath.gamma_plus * jump_term(l.adjoint());
    return {layout, m};
}

Superoperator build_liouvillian(const EngineSpec& spec) {
    auto bad = validate(spec);
    if (!bad.empty()) throw std::domain_error("build_liouvillian: " + bad.front());
    HilbertLayout L = spec.layout();
    return commutator_super(build_interaction(spec)) + build_dissipator(L, spec.hot, Qubit::hot) +
           build_dissipator(L, spec.cold, Qubit::cold);
}

StationaryState stationary_state(const Superoperator& L) {
    const Matrix& m = L.matrix();
    const int d = L.dim();
    const Eigen::Index n = m.rows();
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);

    Eigen::ComplexEigenSolver<Matrix> es(m, true);
    if (es.info() != Eigen::Success) throw NumericalInconsistency("stationary_state: eigensolver failed");
    const auto& ev = es.eigenvalues();

    Eigen::Index k0 = 0;
    for (Eigen::Index k = 1; k < n; ++k)
        if (std::abs(ev(k)) < std::abs(ev(k0))) k0 = k;
    int near_zero = 0;
    double max_re = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(ev(k).real()) < 1e-10 * scale) ++near_zero;
        if (k != k0) max_re = std::max(max_re, ev(k).real());
    }
    if (near_zero >= 2) throw std::domain_error("non-ergodic Liouvillian: steady state not unique");

    Matrix x = unvec(es.eigenvectors().col(k0), d);
    x /= x.trace();
    x = 0.5 * (x + x.adjoint()).eval();

    // Bordered solve: row 0 replaced by the trace functional.
    Matrix a = m;
    Matrix b = Matrix::Zero(n, 1);
    a.row(0).setZero();
    for (int k = 0; k < d; ++k) a(0, static_cast<Eigen::Index>(k) * (d + 1)) = 1.0;
    b(0) = 1.0;
    Matrix y = unvec(Eigen::PartialPivLU<Matrix>(a).solve(b), d);
    y = 0.5 * (y + y.adjoint()).eval();

    StationaryState out;
    out.solver_gap = (x - y).cwiseAbs().maxCoeff();
    if (!(out.solver_gap <= 1e-9))
        throw NumericalInconsistency("stationary_state: eigenvector and bordered LU solutions disagree");
    out.rho = DensityMatrix(Operator(L.layout(), x));
    out.spectral_gap = n > 1 ? -max_re : 0.0;
    out.residual = (m * vec(x)).cwiseAbs().maxCoeff();
    if (out.residual > 1e-10 * std::max(1.0, scale))
        throw NumericalInconsistency("stationary_state: kernel residual above tolerance");
    out.rho.validate();
    return out;
}

std::vector<double> probability_currents(const EngineSpec& spec, const DensityMatrix& rho_ss) {
    if (rho_ss.layout() != spec.layout()) throw std::domain_error("probability_currents: layout mismatch");
    std::vector<double> out;
    const cplx i1(0.0, 1.0);
    for (const auto& p : spec.swaps) {
        cplx c = i1 * p.g * (rho_ss.matrix()(p.d, p.u) - rho_ss.matrix()(p.u, p.d));
        if (std::abs(c.imag()) > 1e-10) throw NumericalInconsistency("probability_currents: complex current");
        out.push_back(c.real());
    }
    return out;
}

NessChecks ness_condition_checks(const EngineSpec& spec, const DensityMatrix& rho_ss) {
    HilbertLayout L = spec.layout();
    Operator v0 = build_interaction(spec);
    NessChecks c;
    c.int_vanish[0] = std::abs(expectation(build_dissipator(L, spec.hot, Qubit::hot).apply_adjoint(v0), rho_ss));
    c.int_vanish[1] = std::abs(expectation(build_dissipator(L, spec.cold, Qubit::cold).apply_adjoint(v0), rho_ss));

    auto cur = probability_currents(spec, rho_ss);
    double jh = 0.0, jc = 0.0;
    for (std::size_t i = 0; i < spec.swaps.size(); ++i) {
        PairEnergetics e = energy_differences(spec, i);
        jh += e.d_eps_h * cur[i];
        jc += e.d_eps_c * cur[i];
    }
    c.clausius_margin = -(spec.hot.beta * jh + spec.cold.beta * jc);

    for (int m = 0; m < spec.catalyst_dim; ++m) {
        double s = 0.0;
        for (std::size_t i = 0; i < spec.swaps.size(); ++i) {
            int du = L.digits(spec.swaps[i].u)[0] == m ? 1 : 0;
            int dd = L.digits(spec.swaps[i].d)[0] == m ? 1 : 0;
            s += (du - dd) * cur[i];
        }
        c.catalysis_residuals.push_back(s);
    }
    return c;
}

double entropy_production_rate(const EngineSpec& spec, const DensityMatrix& rho_ss) {
    HilbertLayout L = spec.layout();
    Operator v0 = build_interaction(spec);
    auto [hh, hc] = hamiltonians(spec);
    double sigma = 0.0;
    for (Qubit q : {Qubit::hot, Qubit::cold}) {
        Superoperator dk = build_dissipator(L, spec.bath(q), q);
        const Operator& h = q == Qubit::hot ? hh : hc;
        double j = expectation(dk.apply_adjoint(h + v0), rho_ss).real();
        double iv = expectation(dk.apply_adjoint(v0), rho_ss).real();
        sigma -= spec.bath(q).beta * (j - iv);
    }
    return sigma;
}

SteadyStateReport currents_and_power(const EngineSpec& spec, const StationaryState& ss) {
    SteadyStateReport r;
    r.rho_ss = ss.rho;
    r.spectral_gap = ss.spectral_gap;
    r.currents = probability_currents(spec, ss.rho);
    for (std::size_t i = 0; i < spec.swaps.size(); ++i) {
        PairEnergetics e = energy_differences(spec, i);
        r.j_hot += e.d_eps_h * r.currents[i];
        r.j_cold += e.d_eps_c * r.currents[i];
        r.power += e.omega_i * r.currents[i];
    }
    r.first_law_residual = std::abs(r.power - r.j_hot - r.j_cold);

    // Second route: J_k = <D_k^dag[H_0k + V0]>.
    HilbertLayout L = spec.layout();
    Operator v0 = build_interaction(spec);
    auto [hh, hc] = hamiltonians(spec);
    double jh2 = expectation(build_dissipator(L, spec.hot, Qubit::hot).apply_adjoint(hh + v0), ss.rho).real();
    double jc2 = expectation(build_dissipator(L, spec.cold, Qubit::cold).apply_adjoint(hc + v0), ss.rho).real();
    r.current_route_gap = std::max(std::abs(jh2 - r.j_hot), std::abs(jc2 - r.j_cold));
    const double jscale = std::max({1.0, std::abs(r.j_hot), std::abs(r.j_cold)});
    if (r.current_route_gap > 1e-9 * jscale)
        throw NumericalInconsistency("currents_and_power: flow and dissipator heat currents disagree");

    r.efficiency = Efficiency::from(r.power, r.j_hot, 1e-14 * energy_scale(spec) * rate_scale(spec));
    NessChecks c = ness_condition_checks(spec, ss.rho);
    r.clausius_margin = c.clausius_margin;
    r.int_vanish_residuals = c.int_vanish;
    r.catalysis_residuals = c.catalysis_residuals;
    r.entropy_production = entropy_production_rate(spec, ss.rho);
    return r;
}

SteadyStateReport solve_steady_state(const EngineSpec& spec) {
    return currents_and_power(spec, stationary_state(build_liouvillian(spec)));
}

}  // namespace otto
