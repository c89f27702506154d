// continuous.hpp: local Lindblad generator, steady state, currents
//
// Vectorization stacks columns: vec(A X B) = (B^T (x) A) vec(X). Hence
// left multiplication by A is I (x) A and right multiplication by B is B^T (x) I.

#pragma once

#include <array>
#include <vector>

#include "otto/efficiency.hpp"
#include "otto/engine_spec.hpp"
#include "otto/qstate.hpp"

namespace otto {

class Superoperator {
public:
    Superoperator() = default;
    Superoperator(HilbertLayout layout, Matrix m);

    const HilbertLayout& layout() const { return layout_; }
    int dim() const { return layout_.total_dim(); }
    const Matrix& matrix() const { return m_; }

    Operator apply(const Operator& x) const;
    // Heisenberg-picture map: Tr[O L(X)] = Tr[L^dag(O) X].
    Operator apply_adjoint(const Operator& o) const;

    Superoperator operator+(const Superoperator& o) const;

    // L^dag(I) = 0 to tol.
    bool trace_preserving(double tol = 1e-10) const;

private:
    HilbertLayout layout_;
    Matrix m_;
};

Matrix vec(const Matrix& x);
Matrix unvec(const Matrix& v, int d);
Superoperator left_mult(const Operator& a);   // X -> A X
Superoperator right_mult(const Operator& b);  // X -> X B
Superoperator commutator_super(const Operator& h);  // X -> -i[H, X]

struct StationaryState {
    DensityMatrix rho;
    double spectral_gap = 0.0;
    double residual = 0.0;       // max |L(rho)|
    double solver_gap = 0.0;     // max |rho_eigen - rho_lu|
};

struct NessChecks {
    std::array<double, 2> int_vanish{0.0, 0.0};  // |<D_h^dag[V0]>|, |<D_c^dag[V0]>|
    double clausius_margin = 0.0;
    std::vector<double> catalysis_residuals;     // sum_i dlambda_i^m <p_i> per level m
};

struct SteadyStateReport {
    DensityMatrix rho_ss;
    std::vector<double> currents;
    double j_hot = 0.0;
    double j_cold = 0.0;
    double power = 0.0;
    Efficiency efficiency;
    double spectral_gap = 0.0;
    double clausius_margin = 0.0;
    std::array<double, 2> int_vanish_residuals{0.0, 0.0};
    std::vector<double> catalysis_residuals;
    double first_law_residual = 0.0;
    double current_route_gap = 0.0;  // max |J_k(flows) - J_k(dissipator)|
    double entropy_production = 0.0;
};

// V0 = sum_i g_i (|u_i><d_i| + |d_i><u_i|)
Operator build_interaction(const EngineSpec& spec);

// Local dissipator on the hot or cold qubit of `layout`, lowering operator |0><1|.
Superoperator build_dissipator(const HilbertLayout& layout, const BathParams& bath, Qubit which);

// -i[V0, .] + D_h + D_c
Superoperator build_liouvillian(const EngineSpec& spec);

// Kernel from a full eigendecomposition, cross-checked by a bordered LU solve.
// Throws std::domain_error when the kernel is degenerate.
StationaryState stationary_state(const Superoperator& L);

std::vector<double> probability_currents(const EngineSpec& spec, const DensityMatrix& rho_ss);

SteadyStateReport currents_and_power(const EngineSpec& spec, const StationaryState& ss);

NessChecks ness_condition_checks(const EngineSpec& spec, const DensityMatrix& rho_ss);

// sigma = -sum_k beta_k (J_k - <D_k^dag[V0]>)
double entropy_production_rate(const EngineSpec& spec, const DensityMatrix& rho_ss);

// build_liouvillian + stationary_state + currents_and_power
SteadyStateReport solve_steady_state(const EngineSpec& spec);

}  // namespace otto
