// discrete.hpp: two-stroke engine (permutation work stroke, thermalizing heat stroke)

#pragma once

#include <vector>

#include "otto/efficiency.hpp"
#include "otto/engine_spec.hpp"
#include "otto/qstate.hpp"

namespace otto {

struct CatalystState {
    std::vector<double> populations;

    std::vector<std::string> violations(int expected_dim) const;
};

struct CycleReport {
    std::vector<double> delta_p;
    double q_hot = 0.0;
    double q_cold = 0.0;
    double work = 0.0;
    Efficiency efficiency;
    double clausius_margin = 0.0;    // -(beta_h Q_h + beta_c Q_c)
    double catalyst_residual = 0.0;  // max |cat - Tr_hc[S rho S^dag]| populations
    double heat_route_gap = 0.0;     // max |Q_k(trace) - Q_k(flows)|
};

// S swaps u_i <-> d_i and fixes everything else.
Operator permutation_matrix(const EngineSpec& spec);

// diag(cat) (x) gibbs(hot) (x) gibbs(cold)
DensityMatrix build_initial_state(const EngineSpec& spec, const CatalystState& cat);

// p_u - p_d per pair. Input must be diagonal to 1e-12.
std::vector<double> probability_flows(const EngineSpec& spec, const DensityMatrix& rho);

// Catalyst populations making every delta_p_i equal, from a linear solve
// (consecutive equalities plus normalization). catalyst_dim = 1 returns {1}.
CatalystState solve_catalyst(const EngineSpec& spec);

CycleReport run_cycle(const EngineSpec& spec, const CatalystState& cat);

// Work stroke then heat stroke: Tr_hc[S rho S^dag] (x) fresh Gibbs qubits.
DensityMatrix full_cycle(const EngineSpec& spec, const DensityMatrix& rho);

double clausius_check(const CycleReport& report, double beta_h, double beta_c);

}  // namespace otto
