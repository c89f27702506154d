// mapping.hpp: discrete <-> continuous correspondence and matched-efficiency comparison

#pragma once

#include <stdexcept>
#include <vector>

#include "otto/continuous.hpp"
#include "otto/discrete.hpp"
#include "otto/engine_spec.hpp"

namespace otto {

struct MappingSingular : std::domain_error {
    using std::domain_error::domain_error;
};

// Relative gaps between each discrete quantity and its continuous partner.
// Extensive rows compare discrete = continuous * tau.
struct TableResiduals {
    double heat_hot = 0.0;
    double heat_cold = 0.0;
    double work = 0.0;
    double clausius = 0.0;
    double efficiency = 0.0;
    double catalysis = 0.0;  // max over levels of |discrete| + |continuous| residuals
};

struct EquivalenceReport {
    CatalystState catalyst;
    CycleReport cycle;
    SteadyStateReport steady;
    std::vector<double> tau_i;
    double tau = 0.0;  // mean of tau_i
    Efficiency eta_discrete;
    Efficiency eta_continuous;
    double eta_gap = 0.0;
    double work_per_cycle = 0.0;
    double power = 0.0;
    double p_times_tau_minus_w = 0.0;
    bool simple_permutation = false;
    double tau_uniform_residual = 0.0;
    TableResiduals table;
};

// Throws MappingSingular when some |delta_p_i| < 1e-13 or <p_i> = 0.
EquivalenceReport verify_equivalence(const EngineSpec& spec);

// Engine family sharing baths and coupling; omega_c is set per machine from eta.
struct FamilyParams {
    double omega_h = 1.0;
    double beta_h = 0.1;
    double beta_c = 1.0;
    double tau_eq = 1.0;
    double g = 10.0;
};

// beta_h omega_h, beta_c/beta_h and g tau_eq, with omega_h and tau_eq as units.
FamilyParams family_from_ratios(double beta_h_omega_h, double beta_c_over_beta_h, double g_tau_eq,
                                double tau_eq = 1.0, double omega_h = 1.0);

EngineSpec otto_at_efficiency(const FamilyParams& f, double eta);      // omega_c = omega_h (1 - eta)
EngineSpec catalytic_at_efficiency(const FamilyParams& f, double eta); // omega_c = 2 omega_h (1 - eta)

struct MachinePoint {
    double power = 0.0;
    double work = 0.0;
    double tau = 0.0;
    Regime regime = Regime::undefined;
};

struct Comparison {
    double eta = 0.0;
    MachinePoint otto;
    MachinePoint cat;
};

Comparison compare_at_efficiency(const FamilyParams& f, double eta);

}  // namespace otto
