// verify.hpp: the oracle suite behind `ottoctl verify`

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otto/engine_spec.hpp"
#include "otto/rng.hpp"

namespace otto {

struct CheckResult {
    std::string name;
    double worst = 0.0;      // worst residual (or worst margin shortfall)
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20250101;
    int n_points = 100;
    int threads = 0;
    // Name of a check whose closed-form reference is scaled by (1 + 1e-6).
    std::string inject_fault;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    bool all_pass() const;
    std::string text() const;
};

// Random operating point: Gibbs factors in (0,1), damping rates over three
// decades, coupling over two decades, omega_h = 1.
struct GridPoint {
    double a_h = 0, a_c = 0;
    double omega_h = 1, omega_c = 0.5;
    double gamma_h_minus = 1, gamma_c_minus = 1;
    double g = 1;

    BathParams hot() const;
    BathParams cold() const;
};

GridPoint random_grid_point(Rng& rng);
std::vector<GridPoint> random_grid(std::uint64_t seed, int n);

// Residuals of the ten stationary population/coherence relations of the
// qubit-catalyst engine evaluated on a density matrix. Order: p100, p200,
// p101, p201, p110, p210, p111, p211, X2, X1.
std::vector<double> catalyst_stationary_relations(const EngineSpec& spec, const DensityMatrix& rho);

VerifyReport run_verification(const VerifyOptions& opts);

}  // namespace otto
