// analytic.hpp: closed forms for the Otto and qubit-catalyst engines
//
// Formulas are written out term by term, not simplified, so that a wrong
// transcription shows up against the numerical solver.

#pragma once

#include <optional>

namespace otto::analytic {

// (a_h - a_c)/((1 + a_h)(1 + a_c)); a in [0, 1].
double otto_delta_p(double a_h, double a_c);

// (2 G_h G_c/(G_h + G_c)) dp / (1 + G_h G_c / g^2)
double otto_current(double gamma_h, double gamma_c, double g, double delta_p);

enum class TauRegime { otto, catalytic };

struct TauBreakdown {
    double tau = 0.0;
    std::optional<double> zeta;   // set only when both baths share tau_eq
    std::optional<double> kappa;
    TauRegime regime = TauRegime::otto;
};

// Arguments are the relaxation rates Gamma_k = (gamma_+ + gamma_-)/2.
TauBreakdown otto_tau(double gamma_h, double gamma_c, double g);

// Catalyst ground-level population (1 + a_h)/(1 + 2a_h + a_c).
double cat_population(double a_h, double a_c);

struct SignedMagnitude {
    double magnitude = 0.0;
    int sign = 0;  // sign of (a_c - a_h^2)
    double value() const { return sign * magnitude; }
};

// |a_h^2 - a_c| / ((1 + a_h)(1 + a_c)(1 + 2a_h + a_c)) with sign of (a_c - a_h^2).
SignedMagnitude cat_delta_p(double a_h, double a_c);

struct RateConstants {
    double alpha1 = 0, alpha2 = 0, phi1 = 0, phi2 = 0, xi1 = 0, xi2 = 0;
    double A_rate = 0, B_rate = 0;
    double a_h = 0, a_c = 0;
    // Inputs kept for the equal-tau_eq reduction.
    double gamma_h_plus = 0, gamma_h_minus = 0, gamma_c_plus = 0, gamma_c_minus = 0;
};

RateConstants rate_constants(double gamma_h_plus, double gamma_h_minus, double gamma_c_plus, double gamma_c_minus);

// Three-term denominator of the catalytic current.
double cat_denominator(const RateConstants& k, double g);

// delta_p / cat_denominator. Throws std::domain_error if the denominator is <= 0.
double cat_current(const RateConstants& k, double g, double delta_p);

// tau = cat_denominator. When Gamma_h = Gamma_c, zeta and kappa are filled and
// tau = zeta tau_eq (1 + kappa/(g tau_eq)^2) is asserted to 1e-10.
TauBreakdown cat_tau(const RateConstants& k, double g);

// tau_cat written in terms of the two equilibration times.
double cat_tau_from_times(double a_h, double a_c, double tau_h, double tau_c, double g);

double zeta(double a_h, double a_c);
double kappa(double a_h, double a_c);
double one_minus_zeta(double a_h, double a_c);
double one_minus_kappa(double a_h, double a_c);

struct Efficiencies {
    double otto = 0.0;
    double catalytic = 0.0;
    double carnot = 0.0;
};

Efficiencies efficiencies(double omega_h, double omega_c, double beta_h, double beta_c);

}  // namespace otto::analytic
