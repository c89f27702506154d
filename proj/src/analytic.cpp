#include "otto/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace otto::analytic {

namespace {

void check_factor(double a, const char* who) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error(std::string(who) + ": Gibbs factor outside [0, 1]");
}

void check_rate(double r, const char* who) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error(std::string(who) + ": rates must be positive");
}

}  // namespace

double otto_delta_p(double a_h, double a_c) {
    check_factor(a_h, "otto_delta_p");
    check_factor(a_c, "otto_delta_p");
    return (a_h - a_c) / ((1 + a_h) * (1 + a_c));
}

double otto_current(double gamma_h, double gamma_c, double g, double delta_p) {
    check_rate(gamma_h, "otto_current");
    check_rate(gamma_c, "otto_current");
    check_rate(g, "otto_current");
    return (2 * gamma_h * gamma_c / (gamma_h + gamma_c)) * delta_p / (1 + gamma_h * gamma_c / (g * g));
}

TauBreakdown otto_tau(double gamma_h, double gamma_c, double g) {
    check_rate(gamma_h, "otto_tau");
    check_rate(gamma_c, "otto_tau");
    check_rate(g, "otto_tau");
    TauBreakdown t;
    t.regime = TauRegime::otto;
    t.tau = (1 + gamma_h * gamma_c / (g * g)) * ((gamma_h + gamma_c) / (2 * gamma_h * gamma_c));
    if (std::abs(gamma_h - gamma_c) <= 1e-12 * std::max(gamma_h, gamma_c)) {
        t.zeta = 1.0;
        t.kappa = 1.0;
    }
    return t;
}

double cat_population(double a_h, double a_c) {
    check_factor(a_h, "cat_population");
    check_factor(a_c, "cat_population");
    return (1 + a_h) / (1 + 2 * a_h + a_c);
}

SignedMagnitude cat_delta_p(double a_h, double a_c) {
    check_factor(a_h, "cat_delta_p");
    check_factor(a_c, "cat_delta_p");
    double num = a_c - a_h * a_h;
    SignedMagnitude s;
    s.magnitude = std::abs(a_h * a_h - a_c) / ((1 + a_h) * (1 + a_c) * (1 + 2 * a_h + a_c));
    s.sign = num > 0 ? 1 : (num < 0 ? -1 : 0);
    return s;
}

RateConstants rate_constants(double ghp, double ghm, double gcp, double gcm) {
    for (double r : {ghp, ghm, gcp, gcm}) check_rate(r, "rate_constants");
    RateConstants k;
    k.gamma_h_plus = ghp;
    k.gamma_h_minus = ghm;
    k.gamma_c_plus = gcp;
    k.gamma_c_minus = gcm;
    const double sum = gcp + gcm + ghp + ghm;
    k.alpha1 = (gcm + ghm) / (ghp * sum);
    k.alpha2 = (gcm + ghm + ghp) / (ghp * sum);
    k.phi1 = (gcm + ghm) * (gcp + ghp) / (gcm * ghp * sum);
    k.phi2 = gcp * (gcm + ghm) / (gcm * ghp * sum);
    k.xi1 = (gcp + ghp) / (gcm * sum);
    k.xi2 = gcp / (gcm * sum);
    k.A_rate = ghm + ghp + 2 * gcp - 4 * gcm * gcp / (ghm + ghp + 2 * gcm);
    k.B_rate = ghm + ghp + gcm + gcp;
    k.a_h = ghp / ghm;
    k.a_c = gcp / gcm;
    return k;
}

double cat_denominator(const RateConstants& k, double g) {
    check_rate(g, "cat_denominator");
    const double ah = k.a_h, ac = k.a_c;
    const double g2 = g * g;
    double t1 = ((ac + ah) / (1 + ac + 2 * ah)) * (k.alpha2 + k.A_rate / (4 * g2));
    double t2 = ((1 + ah) / (1 + ac + 2 * ah)) * (k.phi1 + k.B_rate / (4 * g2));
    double t3 = (ah * ah - ac) * (k.alpha1 + k.phi1 + k.xi1 + k.alpha2 + k.phi2 + k.xi2) /
                ((1 + ac) * (1 + ah) * (1 + ac + 2 * ah));
    return t1 + t2 + t3;
}

double cat_current(const RateConstants& k, double g, double delta_p) {
    double den = cat_denominator(k, g);
    if (!(den > 0)) throw std::domain_error("cat_current: non-positive denominator");
    return delta_p / den;
}

TauBreakdown cat_tau(const RateConstants& k, double g) {
    TauBreakdown t;
    t.regime = TauRegime::catalytic;
    t.tau = cat_denominator(k, g);
    if (!(t.tau > 0)) throw std::domain_error("cat_tau: non-positive denominator");
    const double gh = 0.5 * (k.gamma_h_plus + k.gamma_h_minus);
    const double gc = 0.5 * (k.gamma_c_plus + k.gamma_c_minus);
    if (std::abs(gh - gc) <= 1e-12 * std::max(gh, gc)) {
        const double teq = 1.0 / gh;
        t.zeta = zeta(k.a_h, k.a_c);
        t.kappa = kappa(k.a_h, k.a_c);
        double reduced = *t.zeta * teq * (1 + *t.kappa / ((g * teq) * (g * teq)));
        if (std::abs(reduced - t.tau) > 1e-10 * t.tau)
            throw std::logic_error("cat_tau: equal-tau_eq reduction does not reproduce tau");
    }
    return t;
}

double cat_tau_from_times(double ah, double ac, double th, double tc, double g) {
    check_factor(ah, "cat_tau_from_times");
    check_factor(ac, "cat_tau_from_times");
    double s = tc + th;
    double lead = 0.5 * (((1 + ah * (1 + ac + ah)) / ((1 + ah) * (1 + ac + 2 * ah))) * tc * tc / s +
                         ((1 + 3 * ah + ac * (3 + ah)) / ((1 + ac) * (1 + ac + 2 * ah))) * th * th / s +
                         2 * th * tc / s);
    double coup = (1 + ah) / (2 * (tc + ac * tc + 2 * ah * tc)) + 1 / (2 * th) +
                  ac * (ac + ah) / ((1 + ac + 2 * ah) * (tc + ac * tc + 2 * th));
    return lead + coup / (g * g);
}

double zeta(double ah, double ac) {
    return 0.25 * (3 + 1 / (1 + ac) - 1 / (1 + ah) + (1 + 3 * ac) / ((1 + ac) * (1 + ac + 2 * ah)));
}

double kappa(double ah, double ac) {
    double num = 2 * (1 + ac) * (1 + ah) * (6 + 9 * ah + ac * (5 + 3 * ac + 5 * ah));
    double den = (3 + ac) * (4 + 2 * ac * (4 + ac) + (1 + ac) * (11 + 3 * ac) * ah + 2 * (4 + 3 * ac) * ah * ah);
    return num / den;
}

double one_minus_zeta(double ah, double ac) {
    return (ah + 2 * ac * ah * (1 + ah) + ac * ac * (2 + ah)) / (4 * (1 + ac) * (1 + ah) * (1 + ac + 2 * ah));
}

double one_minus_kappa(double ah, double ac) {
    double num = (1 - ac) * (2 * (2 * ac + 3) * ah * ah + 3 * (ac + 1) * (ac + 1) * ah + 2 * ac * (2 * ac + 3));
    double den = (3 + ac) * (4 + 2 * ac * (4 + ac) + (1 + ac) * (11 + 3 * ac) * ah + 2 * (4 + 3 * ac) * ah * ah);
    return num / den;
}

Efficiencies efficiencies(double omega_h, double omega_c, double beta_h, double beta_c) {
    if (!(omega_h > 0) || !(omega_c > 0)) throw std::domain_error("efficiencies: frequencies must be positive");
    if (!(beta_c > beta_h) || beta_h < 0) throw std::domain_error("efficiencies: need beta_c > beta_h >= 0");
    return {1 - omega_c / omega_h, 1 - omega_c / (2 * omega_h), 1 - beta_h / beta_c};
}

}  // namespace otto::analytic
