#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "otto/engine_spec.hpp"
#include "otto/rng.hpp"

using namespace otto;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

BathParams hot() { return BathParams::from_damping(0.5, 1.0, 1.2); }
BathParams cold() { return BathParams::from_damping(2.0, 0.4, 0.7); }

}  // namespace

TEST_CASE("bath constructors obey detailed balance") {
    BathParams b = BathParams::from_damping(0.7, 1.3, 2.0);
    CHECK(b.gamma_plus / b.gamma_minus == doctest::Approx(std::exp(-0.7 * 1.3)).epsilon(1e-15));
    CHECK(b.relaxation_rate() == doctest::Approx(0.5 * (b.gamma_plus + b.gamma_minus)));

    BathParams t = BathParams::from_equilibration_time(0.7, 1.3, 2.5);
    CHECK(t.equilibration_time() == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(t.gamma_minus == doctest::Approx(2.0 / (2.5 * (1 + t.gibbs_factor()))));
    CHECK(t.violations().empty());

    CHECK_THROWS_AS(BathParams::from_rates(0.5, 1.0, 0.5, 1.0), std::domain_error);
    CHECK_NOTHROW(BathParams::from_rates(0.5, 1.0, std::exp(-0.5), 1.0));
    CHECK_THROWS_AS(BathParams::from_damping(0.5, 1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(BathParams::from_damping(0.5, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(BathParams::from_equilibration_time(0.5, 1.0, 0.0), std::domain_error);
}

TEST_CASE("otto_spec") {
    EngineSpec s = otto_spec(hot(), cold(), 0.3);
    CHECK(s.catalyst_dim == 1);
    CHECK(s.swaps.size() == 1);
    CHECK(s.layout().factor_dims() == std::vector<int>{1, 2, 2});
    CHECK(s.swaps[0].u == 2);  // |10>
    CHECK(s.swaps[0].d == 1);  // |01>
    PairEnergetics e = energy_differences(s, 0);
    CHECK(e.d_eps_h == 1.0);
    CHECK(e.d_eps_c == -0.4);
    CHECK(e.omega_i == 1.0 - 0.4);
    CHECK(validate(s).empty());

    BathParams broken = hot();
    broken.gamma_plus *= 1.01;
    CHECK_THROWS_AS(otto_spec(broken, cold(), 0.3), std::domain_error);
    CHECK_THROWS_AS(otto_spec(hot(), cold(), 0.0), std::domain_error);
}

TEST_CASE("qubit_catalyst_spec") {
    EngineSpec s = qubit_catalyst_spec(hot(), cold(), 0.3);
    CHECK(s.catalyst_dim == 2);
    CHECK(s.layout().factor_dims() == std::vector<int>{2, 2, 2});
    REQUIRE(s.swaps.size() == 2);
    CHECK(s.swaps[0].u == basis_index(2, 1, 0, 0));
    CHECK(s.swaps[0].d == basis_index(2, 0, 1, 0));
    CHECK(s.swaps[1].u == basis_index(2, 0, 0, 1));
    CHECK(s.swaps[1].d == basis_index(2, 1, 1, 0));

    PairEnergetics e1 = energy_differences(s, 0);
    CHECK(e1.d_eps_h == -1.0);
    CHECK(e1.d_eps_c == 0.0);
    CHECK(e1.omega_i == -1.0);
    PairEnergetics e2 = energy_differences(s, 1);
    CHECK(e2.d_eps_h == -1.0);
    CHECK(e2.d_eps_c == 0.4);
    CHECK(e2.omega_i == -1.0 + 0.4);
    CHECK_THROWS_AS(energy_differences(s, 2), std::out_of_range);
}

TEST_CASE("hamiltonians") {
    EngineSpec s = otto_spec(BathParams::from_damping(0.5, 1.0, 1.0), cold(), 0.3);
    auto [hh, hc] = hamiltonians(s);
    CHECK(hh.matrix().diagonal().real() == Eigen::Vector4d(0, 0, 1, 1));
    CHECK(hc.matrix().diagonal().real() == Eigen::Vector4d(0, 0.4, 0, 0.4));
    CHECK((hh * hc - hc * hh).max_abs() == 0.0);
    int ket10 = basis_index(1, 0, 1, 0);
    CHECK((hh + hc)(ket10, ket10).real() == 1.0);
}

TEST_CASE("validate reports violations") {
    EngineSpec s = qubit_catalyst_spec(hot(), cold(), 0.3);
    CHECK(validate(s).empty());

    EngineSpec overlap = s;
    overlap.swaps[1].u = overlap.swaps[0].d;
    CHECK(has(validate(overlap), "swap indices not disjoint"));

    EngineSpec db = s;
    db.cold.gamma_plus *= 2;
    CHECK(has(validate(db), "detailed balance violated"));

    EngineSpec neg = s;
    neg.hot.gamma_minus = -1;
    CHECK_FALSE(validate(neg).empty());

    EngineSpec range = s;
    range.swaps[0].u = 99;
    CHECK(has(validate(range), "swap index out of range"));

    EngineSpec self = s;
    self.swaps[0].d = self.swaps[0].u;
    CHECK_FALSE(validate(self).empty());
}

TEST_CASE("shipped engines validate and resonate for random detailed-balance inputs") {
    Rng rng(19);
    for (int i = 0; i < 500; ++i) {
        BathParams h = BathParams::from_damping(rng.uniform(0, 3), rng.uniform(0.1, 3), rng.log_uniform(-2, 2));
        BathParams c = BathParams::from_equilibration_time(rng.uniform(0, 3), rng.uniform(0.1, 3), rng.log_uniform(-2, 2));
        double g = rng.log_uniform(-2, 1);
        for (const EngineSpec& s : {otto_spec(h, c, g), qubit_catalyst_spec(h, c, g)}) {
            CHECK(validate(s).empty());
            for (std::size_t k = 0; k < s.swaps.size(); ++k) {
                PairEnergetics e = energy_differences(s, k);
                CHECK(e.omega_i == e.d_eps_h + e.d_eps_c);
            }
        }
    }
}
