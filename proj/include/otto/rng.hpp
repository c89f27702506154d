// rng.hpp: reproducible uniform draws
//
// std::mt19937_64 output is fixed by the standard; the standard distributions
// are not, so uniforms are built from the top 53 bits by hand.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace otto {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Open interval (0, 1).
    double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // 10^U(lo_exp, hi_exp)
    double log_uniform(double lo_exp, double hi_exp) { return std::pow(10.0, uniform(lo_exp, hi_exp)); }

private:
    std::mt19937_64 eng_;
};

}  // namespace otto
