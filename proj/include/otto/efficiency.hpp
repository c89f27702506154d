// efficiency.hpp: efficiency value tagged with the operating regime

#pragma once

#include <cmath>
#include <string>

namespace otto {

enum class Regime { engine, non_engine, undefined };

struct Efficiency {
    Regime regime = Regime::undefined;
    double value = 0.0;  // work/heat_in; meaningless when undefined

    // Undefined when |heat_in| <= floor. Engine when work > 0 and heat_in > 0.
    static Efficiency from(double work, double heat_in, double floor) {
        Efficiency e;
        if (!(std::abs(heat_in) > floor)) return e;
        e.value = work / heat_in;
        e.regime = (work > 0 && heat_in > 0) ? Regime::engine : Regime::non_engine;
        return e;
    }
    bool defined() const { return regime != Regime::undefined; }
};

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::engine: return "engine";
        case Regime::non_engine: return "non_engine";
        default: return "undefined";
    }
}

}  // namespace otto
