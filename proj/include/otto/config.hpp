// config.hpp: sectioned key = value files for runs and custom engines

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "otto/engine_spec.hpp"

namespace otto {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// section -> key -> raw value. Keys outside any section live under "".
using IniData = std::map<std::string, std::map<std::string, std::string>>;

IniData parse_ini(const std::string& text, const std::string& origin = "config");
IniData read_ini_file(const std::string& path);

enum class EngineKind { otto, qubit_catalyst, custom };

const char* engine_name(EngineKind k);

struct SweepRange {
    std::string parameter;
    double start = 0.0;
    double stop = 0.0;
    int points = 1;

    std::vector<double> values() const;  // ascending
};

struct SweepConfig {
    std::vector<EngineKind> engines{EngineKind::otto};
    std::string spec_file;               // custom engines
    std::optional<EngineSpec> custom;    // loaded from spec_file
    // Family parameters; omega_h and tau_eq fix the units.
    double beta_h_omega_h = 0.1;
    double beta_c_over_beta_h = 10.0;
    double g_tau_eq = 10.0;
    double tau_eq = 1.0;
    double omega_h = 1.0;
    std::optional<double> eta;
    std::optional<double> omega_c;
    std::optional<SweepRange> sweep;
    std::vector<std::string> columns;    // empty = all
    std::uint64_t seed = 20250101;
    int threads = 0;
};

// Strict: unknown sections or keys raise ConfigError naming them.
SweepConfig parse_sweep_config(const IniData& ini, const std::string& base_dir = ".");
SweepConfig load_sweep_config(const std::string& path);

// Custom engine file: catalyst_dim, hot.*, cold.*, swap.N = "u d g".
EngineSpec parse_engine_spec(const IniData& ini);
std::string format_engine_spec(const EngineSpec& spec);

}  // namespace otto
