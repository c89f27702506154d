// sweep.hpp: parameter points, result rows, CSV emission, worker pool

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "otto/config.hpp"
#include "otto/engine_spec.hpp"

namespace otto {

enum class RunMode { discrete, continuous, full };

struct Task {
    EngineKind engine = EngineKind::otto;
    std::string parameter;  // empty for a single fixed point
    double value = 0.0;
    EngineSpec spec;
    std::optional<double> eta_target;  // analytic efficiency of the family
};

struct ResultRow {
    std::vector<std::pair<std::string, std::string>> cells;  // column -> formatted value
    const std::string& get(const std::string& column) const;
};

// Documented column order for each mode.
const std::vector<std::string>& column_names(RunMode mode);

// Rows sorted by sweep value, then engine order in the config.
std::vector<Task> build_tasks(const SweepConfig& config);

ResultRow evaluate_task(const Task& task, RunMode mode);

// threads = 0 picks the hardware concurrency. Output order equals input order.
std::vector<ResultRow> evaluate_all(const std::vector<Task>& tasks, RunMode mode, int threads);

// Runs fn(i) for i in [0, n) on a bounded pool; rethrows the lowest-index failure.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// Requested columns must exist in the mode; output keeps the documented order.
std::string to_csv(const std::vector<ResultRow>& rows, RunMode mode, const std::vector<std::string>& columns);

// %.17g, or NA for non-finite input.
std::string format_number(double x);

std::string run_to_csv(const SweepConfig& config, RunMode mode, int threads);

}  // namespace otto
