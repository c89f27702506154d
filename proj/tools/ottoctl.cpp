// ottoctl: command-line front end (discrete, continuous, sweep, verify)
//
// Exit codes: 0 success, 1 check or numerical failure, 2 usage or config error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "otto/config.hpp"
#include "otto/qstate.hpp"
#include "otto/sweep.hpp"
#include "otto/verify.hpp"

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Usage("cannot write output file '" + path + "'");
    f << text;
    f.close();
    if (!f) throw Usage("failed writing output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stroke and steady-state quantum Otto engines, with and without a catalyst"};
    app.require_subcommand(1);

    std::string config, output;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    int points = 100;
    std::string fault;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* c = sub->add_option("--config", config, "run configuration file");
        if (need_config) c->required();
        sub->add_option("--output", output, "output path (default stdout)");
        sub->add_option("--seed", seed, "seed for randomized grids");
        sub->add_option("--threads", threads, "worker threads, 0 = auto")->check(CLI::Range(0, 1024));
    };
    auto* disc = app.add_subcommand("discrete", "two-stroke cycle report per point");
    auto* cont = app.add_subcommand("continuous", "steady-state report per point");
    auto* sweep = app.add_subcommand("sweep", "full discrete + continuous sweep to CSV");
    auto* verify = app.add_subcommand("verify", "run the oracle suite");
    add_common(disc, true);
    add_common(cont, true);
    add_common(sweep, true);
    add_common(verify, false);
    verify->add_option("--points", points, "random grid size")->check(CLI::Range(1, 100000));
    verify->add_option("--inject-fault", fault, "perturb one check's reference value (testing aid)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) {
            otto::VerifyOptions o;
            if (!config.empty()) {
                otto::SweepConfig c = otto::load_sweep_config(config);
                o.seed = c.seed;
                o.threads = c.threads;
            }
            if (seed) o.seed = *seed;
            if (threads) o.threads = *threads;
            o.n_points = points;
            o.inject_fault = fault;
            otto::VerifyReport r = otto::run_verification(o);
            std::string text = "seed " + std::to_string(o.seed) + ", " + std::to_string(o.n_points) + " points\n" + r.text();
            emit(text, output);
            if (!output.empty() && output != "-") std::cout << text;
            return r.all_pass() ? 0 : 1;
        }
        otto::SweepConfig c = otto::load_sweep_config(config);
        if (seed) c.seed = *seed;
        if (threads) c.threads = *threads;
        otto::RunMode mode = *disc ? otto::RunMode::discrete : *cont ? otto::RunMode::continuous : otto::RunMode::full;
        emit(otto::run_to_csv(c, mode, c.threads), output);
        return 0;
    } catch (const otto::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Usage& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 1;
    }
}
