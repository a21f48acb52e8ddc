// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "secsat/experiments.hpp"
#include "secsat/numerics.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerics = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy-outage curves for satellite downlinks with cooperative jamming relays"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "evaluate a scenario and emit CSV curves");
    std::string preset;
    std::string config;
    std::string out_path;
    std::uint64_t seed = 42;
    long long trials = 0;
    int threads = 0;
    run->add_option("--preset", preset, "named figure preset (fig2..fig7)");
    run->add_option("--config", config, "path to a JSON scenario file");
    run->add_option("--out", out_path, "output CSV path (default: stdout)");
    auto* seed_opt = run->add_option("--seed", seed, "random seed (default 42)");
    auto* trials_opt = run->add_option("--trials", trials, "override the scenario trial count");
    run->add_option("--threads", threads, "worker threads (default: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;  // --help exits cleanly
    }

    try {
        if (preset.empty() == config.empty()) {
            throw secsat::ScenarioError("pass exactly one of --preset or --config");
        }
        std::vector<secsat::Scenario> scenarios;
        if (!preset.empty()) {
            scenarios = secsat::preset_scenarios(preset);
        } else {
            scenarios.push_back(secsat::load_scenario(config));
        }
        std::vector<secsat::SopCurve> curves;
        for (secsat::Scenario& sc : scenarios) {
            if (seed_opt->count() > 0) sc.seed = seed;
            if (trials_opt->count() > 0) sc.trials = trials;
            auto part = secsat::run_scenario(sc, threads);
            curves.insert(curves.end(), part.begin(), part.end());
        }
        if (out_path.empty()) {
            secsat::emit_csv(curves, std::cout);
        } else {
            secsat::emit_csv(curves, out_path);
        }
        return 0;
    } catch (const secsat::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const secsat::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerics;
    } catch (const secsat::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
