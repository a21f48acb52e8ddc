// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "secsat/channel.hpp"

namespace secsat {

enum class FigureId { Fig2, Fig3, Fig4, Fig5, Fig6, Fig7, Custom };

// Configuration or validation problem; maps to CLI exit code 2.
class ScenarioError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File read or write problem; maps to CLI exit code 4.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One experiment: either a relay-selection comparison (relay_count >= 2,
// instantaneous vs statistical selection at a fixed 50/50 split with
// per-node power) or a power-allocation comparison (relay_count == 1,
// uniform vs traversal vs optimal splits of the total budget).
//
// The x axis is k_sd when it has more than one entry, otherwise
// power_grid_db; sweeping both is rejected. n_s and n_r are paired lists
// (a singleton broadcasts); every extra swept list multiplies the curve
// count.
struct Scenario {
    FigureId figure_id = FigureId::Custom;
    std::vector<int> n_s{4};
    std::vector<int> n_r{4};
    std::vector<double> rate_thresholds{1.0};
    std::vector<double> power_grid_db{10.0};
    std::vector<double> k_sd{10.0};
    double k_re = 0.0;
    FadingModel relay_link_model = FadingModel::Rayleigh;
    int relay_count = 1;
    std::vector<double> mean_powers{1.0};  // per-relay E[||h_re||^2]
    long long trials = 100000;
    std::uint64_t seed = 42;
    std::vector<double> delta_alpha{0.05};
};

struct CurvePoint {
    double x = 0.0;
    double sop = 0.0;
    double half_width_95 = 0.0;
    long long trials = 0;
};

struct SopCurve {
    std::string label;
    std::string x_name;
    std::vector<CurvePoint> points;
};

// Throws ScenarioError naming the violated field.
void validate(const Scenario& scenario);

// Reads one scenario from a JSON file whose keys mirror the Scenario
// fields; list-valued fields also accept scalars. Unknown keys are
// rejected.
Scenario load_scenario(const std::string& path);

// Named reproduction setups "fig2".."fig7". Single-model figures return one
// scenario; the model-comparison figures return a Rayleigh and a Rician
// variant.
std::vector<Scenario> preset_scenarios(const std::string& name);

// Evaluates every curve of the scenario. Draws are addressed by (seed,
// trial, x index, link), so two schemes or parameter variants face the same
// channels at the same x and results do not depend on threads (0 = all
// cores).
std::vector<SopCurve> run_scenario(const Scenario& scenario, int threads = 0);

void emit_csv(const std::vector<SopCurve>& curves, std::ostream& out);
void emit_csv(const std::vector<SopCurve>& curves, const std::string& path);

}  // namespace secsat
