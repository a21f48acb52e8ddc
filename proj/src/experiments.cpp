// SPDX-License-Identifier: Apache-2.0

#include "secsat/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "json.hpp"

#include "secsat/parallel.hpp"
#include "secsat/power_allocation.hpp"
#include "secsat/relay_selection.hpp"
#include "secsat/rng.hpp"
#include "secsat/secrecy.hpp"

namespace secsat {

namespace {

using nlohmann::json;

// Sub-stream labels inside one scenario point; shared with sop_monte_carlo's
// layout (tag = x index * 256 + label).
constexpr std::uint32_t kLabelSatellite = 0;
constexpr std::uint32_t kLabelLeakModel = 3;
std::uint32_t relay_leak_label(int k) { return 9u + 2u * static_cast<std::uint32_t>(k); }
std::uint32_t point_tag(int x_idx, std::uint32_t label) {
    return static_cast<std::uint32_t>(x_idx) * 256u + label;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double norm_sq(const ComplexVector& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return s;
}

int pick(const std::vector<int>& v, int i) { return v.size() == 1 ? v[0] : v[i]; }

bool is_selection(const Scenario& sc) { return sc.relay_count >= 2; }

void require(bool ok, const std::string& message) {
    if (!ok) throw ScenarioError(message);
}

void check_real_list(const std::vector<double>& v, const std::string& name, double lo,
                     bool lo_strict, bool increasing) {
    require(!v.empty(), "scenario field '" + name + "' must not be empty");
    for (double e : v) {
        require(std::isfinite(e) && (lo_strict ? e > lo : e >= lo),
                "scenario field '" + name + "' has an out-of-range entry");
    }
    if (increasing) {
        for (std::size_t i = 1; i < v.size(); ++i) {
            require(v[i] > v[i - 1], "scenario field '" + name + "' must be strictly increasing");
        }
    }
}

struct Combo {
    int pair_idx;
    int rate_idx;
    int delta_idx;
};

// Evaluates one grid point of a relay-selection scenario: both criteria see
// the same satellite draw and the same realized per-relay leakage (unit draws
// scaled by each relay's mean power), so the instantaneous pick dominates the
// statistical one draw by draw.
void selection_point(const Scenario& sc, int x_idx, const Combo& cb, long long counts[2]) {
    const double p_lin = db_to_linear(sc.power_grid_db[x_idx]);  // per-node budget
    const double rate = sc.rate_thresholds[cb.rate_idx];
    const ChannelSpec sat{FadingModel::Rician, sc.k_sd[0], 1.0, pick(sc.n_s, cb.pair_idx)};
    const ChannelSpec leak_unit{sc.relay_link_model, sc.k_re, 1.0, pick(sc.n_r, cb.pair_idx)};
    const int m = sc.relay_count;
    const int stat_pick = select_statistical(sc.mean_powers);

    counts[0] = counts[1] = 0;
    std::vector<double> residuals(m);
    for (long long t = 0; t < sc.trials; ++t) {
        const auto trial = static_cast<std::uint32_t>(t);
        RandomStream rs_sat(sc.seed, trial, point_tag(x_idx, kLabelSatellite));
        const double w = norm_sq(sample_channel(sat, rs_sat));
        for (int k = 0; k < m; ++k) {
            RandomStream rs(sc.seed, trial, point_tag(x_idx, relay_leak_label(k)));
            residuals[k] = sc.mean_powers[k] * sample_residual_model(leak_unit, rs);
        }
        const double r_inst = residuals[select_instantaneous(residuals) - 1];
        const double r_stat = residuals[stat_pick - 1];
        const double gamma_d = p_lin * w;
        const double ge_inst = p_lin * w / (p_lin * r_inst + 1.0);
        const double ge_stat = p_lin * w / (p_lin * r_stat + 1.0);
        if (secrecy_capacity(gamma_d, ge_inst) < rate) ++counts[0];
        if (secrecy_capacity(gamma_d, ge_stat) < rate) ++counts[1];
    }
}

// Evaluates one grid point of a power-allocation scenario. When delta_alpha
// is swept only the traversal scheme is reported (one curve per step);
// otherwise uniform, traversal and per-realization optimal splits share the
// trial draws.
void allocation_point(const Scenario& sc, int x_idx, const Combo& cb, bool delta_sweep,
                      long long counts[3]) {
    const bool sweep_ksd = sc.k_sd.size() > 1;
    const double ksd = sweep_ksd ? sc.k_sd[x_idx] : sc.k_sd[0];
    const double p_db = sweep_ksd ? sc.power_grid_db[0] : sc.power_grid_db[x_idx];
    const double p_total = db_to_linear(p_db);
    const double rate = sc.rate_thresholds[cb.rate_idx];
    const int n_r = pick(sc.n_r, cb.pair_idx);
    const SecrecyParams params{rate, 1.0, 1.0};
    const ChannelSpec sat{FadingModel::Rician, ksd, 1.0, pick(sc.n_s, cb.pair_idx)};
    const ChannelSpec leak{sc.relay_link_model, sc.k_re, sc.mean_powers[0], n_r};

    TraversalConfig tc;
    tc.step = sc.delta_alpha[cb.delta_idx];
    tc.relay_link_model = sc.relay_link_model;
    tc.rician_k_re = sc.k_re;
    tc.mean_power_sd = 1.0;
    tc.mean_power_re = sc.mean_powers[0];
    tc.big_p = p_total;
    tc.params = params;
    tc.n_r = n_r;
    const double alpha_stat = alpha_statistical(tc).alpha;

    counts[0] = counts[1] = counts[2] = 0;
    for (long long t = 0; t < sc.trials; ++t) {
        const auto trial = static_cast<std::uint32_t>(t);
        RandomStream rs_sat(sc.seed, trial, point_tag(x_idx, kLabelSatellite));
        const double w = norm_sq(sample_channel(sat, rs_sat));
        RandomStream rs_leak(sc.seed, trial, point_tag(x_idx, kLabelLeakModel));
        const double residual = sample_residual_model(leak, rs_leak);

        const double gamma_sd = p_total * w;
        const double gamma_re = p_total * residual;
        const SnrBundle snr{gamma_sd, gamma_sd, 0.0, gamma_re};

        if (delta_sweep) {
            if (secrecy_capacity_alpha(alpha_stat, snr) < rate) ++counts[0];
            continue;
        }
        if (secrecy_capacity_alpha(0.5, snr) < rate) ++counts[0];
        if (secrecy_capacity_alpha(alpha_stat, snr) < rate) ++counts[1];
        const double c_opt = (gamma_sd > 0.0 && gamma_re > 0.0)
                                 ? alpha_optimal(gamma_sd, gamma_re).objective
                                 : 0.0;
        if (c_opt < rate) ++counts[2];
    }
}

}  // namespace

void validate(const Scenario& sc) {
    require(!sc.n_s.empty() && !sc.n_r.empty(), "scenario fields 'n_s'/'n_r' must not be empty");
    for (int n : sc.n_s) require(n >= 1, "scenario field 'n_s' entries must be >= 1");
    for (int n : sc.n_r) require(n >= 2, "scenario field 'n_r' entries must be >= 2");
    require(sc.n_s.size() == sc.n_r.size() || sc.n_s.size() == 1 || sc.n_r.size() == 1,
            "scenario fields 'n_s' and 'n_r' must have equal length or broadcast from one entry");
    check_real_list(sc.rate_thresholds, "rate_thresholds", 0.0, false, false);
    check_real_list(sc.power_grid_db, "power_grid_db", -1e9, false, true);
    check_real_list(sc.k_sd, "k_sd", 0.0, false, sc.k_sd.size() > 1);
    require(std::isfinite(sc.k_re) && sc.k_re >= 0.0, "scenario field 'k_re' must be >= 0");
    require(sc.relay_link_model != FadingModel::GaussianApprox,
            "scenario field 'relay_link_model' must be rayleigh or rician");
    require(sc.relay_count >= 1, "scenario field 'relay_count' must be >= 1");
    require(sc.mean_powers.size() == static_cast<std::size_t>(sc.relay_count),
            "scenario field 'mean_powers' must list one entry per relay");
    check_real_list(sc.mean_powers, "mean_powers", 0.0, true, false);
    require(sc.trials >= 1, "scenario field 'trials' must be >= 1");
    require(sc.trials <= 0xFFFFFFFFll, "scenario field 'trials' must fit 32 bits");
    require(sc.figure_id == FigureId::Custom || sc.trials >= 10000,
            "published-figure presets require trials >= 10000");
    check_real_list(sc.delta_alpha, "delta_alpha", 0.0, true, false);
    for (double d : sc.delta_alpha) {
        require(d < 0.5, "scenario field 'delta_alpha' entries must lie in (0, 0.5)");
    }
    require(sc.k_sd.size() == 1 || sc.power_grid_db.size() == 1,
            "cannot sweep both 'k_sd' and 'power_grid_db'");
    if (is_selection(sc)) {
        require(sc.k_sd.size() == 1, "'k_sd' sweeps require an allocation scenario");
        require(sc.delta_alpha.size() == 1,
                "'delta_alpha' sweeps require an allocation scenario");
    }
}

std::vector<SopCurve> run_scenario(const Scenario& sc, int threads) {
    validate(sc);
    const bool selection = is_selection(sc);
    const bool sweep_ksd = sc.k_sd.size() > 1;
    const std::vector<double>& xs = sweep_ksd ? sc.k_sd : sc.power_grid_db;
    const std::string x_name = sweep_ksd ? "K_sd" : "P_dB";

    const int pair_count = static_cast<int>(std::max(sc.n_s.size(), sc.n_r.size()));
    const int rate_count = static_cast<int>(sc.rate_thresholds.size());
    const bool delta_sweep = !selection && sc.delta_alpha.size() > 1;
    const int delta_count = selection ? 1 : static_cast<int>(sc.delta_alpha.size());

    std::vector<Combo> combos;
    for (int p = 0; p < pair_count; ++p) {
        for (int r = 0; r < rate_count; ++r) {
            for (int d = 0; d < delta_count; ++d) combos.push_back({p, r, d});
        }
    }

    std::vector<std::string> schemes;
    if (selection) {
        schemes = {"instantaneous", "statistical"};
    } else if (delta_sweep) {
        schemes = {"statistical"};
    } else {
        schemes = {"uniform", "statistical", "optimal"};
    }
    const int scheme_count = static_cast<int>(schemes.size());

    std::vector<SopCurve> curves(scheme_count * combos.size());
    for (int s = 0; s < scheme_count; ++s) {
        for (std::size_t c = 0; c < combos.size(); ++c) {
            const Combo& cb = combos[c];
            std::string label = schemes[s];
            if (pair_count > 1) {
                const int ns = pick(sc.n_s, cb.pair_idx);
                const int nr = pick(sc.n_r, cb.pair_idx);
                if (ns != nr) label += " Ns=" + std::to_string(ns);
                label += " Nr=" + std::to_string(nr);
            }
            if (rate_count > 1) label += " Rs=" + format_double(sc.rate_thresholds[cb.rate_idx]);
            if (delta_count > 1) label += " da=" + format_double(sc.delta_alpha[cb.delta_idx]);
            if (!selection) {
                label += sc.relay_link_model == FadingModel::Rayleigh ? " rayleigh" : " rician";
            }
            SopCurve& curve = curves[s * combos.size() + c];
            curve.label = label;
            curve.x_name = x_name;
            curve.points.resize(xs.size());
        }
    }

    const long long jobs = static_cast<long long>(xs.size()) * static_cast<long long>(combos.size());
    parallel_for(jobs, threads, [&](long long j) {
        const int x_idx = static_cast<int>(j / static_cast<long long>(combos.size()));
        const std::size_t c = static_cast<std::size_t>(j % static_cast<long long>(combos.size()));
        long long counts[3] = {0, 0, 0};
        if (selection) {
            selection_point(sc, x_idx, combos[c], counts);
        } else {
            allocation_point(sc, x_idx, combos[c], delta_sweep, counts);
        }
        for (int s = 0; s < scheme_count; ++s) {
            CurvePoint& pt = curves[s * combos.size() + c].points[x_idx];
            pt.x = xs[x_idx];
            pt.sop = static_cast<double>(counts[s]) / static_cast<double>(sc.trials);
            pt.half_width_95 = binomial_half_width_95(counts[s], sc.trials);
            pt.trials = sc.trials;
        }
    });
    return curves;
}

namespace {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw ScenarioError("config key '" + key + "': " + why);
}

std::vector<double> as_real_list(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array() && !v.empty()) {
        std::vector<double> out;
        out.reserve(v.size());
        for (const auto& e : v) {
            if (!e.is_number()) bad_key(key, "expected a number or a list of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }
    bad_key(key, "expected a number or a nonempty list of numbers");
}

std::vector<int> as_int_list(const json& v, const std::string& key) {
    if (v.is_number_integer()) return {v.get<int>()};
    if (v.is_array() && !v.empty()) {
        std::vector<int> out;
        out.reserve(v.size());
        for (const auto& e : v) {
            if (!e.is_number_integer()) bad_key(key, "expected an integer or a list of integers");
            out.push_back(e.get<int>());
        }
        return out;
    }
    bad_key(key, "expected an integer or a nonempty list of integers");
}

FigureId parse_figure_id(const json& v, const std::string& key) {
    if (!v.is_string()) bad_key(key, "expected a string");
    const std::string s = lowercase(v.get<std::string>());
    if (s == "fig2") return FigureId::Fig2;
    if (s == "fig3") return FigureId::Fig3;
    if (s == "fig4") return FigureId::Fig4;
    if (s == "fig5") return FigureId::Fig5;
    if (s == "fig6") return FigureId::Fig6;
    if (s == "fig7") return FigureId::Fig7;
    if (s == "custom") return FigureId::Custom;
    bad_key(key, "expected one of fig2..fig7 or custom");
}

FadingModel parse_relay_model(const json& v, const std::string& key) {
    if (!v.is_string()) bad_key(key, "expected a string");
    const std::string s = lowercase(v.get<std::string>());
    if (s == "rayleigh") return FadingModel::Rayleigh;
    if (s == "rician") return FadingModel::Rician;
    bad_key(key, "expected \"rayleigh\" or \"rician\"");
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioError("config parse error in " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("config root must be a JSON object: " + path);

    Scenario sc;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "figure_id") {
                sc.figure_id = parse_figure_id(value, key);
            } else if (key == "n_s") {
                sc.n_s = as_int_list(value, key);
            } else if (key == "n_r") {
                sc.n_r = as_int_list(value, key);
            } else if (key == "rate_thresholds") {
                sc.rate_thresholds = as_real_list(value, key);
            } else if (key == "power_grid_db") {
                sc.power_grid_db = as_real_list(value, key);
            } else if (key == "k_sd") {
                sc.k_sd = as_real_list(value, key);
            } else if (key == "k_re") {
                if (!value.is_number()) bad_key(key, "expected a number");
                sc.k_re = value.get<double>();
            } else if (key == "relay_link_model") {
                sc.relay_link_model = parse_relay_model(value, key);
            } else if (key == "relay_count") {
                if (!value.is_number_integer()) bad_key(key, "expected an integer");
                sc.relay_count = value.get<int>();
            } else if (key == "mean_powers") {
                sc.mean_powers = as_real_list(value, key);
            } else if (key == "trials") {
                if (!value.is_number_integer()) bad_key(key, "expected an integer");
                sc.trials = value.get<long long>();
            } else if (key == "seed") {
                if (!value.is_number_unsigned() && !value.is_number_integer()) {
                    bad_key(key, "expected an unsigned integer");
                }
                sc.seed = value.get<std::uint64_t>();
            } else if (key == "delta_alpha") {
                sc.delta_alpha = as_real_list(value, key);
            } else {
                throw ScenarioError("unknown config key '" + key + "' in " + path);
            }
        } catch (const json::exception& e) {
            throw ScenarioError("config key '" + key + "' in " + path + ": " + e.what());
        }
    }
    validate(sc);
    return sc;
}

namespace {

std::vector<double> linspace_db(double lo, double hi, double step) {
    std::vector<double> out;
    for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
    return out;
}

Scenario selection_base() {
    Scenario sc;
    sc.rate_thresholds = {2.0};
    sc.power_grid_db = linspace_db(5.0, 15.0, 1.0);
    sc.k_sd = {10.0};
    sc.k_re = 0.0;
    sc.relay_link_model = FadingModel::Rayleigh;
    sc.relay_count = 4;
    sc.mean_powers = {0.7, 0.9, 1.1, 1.3};
    sc.trials = 200000;
    sc.delta_alpha = {0.05};
    return sc;
}

Scenario allocation_base(FadingModel model) {
    Scenario sc;
    sc.n_s = {4};
    sc.n_r = {4};
    sc.rate_thresholds = {1.0};
    sc.k_re = 1.0;
    sc.relay_link_model = model;
    sc.relay_count = 1;
    sc.mean_powers = {1.0};
    return sc;
}

}  // namespace

std::vector<Scenario> preset_scenarios(const std::string& name) {
    const std::string id = lowercase(name);
    std::vector<Scenario> out;
    if (id == "fig2") {
        Scenario sc = selection_base();
        sc.figure_id = FigureId::Fig2;
        sc.n_s = {2, 4, 8};
        sc.n_r = {2, 4, 8};
        out.push_back(sc);
    } else if (id == "fig3") {
        Scenario sc = selection_base();
        sc.figure_id = FigureId::Fig3;
        sc.n_s = {4};
        sc.n_r = {4};
        sc.rate_thresholds = {1.0, 1.5, 2.0};
        out.push_back(sc);
    } else if (id == "fig4") {
        for (FadingModel model : {FadingModel::Rayleigh, FadingModel::Rician}) {
            Scenario sc = allocation_base(model);
            sc.figure_id = FigureId::Fig4;
            sc.power_grid_db = {10.0};
            sc.k_sd = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0};
            sc.trials = 200000;
            sc.delta_alpha = {0.05};
            out.push_back(sc);
        }
    } else if (id == "fig5") {
        for (FadingModel model : {FadingModel::Rayleigh, FadingModel::Rician}) {
            Scenario sc = allocation_base(model);
            sc.figure_id = FigureId::Fig5;
            sc.power_grid_db = linspace_db(5.0, 15.0, 1.0);
            sc.k_sd = {10.0};
            sc.trials = 100000;
            sc.delta_alpha = {0.001, 0.005, 0.01, 0.05, 0.1};
            out.push_back(sc);
        }
    } else if (id == "fig6") {
        for (FadingModel model : {FadingModel::Rayleigh, FadingModel::Rician}) {
            Scenario sc = allocation_base(model);
            sc.figure_id = FigureId::Fig6;
            sc.n_s = {2, 4, 8};
            sc.n_r = {2, 4, 8};
            sc.power_grid_db = linspace_db(5.0, 20.0, 1.0);
            sc.k_sd = {5.0};
            sc.trials = 100000;
            sc.delta_alpha = {0.001};
            out.push_back(sc);
        }
    } else if (id == "fig7") {
        for (FadingModel model : {FadingModel::Rayleigh, FadingModel::Rician}) {
            Scenario sc = allocation_base(model);
            sc.figure_id = FigureId::Fig7;
            sc.rate_thresholds = {1.0, 1.5, 2.0};
            sc.power_grid_db = linspace_db(5.0, 20.0, 1.0);
            sc.k_sd = {5.0};
            sc.trials = 100000;
            sc.delta_alpha = {0.001};
            out.push_back(sc);
        }
    } else {
        throw ScenarioError("unknown preset '" + name + "' (expected fig2..fig7)");
    }
    return out;
}

namespace {

void csv_field(std::ostream& out, const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        out << s;
        return;
    }
    out << '"';
    for (char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

void emit_csv(const std::vector<SopCurve>& curves, std::ostream& out) {
    out << "curve_label,x_name,x,sop,ci95_half_width,trials\n";
    for (const auto& curve : curves) {
        for (const auto& pt : curve.points) {
            csv_field(out, curve.label);
            out << ',';
            csv_field(out, curve.x_name);
            out << ',' << format_double(pt.x) << ',' << format_double(pt.sop) << ','
                << format_double(pt.half_width_95) << ',' << pt.trials << '\n';
        }
    }
    if (!out) throw IoError("CSV write failed");
}

void emit_csv(const std::vector<SopCurve>& curves, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open output file: " + path);
    emit_csv(curves, file);
    file.flush();
    if (!file) throw IoError("write failed: " + path);
}

}  // namespace secsat
