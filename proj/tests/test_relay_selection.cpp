// SPDX-License-Identifier: Apache-2.0

#include "secsat/relay_selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "secsat/rng.hpp"
#include "secsat/secrecy.hpp"

using namespace secsat;

TEST_CASE("selection rules: argmax with lowest-index ties") {
    CHECK(select_instantaneous({0.1, 0.9, 0.4}) == 2);
    CHECK(select_instantaneous({0.5, 0.5}) == 1);
    CHECK(select_instantaneous({2.0, 2.0, 2.0}) == 1);
    CHECK(select_instantaneous({7.0}) == 1);
    CHECK(select_statistical({0.7, 0.9, 1.1, 1.3}) == 4);
    CHECK(select_statistical({1.3, 0.9, 1.3}) == 1);

    CHECK_THROWS_AS(select_instantaneous({}), std::invalid_argument);
    CHECK_THROWS_AS(select_instantaneous({1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(select_instantaneous({1.0, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(select_statistical({}), std::invalid_argument);
}

TEST_CASE("selection rules: invariant under positive rescaling") {
    for (int rep = 0; rep < 100; ++rep) {
        RandomStream rng(31, static_cast<std::uint32_t>(rep), 0);
        std::vector<double> v(5);
        for (auto& x : v) x = rng.uniform();
        const double scale = 10.0 * rng.uniform();
        auto scaled = v;
        for (auto& x : scaled) x *= scale;
        CHECK(select_instantaneous(v) == select_instantaneous(scaled));
    }
}

TEST_CASE("ensemble validation") {
    const ChannelSpec link{FadingModel::Rayleigh, 0.0, 1.0, 4};
    RelayEnsemble good{2, {{link, link}, {link, link}}, {0.7, 1.3}};
    CHECK_NOTHROW(validate(good));

    RelayEnsemble empty{};
    CHECK_THROWS_AS(validate(empty), std::invalid_argument);

    auto mismatch = good;
    mismatch.mean_powers_re.pop_back();
    CHECK_THROWS_AS(validate(mismatch), std::invalid_argument);

    auto bad_power = good;
    bad_power.mean_powers_re[0] = 0.0;
    CHECK_THROWS_AS(validate(bad_power), std::invalid_argument);

    auto bad_spec = good;
    bad_spec.specs[1].second.dim = 0;
    CHECK_THROWS_AS(validate(bad_spec), std::invalid_argument);
}

TEST_CASE("leakage CDF: boundary, exponential special case, mean-power ordering") {
    CHECK(residual_cdf(0.0, 4, 1.0) == 0.0);
    CHECK(residual_cdf(-1.0, 4, 1.0) == 0.0);
    // two antennas leave a single complex leakage coordinate: an exponential law
    for (double r : {0.1, 0.5, 2.0}) {
        CHECK(residual_cdf(r, 2, 1.0) == doctest::Approx(1.0 - std::exp(-2.0 * r)).epsilon(1e-12));
    }
    // a stronger eavesdropper link stochastically inflates the leakage
    double prev = 1.0;
    for (double mp : {0.5, 1.0, 2.0}) {
        const double f = residual_cdf(0.3, 4, mp);
        CHECK(f < prev);
        prev = f;
    }
    CHECK_THROWS_AS(residual_cdf(std::nan(""), 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(residual_cdf(0.5, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(residual_cdf(0.5, 4, 0.0), std::invalid_argument);
}

TEST_CASE("leakage CDF matches projected channels") {
    const int n_r = 4;
    const ChannelSpec spec{FadingModel::Rayleigh, 0.0, 0.5, n_r};
    const int n = 200000;
    std::vector<double> samples(n);
    for (int t = 0; t < n; ++t) {
        RandomStream rd(32, static_cast<std::uint32_t>(t), 1);
        RandomStream re(32, static_cast<std::uint32_t>(t), 2);
        const auto basis = null_space_basis(sample_channel(spec, rd));
        samples[t] = residual_interference_power(sample_channel(spec, re), basis);
    }
    std::sort(samples.begin(), samples.end());
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = residual_cdf(samples[i], n_r, spec.mean_power);
        sup = std::max(sup, std::max(f - double(i) / n, double(i + 1) / n - f));
    }
    CHECK(sup < 0.005);
}

TEST_CASE("picking the strongest leakage maximizes the realized secrecy capacity") {
    // the two selection criteria written against different quantities agree:
    // argmax of leakage == argmax of the per-relay capacity on shared draws
    const std::vector<double> mean_powers{0.7, 0.9, 1.1, 1.3};
    const double alpha = 0.5, big_p = 10.0;
    const ChannelSpec sat{FadingModel::Rician, 10.0, 1.0, 4};
    const ChannelSpec unit_leak{FadingModel::Rayleigh, 0.0, 1.0, 4};
    for (int ep = 0; ep < 1000; ++ep) {
        const auto trial = static_cast<std::uint32_t>(ep);
        RandomStream rs(33, trial, 0);
        double w = 0.0;
        for (const auto& e : sample_channel(sat, rs)) w += std::norm(e);
        std::vector<double> residuals(mean_powers.size());
        for (std::size_t k = 0; k < mean_powers.size(); ++k) {
            RandomStream rk(33, trial, 9 + 2 * static_cast<std::uint32_t>(k));
            residuals[k] = mean_powers[k] * sample_residual_model(unit_leak, rk);
        }
        int best = 1;
        double best_c = -1.0;
        for (std::size_t k = 0; k < residuals.size(); ++k) {
            const double c = secrecy_capacity_alpha(
                alpha, SnrBundle{big_p * w, big_p * w, 0.0, big_p * residuals[k]});
            if (c > best_c) {
                best_c = c;
                best = static_cast<int>(k) + 1;
            }
        }
        CHECK(best == select_instantaneous(residuals));
    }
}

TEST_CASE("statistical pick minimizes the leakage CDF at any threshold") {
    const std::vector<double> mean_powers{0.7, 0.9, 1.1, 1.3};
    const int pick = select_statistical(mean_powers);
    for (double r : {0.1, 1.0, 10.0}) {
        int best = 1;
        double best_f = 2.0;
        for (std::size_t k = 0; k < mean_powers.size(); ++k) {
            const double f = residual_cdf(r, 4, mean_powers[k]);
            if (f < best_f) {
                best_f = f;
                best = static_cast<int>(k) + 1;
            }
        }
        CHECK(best == pick);
    }
}

TEST_CASE("instantaneous selection never loses to the statistical one on shared draws") {
    const std::vector<double> mean_powers{0.7, 0.9, 1.1, 1.3};
    const double p_node = 10.0, rate = 2.0;
    const ChannelSpec sat{FadingModel::Rician, 10.0, 1.0, 4};
    const ChannelSpec unit_leak{FadingModel::Rayleigh, 0.0, 1.0, 4};
    const int stat_pick = select_statistical(mean_powers);
    long long out_inst = 0, out_stat = 0;
    for (int ep = 0; ep < 10000; ++ep) {
        const auto trial = static_cast<std::uint32_t>(ep);
        RandomStream rs(34, trial, 0);
        double w = 0.0;
        for (const auto& e : sample_channel(sat, rs)) w += std::norm(e);
        std::vector<double> residuals(mean_powers.size());
        for (std::size_t k = 0; k < mean_powers.size(); ++k) {
            RandomStream rk(34, trial, 9 + 2 * static_cast<std::uint32_t>(k));
            residuals[k] = mean_powers[k] * sample_residual_model(unit_leak, rk);
        }
        const double r_inst = residuals[select_instantaneous(residuals) - 1];
        const double r_stat = residuals[stat_pick - 1];
        const auto outage = [&](double r) {
            const double gamma_d = p_node * w;
            const double gamma_e = p_node * w / (p_node * r + 1.0);
            return secrecy_capacity(gamma_d, gamma_e) < rate;
        };
        out_inst += outage(r_inst);
        out_stat += outage(r_stat);
    }
    CHECK(out_inst <= out_stat);
    CHECK(out_inst > 0);      // the comparison point is in the transition band
    CHECK(out_stat < 10000);  // not saturated either way
}
