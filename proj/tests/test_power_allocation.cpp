// SPDX-License-Identifier: Apache-2.0

#include "secsat/power_allocation.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "secsat/rng.hpp"

using namespace secsat;

namespace {

// magnitude scale of the stationarity polynomial's terms
double stationarity_residual(double alpha, double gamma_sd, double gamma_re) {
    const double c = gamma_sd * gamma_re;
    const double d = gamma_re + 1.0;
    const double e = gamma_sd - gamma_re;
    const double g = -c * e * alpha * alpha - 2.0 * c * d * alpha + c * d;
    const double scale = std::abs(c * e) + 2.0 * c * d + c * d;
    return std::abs(g) / scale;
}

double random_snr(RandomStream& rng) {
    // log-uniform over [0.1, 1000]
    return 0.1 * std::pow(10.0, 4.0 * rng.uniform());
}

}  // namespace

TEST_CASE("uniform split") {
    const auto r = alpha_uniform();
    CHECK(r.alpha == 0.5);
    CHECK(r.method == AllocationMethod::Uniform);
    CHECK(std::isnan(r.objective));
}

TEST_CASE("split objective: endpoints, capacity identity, concavity") {
    CHECK(objective_f(1e-12, 7.0, 3.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(objective_f(1.0 - 1e-12, 7.0, 3.0) == doctest::Approx(1.0).epsilon(1e-9));

    // same quantity written as the capacity ratio (1+g_d)(1+g_e_den)/(...)
    for (int rep = 0; rep < 100; ++rep) {
        RandomStream rng(41, static_cast<std::uint32_t>(rep), 0);
        const double gsd = random_snr(rng), gre = random_snr(rng);
        const double alpha = 0.999 * rng.uniform() + 0.0005;
        const double jam = (1.0 - alpha) * gre + 1.0;
        const double ratio = (1.0 + alpha * gsd) * jam / (jam + alpha * gsd);
        CHECK(objective_f(alpha, gsd, gre) == doctest::Approx(ratio).epsilon(1e-12));
    }

    for (double gsd : {0.1, 10.0, 500.0}) {
        for (double gre : {0.1, 10.0, 500.0}) {
            double fm = objective_f(0.001, gsd, gre), f0 = objective_f(0.002, gsd, gre);
            for (double a = 0.003; a < 0.999; a += 0.001) {
                const double fp = objective_f(a, gsd, gre);
                CHECK(fp - 2.0 * f0 + fm < 0.0);  // strictly concave throughout
                fm = f0;
                f0 = fp;
            }
        }
    }

    CHECK_THROWS_AS(objective_f(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(objective_f(1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(objective_f(0.5, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(objective_f(0.5, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("optimal split: frozen value and the equal-SNR limit") {
    const auto r = alpha_optimal(10.0, 100.0);
    CHECK(r.alpha == doctest::Approx((101.0 - std::sqrt(1111.0)) / 90.0).epsilon(1e-14));
    CHECK(r.alpha == doctest::Approx(0.7518703708333564).epsilon(1e-13));
    CHECK(r.method == AllocationMethod::OptimalInstantaneous);
    CHECK(r.objective == doctest::Approx(std::log2(objective_f(r.alpha, 10.0, 100.0)))
                             .epsilon(1e-13));

    CHECK(alpha_optimal(5.0, 5.0).alpha == 0.5);
    CHECK(alpha_optimal(5.0, 5.0 * (1.0 + 1e-10)).alpha == 0.5);

    CHECK_THROWS_AS(alpha_optimal(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(alpha_optimal(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("optimal split: agrees with a grid argmax and is stationary") {
    for (int rep = 0; rep < 100; ++rep) {
        RandomStream rng(42, static_cast<std::uint32_t>(rep), 0);
        const double gsd = random_snr(rng), gre = random_snr(rng);
        const auto r = alpha_optimal(gsd, gre);
        CHECK(r.alpha > 0.0);
        CHECK(r.alpha < 1.0);
        CHECK(r.objective >= 0.0);
        CHECK(stationarity_residual(r.alpha, gsd, gre) <= 1e-9);

        double best_a = 0.0, best_f = -1.0;
        for (double a = 1e-4; a < 0.99995; a += 1e-4) {
            const double f = objective_f(a, gsd, gre);
            if (f > best_f) {
                best_f = f;
                best_a = a;
            }
        }
        CHECK(std::abs(r.alpha - best_a) <= 1e-4);
        CHECK(objective_f(r.alpha, gsd, gre) >= best_f - 1e-12 * best_f);
    }
}

TEST_CASE("optimal split: stays interior at extreme SNR imbalance") {
    for (auto [gsd, gre] : {std::pair{1e-3, 1e3}, std::pair{1e3, 1e-3}}) {
        const auto r = alpha_optimal(gsd, gre);
        CHECK(r.alpha > 0.0);
        CHECK(r.alpha < 1.0);
        CHECK(stationarity_residual(r.alpha, gsd, gre) <= 1e-9);
    }
}

TEST_CASE("optimal split from raw observations") {
    const auto direct = alpha_optimal(20.0 * 1.7 / 2.0, 20.0 * 0.3 / 0.5);
    const auto from_ch = alpha_optimal_from_channels(20.0, 1.7, 0.3, 2.0, 0.5);
    CHECK(from_ch.alpha == direct.alpha);
    CHECK(from_ch.objective == direct.objective);
    CHECK_THROWS_AS(alpha_optimal_from_channels(0.0, 1.0, 1.0, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(alpha_optimal_from_channels(1.0, 1.0, 0.0, 1.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("statistical traversal: explicit three-point grid") {
    TraversalConfig cfg;
    cfg.step = 0.25;
    cfg.mean_power_sd = 1.0;
    cfg.mean_power_re = 1.0;
    cfg.big_p = 10.0;
    cfg.params = SecrecyParams{1.0, 1.0, 1.0};
    cfg.n_r = 4;
    const auto r = alpha_statistical(cfg);
    CHECK(r.method == AllocationMethod::StatisticalTraversal);

    double best_a = 0.0, best_s = 2.0;
    for (double a : {0.25, 0.5, 0.75}) {
        const double s = sop_closed_rayleigh(a, 10.0, 1.0, cfg.params, 4, 1.0 / 8.0);
        if (s < best_s) {
            best_s = s;
            best_a = a;
        }
    }
    CHECK(r.alpha == best_a);
    CHECK(r.objective == best_s);
    CHECK(r.objective <= sop_closed_rayleigh(0.5, 10.0, 1.0, cfg.params, 4, 1.0 / 8.0));
}

TEST_CASE("statistical traversal: grid refinement changes little near the optimum") {
    for (FadingModel model : {FadingModel::Rayleigh, FadingModel::Rician}) {
        TraversalConfig cfg;
        cfg.relay_link_model = model;
        cfg.rician_k_re = 1.0;
        cfg.mean_power_sd = 1.0;
        cfg.mean_power_re = 1.0;
        cfg.big_p = 10.0;
        cfg.params = SecrecyParams{1.0, 1.0, 1.0};
        cfg.n_r = 4;

        cfg.step = 0.05;
        const auto coarse = alpha_statistical(cfg);
        cfg.step = 0.001;
        const auto fine = alpha_statistical(cfg);
        CHECK(std::abs(coarse.objective - fine.objective) <= 0.01);
        CHECK(fine.objective <= coarse.objective + 1e-15);  // finer grid can only improve
    }
}

TEST_CASE("statistical traversal: domain checks") {
    TraversalConfig cfg;
    cfg.step = 0.0;
    CHECK_THROWS_AS(alpha_statistical(cfg), std::invalid_argument);
    cfg.step = 0.5;
    CHECK_THROWS_AS(alpha_statistical(cfg), std::invalid_argument);
    cfg.step = 0.05;
    cfg.relay_link_model = FadingModel::GaussianApprox;
    CHECK_THROWS_AS(alpha_statistical(cfg), std::invalid_argument);
    cfg.relay_link_model = FadingModel::Rayleigh;
    cfg.n_r = 1;
    CHECK_THROWS_AS(alpha_statistical(cfg), std::invalid_argument);
    cfg.n_r = 4;
    cfg.big_p = 0.0;
    CHECK_THROWS_AS(alpha_statistical(cfg), std::invalid_argument);
}
