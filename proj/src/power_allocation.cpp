// SPDX-License-Identifier: Apache-2.0

#include "secsat/power_allocation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace secsat {

AllocationResult alpha_uniform() {
    return {0.5, AllocationMethod::Uniform, std::numeric_limits<double>::quiet_NaN()};
}

double objective_f(double alpha, double gamma_sd, double gamma_re) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("objective_f: alpha must lie in (0, 1)");
    }
    if (!(gamma_sd > 0.0) || !(gamma_re > 0.0) || !std::isfinite(gamma_sd) ||
        !std::isfinite(gamma_re)) {
        throw std::invalid_argument("objective_f: SNRs must be positive and finite");
    }
    // denominator equals alpha * gamma_sd + (1 - alpha) * gamma_re + 1 > 0
    const double den = (gamma_sd - gamma_re) * alpha + gamma_re + 1.0;
    const double num = -gamma_sd * gamma_re * alpha * alpha +
                       (gamma_sd * gamma_re + gamma_sd - gamma_re) * alpha + gamma_re + 1.0;
    return num / den;
}

namespace {

constexpr double kEqualSnrRelTol = 1e-9;

}  // namespace

AllocationResult alpha_optimal(double gamma_sd, double gamma_re) {
    if (!(gamma_sd > 0.0) || !(gamma_re > 0.0) || !std::isfinite(gamma_sd) ||
        !std::isfinite(gamma_re)) {
        throw std::invalid_argument("alpha_optimal: SNRs must be positive and finite");
    }
    double alpha;
    if (std::abs(gamma_re - gamma_sd) <= kEqualSnrRelTol * std::max(gamma_re, gamma_sd)) {
        alpha = 0.5;  // analytic limit of the stationary point as the SNRs coincide
    } else {
        alpha = (gamma_re + 1.0 - std::sqrt((gamma_re + 1.0) * (gamma_sd + 1.0))) /
                (gamma_re - gamma_sd);
    }
    const double capacity = std::log2(objective_f(alpha, gamma_sd, gamma_re));
    return {alpha, AllocationMethod::OptimalInstantaneous, capacity > 0.0 ? capacity : 0.0};
}

AllocationResult alpha_optimal_from_channels(double big_p, double h_sd_norm_sq, double residual,
                                             double noise_bob, double noise_eve) {
    if (!(big_p > 0.0) || !(h_sd_norm_sq > 0.0) || !(residual > 0.0) || !(noise_bob > 0.0) ||
        !(noise_eve > 0.0)) {
        throw std::invalid_argument("alpha_optimal_from_channels: all inputs must be positive");
    }
    return alpha_optimal(big_p * h_sd_norm_sq / noise_bob, big_p * residual / noise_eve);
}

AllocationResult alpha_statistical(const TraversalConfig& cfg) {
    if (!(cfg.step > 0.0 && cfg.step < 0.5)) {
        throw std::invalid_argument("alpha_statistical: step must lie in (0, 0.5)");
    }
    if (cfg.relay_link_model == FadingModel::GaussianApprox) {
        throw std::invalid_argument("alpha_statistical: relay link model has no leakage law");
    }
    if (!(cfg.mean_power_sd > 0.0) || !(cfg.mean_power_re > 0.0) || !(cfg.big_p > 0.0)) {
        throw std::invalid_argument("alpha_statistical: powers must be positive");
    }
    if (cfg.n_r < 2) throw std::invalid_argument("alpha_statistical: n_r must be >= 2");

    const bool rician = cfg.relay_link_model == FadingModel::Rician;
    const double k = rician ? cfg.rician_k_re : 0.0;
    if (rician && (!(k >= 0.0) || !std::isfinite(k))) {
        throw std::invalid_argument("alpha_statistical: rician_k_re must be finite and >= 0");
    }
    const double sigma_re_sq = cfg.mean_power_re / (2.0 * cfg.n_r * (k + 1.0));
    const double s_re = std::sqrt(cfg.mean_power_re * k / (k + 1.0));

    const long count = static_cast<long>(std::ceil(1.0 / cfg.step)) - 1;
    AllocationResult best{0.0, AllocationMethod::StatisticalTraversal,
                          std::numeric_limits<double>::infinity()};
    for (long i = 1; i <= count; ++i) {
        const double alpha = cfg.step * static_cast<double>(i);
        if (alpha >= 1.0) break;  // float guard at the top of the grid
        const double sop =
            rician ? sop_closed_rician(alpha, cfg.big_p, cfg.mean_power_sd, cfg.params, cfg.n_r,
                                       s_re, sigma_re_sq)
                   : sop_closed_rayleigh(alpha, cfg.big_p, cfg.mean_power_sd, cfg.params, cfg.n_r,
                                         sigma_re_sq);
        if (sop < best.objective) {
            best.alpha = alpha;
            best.objective = sop;
        }
    }
    return best;
}

}  // namespace secsat
