// SPDX-License-Identifier: Apache-2.0

#include "secsat/relay_selection.hpp"

#include <cmath>
#include <stdexcept>

namespace secsat {

void validate(const RelayEnsemble& ensemble) {
    const auto count = static_cast<std::size_t>(ensemble.count);
    if (ensemble.count < 1 || ensemble.specs.size() != count ||
        ensemble.mean_powers_re.size() != count) {
        throw std::invalid_argument("RelayEnsemble: count must be >= 1 and match every list");
    }
    for (const auto& [bob, eve] : ensemble.specs) {
        validate(bob);
        validate(eve);
    }
    for (double p : ensemble.mean_powers_re) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("RelayEnsemble: mean powers must be positive and finite");
        }
    }
}

namespace {

int argmax_lowest(const std::vector<double>& values, const char* what) {
    if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty relay list");
    int best = 0;
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
            throw std::invalid_argument(std::string(what) + ": entries must be finite and >= 0");
        }
        if (values[i] > values[best]) best = i;
    }
    return best + 1;
}

}  // namespace

int select_instantaneous(const std::vector<double>& residuals) {
    return argmax_lowest(residuals, "select_instantaneous");
}

int select_statistical(const std::vector<double>& mean_powers_re) {
    return argmax_lowest(mean_powers_re, "select_statistical");
}

double residual_cdf(double r, int n_r, double mean_power_re, const ToleranceConfig& cfg) {
    if (n_r < 2) throw std::invalid_argument("residual_cdf: n_r must be >= 2");
    if (!(mean_power_re > 0.0) || !std::isfinite(mean_power_re)) {
        throw std::invalid_argument("residual_cdf: mean_power_re must be positive and finite");
    }
    if (std::isnan(r)) throw std::invalid_argument("residual_cdf: r must not be NaN");
    if (r <= 0.0) return 0.0;
    // projection removes one complex dimension; per-component variance is
    // mean_power / (2 n_r)
    return chi2_cdf_even(n_r - 1, r, mean_power_re / (2.0 * n_r), cfg);
}

}  // namespace secsat
