// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "secsat/channel.hpp"
#include "secsat/secrecy.hpp"

namespace secsat {

enum class AllocationMethod { Uniform, OptimalInstantaneous, StatisticalTraversal };

struct AllocationResult {
    double alpha = 0.5;
    AllocationMethod method = AllocationMethod::Uniform;
    // Secrecy capacity at alpha for the instantaneous scheme, the minimized
    // closed-form outage probability for the traversal, NaN for uniform.
    double objective = 0.0;
};

// Inputs of the closed-form traversal: the grid spacing and everything the
// outage expression needs. mean_power_sd doubles as the deterministic
// downlink gain; the relay model picks the Rayleigh or Rician leakage law.
struct TraversalConfig {
    double step = 0.05;  // alpha grid spacing, in (0, 0.5)
    FadingModel relay_link_model = FadingModel::Rayleigh;
    double rician_k_re = 0.0;  // used when relay_link_model == Rician
    double mean_power_sd = 1.0;
    double mean_power_re = 1.0;
    double big_p = 1.0;
    SecrecyParams params;
    int n_r = 2;
};

// Fixed 50/50 split; objective is NaN because no criterion is evaluated.
AllocationResult alpha_uniform();

// 2^{C_s(alpha)} for fixed instantaneous SNRs: the quantity whose maximizer
// is the optimal split.
double objective_f(double alpha, double gamma_sd, double gamma_re);

// Closed-form maximizer of objective_f. When the two SNRs agree to within
// 1e-9 relative the limit value 0.5 is returned exactly.
AllocationResult alpha_optimal(double gamma_sd, double gamma_re);

// Same, from raw channel observations instead of ready-made SNRs.
AllocationResult alpha_optimal_from_channels(double big_p, double h_sd_norm_sq, double residual,
                                             double noise_bob, double noise_eve);

// Minimizes the closed-form outage probability over the grid {step, 2*step,
// ...} restricted to (0, 1); ties resolve to the smallest alpha.
AllocationResult alpha_statistical(const TraversalConfig& cfg);

}  // namespace secsat
