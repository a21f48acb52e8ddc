// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "secsat/channel.hpp"
#include "secsat/numerics.hpp"

namespace secsat {

// M candidate jamming relays: per-relay statistics of the link toward the
// legitimate user and the link toward the eavesdropper, plus the mean
// eavesdropper-link powers the statistical criterion ranks by.
struct RelayEnsemble {
    int count = 0;                                           // M
    std::vector<std::pair<ChannelSpec, ChannelSpec>> specs;  // (relay->user, relay->eavesdropper)
    std::vector<double> mean_powers_re;                      // E[||h_re,k||^2] per relay
};

void validate(const RelayEnsemble& ensemble);

// Index (1-based) of the relay whose jamming currently leaks most strongly
// onto the eavesdropper; ties resolve to the lowest index.
int select_instantaneous(const std::vector<double>& residuals);

// Index (1-based) of the relay with the largest mean eavesdropper-link
// power; ties resolve to the lowest index.
int select_statistical(const std::vector<double>& mean_powers_re);

// CDF of the post-projection leakage power ||h_re^H G||^2 for a Rayleigh
// eavesdropper link with n_r antennas and the given mean power.
double residual_cdf(double r, int n_r, double mean_power_re, const ToleranceConfig& cfg = {});

}  // namespace secsat
