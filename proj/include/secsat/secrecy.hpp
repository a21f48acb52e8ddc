// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "secsat/channel.hpp"
#include "secsat/numerics.hpp"
#include "secsat/rng.hpp"

namespace secsat {

struct SecrecyParams {
    double rate_threshold = 1.0;  // target secrecy rate, bit/s/Hz
    double noise_bob = 1.0;       // receiver noise power at the legitimate user
    double noise_eve = 1.0;       // receiver noise power at the eavesdropper
};

// Split of the total budget P between the information signal (alpha * P at
// the satellite) and the jamming signal ((1 - alpha) * P at the relay).
struct PowerSplit {
    double total = 1.0;
    double alpha = 0.5;
    double satellite_power() const { return alpha * total; }
    double relay_power() const { return (1.0 - alpha) * total; }
};

struct SnrBundle {
    double gamma_sd = 0.0;  // satellite -> user, before the power split
    double gamma_se = 0.0;  // satellite -> eavesdropper, before the split
    double gamma_rd = 0.0;  // jamming seen by the user (zero under null-space jamming)
    double gamma_re = 0.0;  // jamming leakage onto the eavesdropper at full power
};

enum class SopMethod { MonteCarlo, Quadrature, ClosedForm };

struct SopEstimate {
    double value = 0.0;
    double half_width_95 = 0.0;  // 0 for deterministic methods
    long long trials = 1;        // 1 for deterministic methods
    SopMethod method = SopMethod::MonteCarlo;
};

// Statistics of the three links entering the outage event. The eavesdropper
// copy of the downlink has the same norm as the legitimate one (matched-gain
// regime), so a single satellite spec covers both h_sd and h_se.
struct LinkEnsemble {
    ChannelSpec satellite;  // h_sd / h_se, dim = transmit antennas
    ChannelSpec relay_bob;  // h_rd, dim = relay antennas
    ChannelSpec relay_eve;  // h_re, dim = relay antennas
};

double sinr_bob(double p_s, double h_sd_norm_sq, double noise_bob);
double sinr_eve(double p_s, double h_se_norm_sq, double p_r, double residual, double noise_eve);

// [log2(1 + gamma_d) - log2(1 + gamma_e)]^+
double secrecy_capacity(double gamma_d, double gamma_e);

// Secrecy capacity as a function of the power split, with the jamming power
// scaling the leakage denominator. Requires alpha in (0, 1).
double secrecy_capacity_alpha(double alpha, const SnrBundle& snr);

// 95% binomial half-width: normal approximation, switching to the Wilson
// interval width when the event count is within 10 of either boundary.
double binomial_half_width_95(long long events, long long trials);

// Secrecy outage probability Pr[C_s < rate_threshold] by simulation. Trial t
// draws from sub-streams (key.tag * 256 + label) with labels 0 = satellite,
// 1 = relay->user, 2 = relay->eavesdropper, 3 = leakage model, so estimates
// are bit-identical for every thread count. Rayleigh relay links are sampled
// physically (vector draw + null-space projection); Rician links use the
// model law. Requires trials >= 1000.
SopEstimate sop_monte_carlo(const LinkEnsemble& links, const PowerSplit& split,
                            const SecrecyParams& params, long long trials, const StreamKey& key,
                            int threads = 1);

// Same probability by conditioning on the downlink SNR and integrating the
// leakage CDF against its density. Deterministic; satellite may be any model,
// relay_eve must be Rayleigh or Rician.
SopEstimate sop_quadrature(double alpha, double big_p, const ChannelSpec& satellite,
                           const ChannelSpec& relay_eve, const SecrecyParams& params,
                           const ToleranceConfig& cfg = {});

// Closed forms for a deterministic downlink gain: gain_a = ||h_sd||^2 =
// ||h_se||^2. n_r is the relay antenna count; sigma_re_sq the per-component
// leakage variance, s_re the leakage line-of-sight amplitude.
double sop_closed_rayleigh(double alpha, double big_p, double gain_a, const SecrecyParams& params,
                           int n_r, double sigma_re_sq, const ToleranceConfig& cfg = {});
double sop_closed_rician(double alpha, double big_p, double gain_a, const SecrecyParams& params,
                         int n_r, double s_re, double sigma_re_sq,
                         const ToleranceConfig& cfg = {});

}  // namespace secsat
