// SPDX-License-Identifier: Apache-2.0

#include "secsat/secrecy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "secsat/parallel.hpp"

namespace secsat {

namespace {

constexpr std::uint32_t kLabelSatellite = 0;
constexpr std::uint32_t kLabelRelayBob = 1;
constexpr std::uint32_t kLabelRelayEve = 2;
constexpr std::uint32_t kLabelLeakModel = 3;

std::uint32_t sub_tag(std::uint32_t tag, std::uint32_t label) { return tag * 256u + label; }

void check_params(const SecrecyParams& params) {
    if (!(params.rate_threshold >= 0.0) || !std::isfinite(params.rate_threshold)) {
        throw std::invalid_argument("SecrecyParams: rate_threshold must be finite and >= 0");
    }
    if (!(params.noise_bob > 0.0) || !(params.noise_eve > 0.0)) {
        throw std::invalid_argument("SecrecyParams: noise powers must be positive");
    }
}

void check_split(const PowerSplit& split) {
    if (!(split.total > 0.0) || !std::isfinite(split.total)) {
        throw std::invalid_argument("PowerSplit: total must be positive and finite");
    }
    if (!(split.alpha > 0.0 && split.alpha < 1.0)) {
        throw std::invalid_argument("PowerSplit: alpha must lie in (0, 1)");
    }
}

double norm_sq(const ComplexVector& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return s;
}

// Leakage threshold: the outage event conditioned on the downlink SNR is
// {gamma_re > V(gamma)}. Below the margin point the event holds for every
// leakage value, which the callers encode as an infinite threshold.
double leakage_threshold(double gamma, double alpha, double t_pow) {
    const double margin = 1.0 + alpha * gamma - t_pow;
    if (margin <= 0.0) return std::numeric_limits<double>::infinity();
    return (1.0 + alpha * gamma) * (t_pow - 1.0) / (margin * (1.0 - alpha));
}

}  // namespace

double sinr_bob(double p_s, double h_sd_norm_sq, double noise_bob) {
    if (!(noise_bob > 0.0)) throw std::invalid_argument("sinr_bob: noise must be positive");
    if (!(p_s >= 0.0) || !(h_sd_norm_sq >= 0.0)) {
        throw std::invalid_argument("sinr_bob: power and gain must be nonnegative");
    }
    return p_s * h_sd_norm_sq / noise_bob;
}

double sinr_eve(double p_s, double h_se_norm_sq, double p_r, double residual, double noise_eve) {
    if (!(noise_eve > 0.0)) throw std::invalid_argument("sinr_eve: noise must be positive");
    if (!(p_s >= 0.0) || !(h_se_norm_sq >= 0.0) || !(p_r >= 0.0) || !(residual >= 0.0)) {
        throw std::invalid_argument("sinr_eve: powers and gains must be nonnegative");
    }
    return p_s * h_se_norm_sq / (p_r * residual + noise_eve);
}

double secrecy_capacity(double gamma_d, double gamma_e) {
    const double c = std::log2((1.0 + gamma_d) / (1.0 + gamma_e));
    return c > 0.0 ? c : 0.0;
}

double secrecy_capacity_alpha(double alpha, const SnrBundle& snr) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("secrecy_capacity_alpha: alpha must lie in (0, 1)");
    }
    const double gamma_d = alpha * snr.gamma_sd / (1.0 + (1.0 - alpha) * snr.gamma_rd);
    const double gamma_e = alpha * snr.gamma_se / (1.0 + (1.0 - alpha) * snr.gamma_re);
    return secrecy_capacity(gamma_d, gamma_e);
}

double binomial_half_width_95(long long events, long long trials) {
    if (trials < 1 || events < 0 || events > trials) {
        throw std::invalid_argument("binomial_half_width_95: need 0 <= events <= trials");
    }
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(events) / n;
    if (events >= 10 && trials - events >= 10) {
        return z * std::sqrt(p * (1.0 - p) / n);
    }
    // Wilson width stays informative where the normal width collapses to 0
    const double z2 = z * z;
    return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
}

SopEstimate sop_monte_carlo(const LinkEnsemble& links, const PowerSplit& split,
                            const SecrecyParams& params, long long trials, const StreamKey& key,
                            int threads) {
    validate(links.satellite);
    validate(links.relay_bob);
    validate(links.relay_eve);
    check_split(split);
    check_params(params);
    if (trials < 1000) throw std::invalid_argument("sop_monte_carlo: need trials >= 1000");
    if (trials > 0xFFFFFFFFll) throw std::invalid_argument("sop_monte_carlo: trials exceed 2^32");
    if (links.relay_eve.dim < 2) {
        throw std::invalid_argument("sop_monte_carlo: relay links need dim >= 2");
    }

    const double p_s = split.satellite_power();
    const double p_r = split.relay_power();
    const bool physical_leakage = links.relay_eve.model == FadingModel::Rayleigh;
    const bool fixed_satellite = links.satellite.model == FadingModel::GaussianApprox;

    const long long events = parallel_count(trials, threads, [&](long long lo, long long hi) {
        long long count = 0;
        for (long long t = lo; t < hi; ++t) {
            const auto trial = static_cast<std::uint32_t>(t);
            double w;
            if (fixed_satellite) {
                w = links.satellite.mean_power;
            } else {
                RandomStream rs(key.seed, trial, sub_tag(key.tag, kLabelSatellite));
                w = norm_sq(sample_channel(links.satellite, rs));
            }
            double residual;
            if (physical_leakage) {
                RandomStream rs_rd(key.seed, trial, sub_tag(key.tag, kLabelRelayBob));
                RandomStream rs_re(key.seed, trial, sub_tag(key.tag, kLabelRelayEve));
                const auto basis = null_space_basis(sample_channel(links.relay_bob, rs_rd));
                residual = residual_interference_power(sample_channel(links.relay_eve, rs_re), basis);
            } else {
                RandomStream rs(key.seed, trial, sub_tag(key.tag, kLabelLeakModel));
                residual = sample_residual_model(links.relay_eve, rs);
            }
            const double gamma_d = sinr_bob(p_s, w, params.noise_bob);
            const double gamma_e = sinr_eve(p_s, w, p_r, residual, params.noise_eve);
            if (secrecy_capacity(gamma_d, gamma_e) < params.rate_threshold) ++count;
        }
        return count;
    });

    SopEstimate est;
    est.value = static_cast<double>(events) / static_cast<double>(trials);
    est.half_width_95 = binomial_half_width_95(events, trials);
    est.trials = trials;
    est.method = SopMethod::MonteCarlo;
    return est;
}

SopEstimate sop_quadrature(double alpha, double big_p, const ChannelSpec& satellite,
                           const ChannelSpec& relay_eve, const SecrecyParams& params,
                           const ToleranceConfig& cfg) {
    validate(satellite);
    validate(relay_eve);
    check_params(params);
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("sop_quadrature: alpha must lie in (0, 1)");
    }
    if (!(big_p > 0.0) || !std::isfinite(big_p)) {
        throw std::invalid_argument("sop_quadrature: big_p must be positive and finite");
    }
    if (relay_eve.dim < 2) throw std::invalid_argument("sop_quadrature: relay links need dim >= 2");
    if (relay_eve.model == FadingModel::GaussianApprox) {
        throw std::invalid_argument("sop_quadrature: relay link model has no leakage law");
    }

    const double t_pow = std::exp2(params.rate_threshold);
    const double v_sd = (t_pow - 1.0) / alpha;  // downlink SNR below which outage is certain
    const double pd = big_p / params.noise_bob;
    const double pe = big_p / params.noise_eve;
    const int n_r = relay_eve.dim;

    // CDF of the leakage SNR gamma_re = pe * ||h_re^H G||^2
    const auto cdf_gamma_re = [&](double x) -> double {
        if (std::isinf(x)) return 1.0;
        if (relay_eve.model == FadingModel::Rayleigh) {
            return chi2_cdf_even(n_r - 1, x / pe, relay_eve.mean_power / (2.0 * n_r), cfg);
        }
        const double k = relay_eve.rician_k;
        const double sigma_sq = relay_eve.mean_power / (2.0 * n_r * (k + 1.0));
        const double s_re = std::sqrt(relay_eve.mean_power * k / (k + 1.0));
        return noncentral_chi2_cdf(n_r - 1, s_re, x / pe, sigma_sq, cfg);
    };

    SopEstimate est;
    est.half_width_95 = 0.0;
    est.trials = 1;
    est.method = SopMethod::Quadrature;

    if (satellite.model == FadingModel::GaussianApprox) {
        // deterministic downlink: the outer integral collapses to one point
        const double gamma0 = pd * satellite.mean_power;
        est.value = gamma0 <= v_sd ? 1.0 : cdf_gamma_re(leakage_threshold(gamma0, alpha, t_pow));
        return est;
    }

    // Downlink SNR law: scaled (non)central chi-square with 2 * n_s real
    // components, noncentrality lambda = 2 * n_s * k_sd.
    const int n_s = satellite.dim;
    const double k_sd = satellite.model == FadingModel::Rician ? satellite.rician_k : 0.0;
    const double sigma_gamma_sq = pd * satellite.mean_power / (2.0 * n_s * (k_sd + 1.0));
    const double s_gamma = std::sqrt(pd * satellite.mean_power * k_sd / (k_sd + 1.0));
    const double lambda = 2.0 * n_s * k_sd;
    const double sigma_gamma = std::sqrt(sigma_gamma_sq);

    const auto pdf_gamma_sd = [&](double x) -> double {
        if (x <= 0.0) return 0.0;
        const double u = x / sigma_gamma_sq;
        double log_pdf;
        if (lambda > 0.0) {
            const double root = std::sqrt(lambda * u);
            log_pdf = -0.5 * (u + lambda) + 0.25 * (2.0 * n_s - 2.0) * std::log(u / lambda) +
                      root + detail::log_bessel_i_scaled(n_s - 1, root, cfg) -
                      std::log(2.0 * sigma_gamma_sq);
        } else {
            log_pdf = -0.5 * u + (n_s - 1.0) * std::log(u) - n_s * std::log(2.0) -
                      std::lgamma(n_s) - std::log(sigma_gamma_sq);
        }
        return std::exp(log_pdf);
    };

    const double cdf_at_vsd =
        v_sd <= 0.0 ? 0.0 : noncentral_chi2_cdf(n_s, s_gamma, v_sd, sigma_gamma_sq, cfg);
    if (v_sd <= 0.0) {
        est.value = 0.0;  // zero target rate: the capacity floor already meets it
        return est;
    }

    // Truncate the upper limit where the downlink survival mass is negligible
    double upper = std::max(2.0 * v_sd, sigma_gamma_sq * (2.0 * n_s + lambda) * 4.0);
    for (int i = 0; i < 200; ++i) {
        const double survival =
            marcum_q(n_s, s_gamma / sigma_gamma, std::sqrt(upper) / sigma_gamma, cfg);
        if (survival < 1e-13) break;
        upper *= 2.0;
    }

    const auto integrand = [&](double gamma) {
        const double pdf = pdf_gamma_sd(gamma);
        if (pdf == 0.0) return 0.0;
        return pdf * cdf_gamma_re(leakage_threshold(gamma, alpha, t_pow));
    };

    // Panels anchored around the density mean so the first Simpson nodes of
    // some panel always land on the peak; one huge interval could otherwise
    // look flat at its three seed points and converge to a false zero.
    const double mean_gamma = sigma_gamma_sq * (2.0 * n_s + lambda);
    std::vector<double> cuts{v_sd};
    for (double f : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double c = mean_gamma * f;
        if (c > v_sd && c < upper) cuts.push_back(c);
    }
    cuts.push_back(upper);

    double value = cdf_at_vsd;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] > cuts[i]) value += integrate(integrand, cuts[i], cuts[i + 1], cfg);
    }
    est.value = value < 0.0 ? 0.0 : (value > 1.0 ? 1.0 : value);
    return est;
}

namespace {

// Shared scaffold of the two closed forms: returns the leakage threshold, or
// +inf when the downlink margin cannot support the target rate at all.
double closed_form_threshold(double alpha, double big_p, double gain_a,
                             const SecrecyParams& params, int n_r, double sigma_re_sq) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("sop_closed: alpha must lie in (0, 1)");
    }
    if (!(big_p > 0.0) || !std::isfinite(big_p) || !(gain_a > 0.0) || !std::isfinite(gain_a)) {
        throw std::invalid_argument("sop_closed: big_p and gain_a must be positive and finite");
    }
    if (n_r < 2) throw std::invalid_argument("sop_closed: n_r must be >= 2");
    if (!(sigma_re_sq > 0.0) || !std::isfinite(sigma_re_sq)) {
        throw std::invalid_argument("sop_closed: sigma_re_sq must be positive and finite");
    }
    check_params(params);
    const double t_pow = std::exp2(params.rate_threshold);
    const double gamma0 = (big_p / params.noise_bob) * gain_a;
    return leakage_threshold(gamma0, alpha, t_pow);
}

}  // namespace

double sop_closed_rayleigh(double alpha, double big_p, double gain_a, const SecrecyParams& params,
                           int n_r, double sigma_re_sq, const ToleranceConfig& cfg) {
    const double v_re = closed_form_threshold(alpha, big_p, gain_a, params, n_r, sigma_re_sq);
    if (std::isinf(v_re)) return 1.0;
    const double pe = big_p / params.noise_eve;
    return chi2_cdf_even(n_r - 1, v_re / pe, sigma_re_sq, cfg);
}

double sop_closed_rician(double alpha, double big_p, double gain_a, const SecrecyParams& params,
                         int n_r, double s_re, double sigma_re_sq, const ToleranceConfig& cfg) {
    if (!(s_re >= 0.0) || !std::isfinite(s_re)) {
        throw std::invalid_argument("sop_closed_rician: s_re must be finite and nonnegative");
    }
    const double v_re = closed_form_threshold(alpha, big_p, gain_a, params, n_r, sigma_re_sq);
    if (std::isinf(v_re)) return 1.0;
    const double pe = big_p / params.noise_eve;
    return noncentral_chi2_cdf(n_r - 1, s_re, v_re / pe, sigma_re_sq, cfg);
}

}  // namespace secsat
