// SPDX-License-Identifier: Apache-2.0

#include "secsat/numerics.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace secsat {

namespace {

constexpr double kBesselSeriesCut = 20.0;  // ascending series below, asymptotic above
constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_tolerances(const ToleranceConfig& cfg) {
    if (!(cfg.series_tol > 0.0) || !(cfg.quad_tol > 0.0) || cfg.max_terms < 1 ||
        cfg.max_subdivisions < 1) {
        throw std::invalid_argument("numerics: invalid ToleranceConfig");
    }
}

double clamp01(double p) {
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

// ln I_n(x) by the ascending series summed outward from its largest term.
// All terms are positive and the peak term is seeded in log space, so the
// evaluation neither overflows nor loses the leading digits for any x the
// caller can represent. Peak index solves k(n+k) = (x/2)^2.
double log_bessel_i_series(int n, double x, const ToleranceConfig& cfg) {
    const double nd = n;
    long kstar = static_cast<long>(0.5 * (std::sqrt(nd * nd + x * x) - nd));
    if (kstar < 0) kstar = 0;
    const double log_half = std::log(0.5 * x);
    const double log_peak =
        (nd + 2.0 * kstar) * log_half - std::lgamma(kstar + 1.0) - std::lgamma(nd + kstar + 1.0);
    const double q = 0.25 * x * x;

    double sum = 1.0;  // peak term rescaled to 1
    double term = 1.0;
    for (long k = kstar + 1; k <= kstar + cfg.max_terms; ++k) {
        term *= q / (static_cast<double>(k) * (nd + static_cast<double>(k)));
        sum += term;
        if (term <= sum * 1e-17) break;
    }
    term = 1.0;
    for (long k = kstar; k >= 1; --k) {
        term *= (static_cast<double>(k) * (nd + static_cast<double>(k))) / q;
        sum += term;
        if (term <= sum * 1e-17) break;
    }
    return log_peak + std::log(sum);
}

// e^{-x} I_n(x) ~ (2 pi x)^{-1/2} * sum_k (-1)^k a_k(n)/(8x)^k. The expansion
// is semi-convergent; returns NaN as soon as the terms stop shrinking before
// reaching the tolerance, and the caller falls back to the exact series.
double scaled_bessel_asymptotic(int n, double x, const ToleranceConfig& cfg) {
    const double mu = 4.0 * static_cast<double>(n) * n;
    double term = 1.0;
    double sum = 1.0;
    double prev_abs = 1.0;
    for (int k = 1; k <= cfg.max_terms; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * x);
        const double mag = std::abs(term);
        if (mag >= prev_abs) return std::numeric_limits<double>::quiet_NaN();
        sum += term;
        prev_abs = mag;
        if (mag <= cfg.series_tol) return sum / std::sqrt(kTwoPi * x);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void check_bessel_args(int order, double x) {
    if (order < 0 || order > 64) {
        throw std::invalid_argument("bessel_i: order must be an integer in 0..64");
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument("bessel_i: x must be finite and nonnegative");
    }
}

// Regularized lower incomplete gamma by its ascending series; valid and fast
// for x < s + 1.
double gamma_p_series(double s, double x, const ToleranceConfig& cfg) {
    double ap = s;
    double term = 1.0 / s;
    double sum = term;
    for (int i = 0; i < cfg.max_terms; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) {
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
        }
    }
    throw NonConvergenceError("gamma_p: series did not converge");
}

// Regularized upper incomplete gamma by Lentz's continued fraction; valid
// for x >= s + 1.
double gamma_q_contfrac(double s, double x, const ToleranceConfig& cfg) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= cfg.max_terms; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
        }
    }
    throw NonConvergenceError("gamma_q: continued fraction did not converge");
}

}  // namespace

namespace detail {

double gamma_p(double s, double x, const ToleranceConfig& cfg) {
    if (!(s > 0.0) || !(x >= 0.0) || !std::isfinite(s) || !std::isfinite(x)) {
        throw std::invalid_argument("gamma_p: require s > 0 and finite x >= 0");
    }
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return clamp01(gamma_p_series(s, x, cfg));
    return clamp01(1.0 - gamma_q_contfrac(s, x, cfg));
}

double gamma_q(double s, double x, const ToleranceConfig& cfg) {
    if (!(s > 0.0) || !(x >= 0.0) || !std::isfinite(s) || !std::isfinite(x)) {
        throw std::invalid_argument("gamma_q: require s > 0 and finite x >= 0");
    }
    if (x == 0.0) return 1.0;
    if (x < s + 1.0) return clamp01(1.0 - gamma_p_series(s, x, cfg));
    return clamp01(gamma_q_contfrac(s, x, cfg));
}

double log_bessel_i_scaled(int order, double x, const ToleranceConfig& cfg) {
    check_tolerances(cfg);
    check_bessel_args(order, x);
    if (x == 0.0) return order == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (x > kBesselSeriesCut) {
        const double scaled = scaled_bessel_asymptotic(order, x, cfg);
        if (!std::isnan(scaled) && scaled > 0.0) return std::log(scaled);
    }
    return log_bessel_i_series(order, x, cfg) - x;
}

}  // namespace detail

double bessel_i(int order, double x, const ToleranceConfig& cfg) {
    check_tolerances(cfg);
    check_bessel_args(order, x);
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (x <= kBesselSeriesCut) {
        // plain ascending series; every term positive, no cancellation
        double term = std::exp(order * std::log(0.5 * x) - std::lgamma(order + 1.0));
        double sum = term;
        const double q = 0.25 * x * x;
        for (int k = 1; k <= cfg.max_terms; ++k) {
            term *= q / (k * (order + static_cast<double>(k)));
            sum += term;
            if (term <= cfg.series_tol || term <= sum * 1e-17) break;
        }
        return sum;
    }
    const double scaled = scaled_bessel_asymptotic(order, x, cfg);
    if (!std::isnan(scaled) && scaled > 0.0) return scaled * std::exp(x);
    return std::exp(log_bessel_i_series(order, x, cfg));
}

double marcum_q(int m, double a, double b, const ToleranceConfig& cfg) {
    check_tolerances(cfg);
    if (m < 1 || m > 64) throw std::invalid_argument("marcum_q: order must be in 1..64");
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("marcum_q: a and b must be finite and nonnegative");
    }
    if (b == 0.0) return 1.0;

    const double lambda = 0.5 * a * a;  // Poisson mixing rate
    const double y = 0.5 * b * b;       // gamma-tail evaluation point
    if (lambda == 0.0) return clamp01(detail::gamma_q(m, y, cfg));

    // Q_m(a,b) = sum_k Pois(k; lambda) * Q(m+k, y). Summing outward from the
    // Poisson mode keeps every seed within double range even when lambda is
    // in the hundreds; the neglected tail is bounded by the unaccumulated
    // Poisson mass because each gamma tail lies in [0, 1].
    const long k0 = static_cast<long>(lambda);
    const double p0 = std::exp(-lambda + k0 * std::log(lambda) - std::lgamma(k0 + 1.0));
    const double q0 = detail::gamma_q(m + static_cast<double>(k0), y, cfg);
    // d(s) = e^{-y} y^s / s!  with s = m + k0, for the shift Q(s+1) = Q(s) + d(s)
    const double d0 =
        std::exp(-y + (m + static_cast<double>(k0)) * std::log(y) - std::lgamma(m + k0 + 1.0));

    double sum = p0 * q0;
    double mass = p0;

    {
        double p = p0, q = q0, d = d0;
        for (long k = k0 + 1; k <= k0 + cfg.max_terms && 1.0 - mass > cfg.series_tol; ++k) {
            q += d;
            d *= y / (m + static_cast<double>(k));
            p *= lambda / static_cast<double>(k);
            sum += p * q;
            mass += p;
        }
    }
    if (k0 > 0) {
        double p = p0, q = q0, d = d0;
        for (long k = k0; k >= 1 && 1.0 - mass > cfg.series_tol; --k) {
            p *= static_cast<double>(k) / lambda;
            d *= (m + static_cast<double>(k)) / y;
            q -= d;
            if (q < 0.0) q = 0.0;  // cancellation guard deep in the lower tail
            sum += p * q;
            mass += p;
        }
    }
    // Floating accumulation of ~1e3 Poisson terms caps the reachable mass
    // deficit near 1e-13; a larger deficit means genuine truncation.
    if (1.0 - mass > 1e3 * cfg.series_tol) {
        throw NonConvergenceError("marcum_q: Poisson mixture did not converge");
    }
    return clamp01(sum);
}

double chi2_cdf_even(int half_dof, double x, double scale, const ToleranceConfig& cfg) {
    check_tolerances(cfg);
    if (half_dof < 1) throw std::invalid_argument("chi2_cdf_even: half_dof must be >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("chi2_cdf_even: scale must be positive and finite");
    }
    if (std::isnan(x)) throw std::invalid_argument("chi2_cdf_even: x must not be NaN");
    if (x <= 0.0) return 0.0;

    const double z = x / (2.0 * scale);
    double survival;
    const double e = std::exp(-z);
    if (e > 0.0) {
        // every addend is a Poisson pmf value, so the linear recurrence
        // cannot overflow
        double term = e;
        double s = e;
        for (int k = 1; k < half_dof; ++k) {
            term *= z / k;
            s += term;
        }
        survival = s;
    } else {
        // beyond exp underflow each addend is evaluated in log space
        double s = 0.0;
        const double log_z = std::log(z);
        for (int k = 0; k < half_dof; ++k) {
            s += std::exp(-z + k * log_z - std::lgamma(k + 1.0));
        }
        survival = s;
    }
    return clamp01(1.0 - survival);
}

double noncentral_chi2_cdf(int half_dof, double noncentrality_amplitude, double x, double scale,
                           const ToleranceConfig& cfg) {
    check_tolerances(cfg);
    if (half_dof < 1 || half_dof > 64) {
        throw std::invalid_argument("noncentral_chi2_cdf: half_dof must be in 1..64");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("noncentral_chi2_cdf: scale must be positive and finite");
    }
    if (!(noncentrality_amplitude >= 0.0) || !std::isfinite(noncentrality_amplitude)) {
        throw std::invalid_argument(
            "noncentral_chi2_cdf: noncentrality amplitude must be finite and nonnegative");
    }
    if (std::isnan(x)) throw std::invalid_argument("noncentral_chi2_cdf: x must not be NaN");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;

    const double sigma = std::sqrt(scale);
    return clamp01(1.0 - marcum_q(half_dof, noncentrality_amplitude / sigma, std::sqrt(x) / sigma, cfg));
}

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    int budget;
};

double eval_checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw std::invalid_argument("integrate: integrand is not finite");
    return v;
}

// Richardson-corrected adaptive Simpson; `whole` is the parent estimate of
// the same interval so each level costs two new evaluations.
double simpson_adapt(SimpsonState& st, double a, double m, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval_checked(st.f, lm);
    const double frm = eval_checked(st.f, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    // an interval halved 60 times is below double resolution
    if (depth >= 60 || --st.budget < 0) {
        throw NonConvergenceError("integrate: subdivision budget exhausted");
    }
    const double half_tol = 0.5 * tol;
    return simpson_adapt(st, a, lm, m, fa, flm, fm, left, half_tol, depth + 1) +
           simpson_adapt(st, m, rm, b, fm, frm, fb, right, half_tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const ToleranceConfig& cfg) {
    check_tolerances(cfg);
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw std::invalid_argument("integrate: require finite lo < hi");
    }
    SimpsonState st{f, cfg.max_subdivisions};
    const double m = 0.5 * (lo + hi);
    const double fa = eval_checked(f, lo);
    const double fm = eval_checked(f, m);
    const double fb = eval_checked(f, hi);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_adapt(st, lo, m, hi, fa, fm, fb, whole, cfg.quad_tol, 0);
}

}  // namespace secsat
