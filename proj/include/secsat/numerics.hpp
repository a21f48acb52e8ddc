// SPDX-License-Identifier: Apache-2.0
//
// Special functions and quadrature used by the closed-form outage
// expressions: modified Bessel I, generalized Marcum Q, even-dof central
// and noncentral chi-square CDFs, and adaptive Simpson integration.

#pragma once

#include <functional>
#include <stdexcept>

namespace secsat {

struct ToleranceConfig {
    double series_tol = 1e-12;     // absolute truncation tolerance for series
    double quad_tol = 1e-9;        // absolute quadrature tolerance
    int max_terms = 10000;         // series term budget (per direction)
    int max_subdivisions = 100000; // total interval splits before giving up
};

// Raised when an iterative evaluation exhausts its budget without meeting
// the requested tolerance.
class NonConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Modified Bessel function of the first kind, integer order 0..64, x >= 0.
double bessel_i(int order, double x, const ToleranceConfig& cfg = {});

// Generalized Marcum Q-function Q_m(a, b), m in 1..64; result in [0, 1].
double marcum_q(int m, double a, double b, const ToleranceConfig& cfg = {});

// CDF of a sum of 2*half_dof squared independent zero-mean Gaussians of
// variance `scale`:  1 - exp(-z) * sum_{m<half_dof} z^m/m!,  z = x/(2*scale).
// Returns 0 for x <= 0.
double chi2_cdf_even(int half_dof, double x, double scale, const ToleranceConfig& cfg = {});

// CDF of the noncentral counterpart with total noncentrality amplitude s
// (sum of squared component means = s^2):  1 - Q_n(s/sigma, sqrt(x)/sigma).
// Returns 0 for x <= 0; s = 0 degenerates to chi2_cdf_even.
double noncentral_chi2_cdf(int half_dof, double noncentrality_amplitude, double x, double scale,
                           const ToleranceConfig& cfg = {});

// Adaptive Simpson quadrature of f over [lo, hi] to absolute accuracy
// quad_tol. Throws NonConvergenceError when max_subdivisions is exhausted.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const ToleranceConfig& cfg = {});

namespace detail {

// ln(e^{-x} I_n(x)) for x >= 0: the scaled form stays finite for the large
// arguments produced by noncentral-chi-square densities.
double log_bessel_i_scaled(int order, double x, const ToleranceConfig& cfg = {});

// Regularized incomplete gamma functions P(s, x) and Q(s, x) = 1 - P(s, x).
double gamma_p(double s, double x, const ToleranceConfig& cfg = {});
double gamma_q(double s, double x, const ToleranceConfig& cfg = {});

}  // namespace detail

}  // namespace secsat
