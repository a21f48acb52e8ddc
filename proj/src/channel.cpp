// SPDX-License-Identifier: Apache-2.0

#include "secsat/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace secsat {

void validate(const ChannelSpec& spec) {
    if (spec.dim < 1) throw std::invalid_argument("ChannelSpec: dim must be >= 1");
    if (!(spec.mean_power > 0.0) || !std::isfinite(spec.mean_power)) {
        throw std::invalid_argument("ChannelSpec: mean_power must be positive and finite");
    }
    if (spec.model == FadingModel::Rician &&
        (!(spec.rician_k >= 0.0) || !std::isfinite(spec.rician_k))) {
        throw std::invalid_argument("ChannelSpec: rician_k must be finite and nonnegative");
    }
}

ComplexVector sample_channel(const ChannelSpec& spec, RandomStream& rng) {
    validate(spec);
    ComplexVector h(spec.dim);
    const double per_entry = spec.mean_power / spec.dim;
    switch (spec.model) {
        case FadingModel::GaussianApprox: {
            const double amp = std::sqrt(per_entry);
            for (auto& e : h) e = amp;
            break;
        }
        case FadingModel::Rayleigh: {
            const double s = std::sqrt(0.5 * per_entry);
            for (auto& e : h) e = {s * rng.gaussian(), s * rng.gaussian()};
            break;
        }
        case FadingModel::Rician: {
            const double k = spec.rician_k;
            const double los = std::sqrt(per_entry * k / (k + 1.0));
            const double s = std::sqrt(0.5 * per_entry / (k + 1.0));
            for (auto& e : h) e = {los + s * rng.gaussian(), s * rng.gaussian()};
            break;
        }
    }
    return h;
}

NullSpaceBasis null_space_basis(const ComplexVector& h) {
    const int dim = static_cast<int>(h.size());
    if (dim < 2) throw std::invalid_argument("null_space_basis: need dim >= 2");
    double norm_sq = 0.0;
    for (const auto& e : h) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw std::invalid_argument("null_space_basis: channel entries must be finite");
        }
        norm_sq += std::norm(e);
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < 1e-12) throw std::invalid_argument("null_space_basis: degenerate channel");

    // Householder reflector P = I - 2 v v^H / ||v||^2 with v = h + phase *
    // ||h|| e_1 maps h onto the first axis; its remaining columns span the
    // orthogonal complement of h. Aligning the shift with the phase of h[0]
    // keeps the leading entry of v away from cancellation.
    ComplexVector v = h;
    std::complex<double> phase(1.0, 0.0);
    if (std::abs(h[0]) > 0.0) phase = h[0] / std::abs(h[0]);
    v[0] += phase * norm;
    double v_norm_sq = 0.0;
    for (const auto& e : v) v_norm_sq += std::norm(e);

    NullSpaceBasis basis;
    basis.columns.assign(dim - 1, ComplexVector(dim));
    for (int j = 1; j < dim; ++j) {
        auto& col = basis.columns[j - 1];
        const std::complex<double> scale = 2.0 * std::conj(v[j]) / v_norm_sq;
        for (int i = 0; i < dim; ++i) col[i] = -scale * v[i];
        col[j] += 1.0;
    }
    return basis;
}

ComplexVector an_signal(const NullSpaceBasis& basis, RandomStream& rng) {
    if (basis.columns.empty()) throw std::invalid_argument("an_signal: empty basis");
    const int cols = static_cast<int>(basis.columns.size());
    const int dim = static_cast<int>(basis.columns[0].size());
    const double s = std::sqrt(0.5 / cols);  // E||z||^2 = 1 across the basis
    ComplexVector x(dim, {0.0, 0.0});
    for (int j = 0; j < cols; ++j) {
        const std::complex<double> z{s * rng.gaussian(), s * rng.gaussian()};
        for (int i = 0; i < dim; ++i) x[i] += z * basis.columns[j][i];
    }
    return x;
}

double residual_interference_power(const ComplexVector& h_re, const NullSpaceBasis& basis) {
    if (basis.columns.empty() || h_re.size() != basis.columns[0].size()) {
        throw std::invalid_argument("residual_interference_power: dimension mismatch");
    }
    double total = 0.0;
    for (const auto& col : basis.columns) {
        std::complex<double> dot{0.0, 0.0};
        for (std::size_t i = 0; i < h_re.size(); ++i) dot += std::conj(h_re[i]) * col[i];
        total += std::norm(dot);
    }
    return total;
}

double sample_residual_model(const ChannelSpec& relay_eve, RandomStream& rng) {
    validate(relay_eve);
    const int n_r = relay_eve.dim;
    if (n_r < 2) throw std::invalid_argument("sample_residual_model: need dim >= 2");
    const int reduced = 2 * (n_r - 1);  // real components left after projection
    switch (relay_eve.model) {
        case FadingModel::Rayleigh: {
            const double sigma_sq = relay_eve.mean_power / (2.0 * n_r);
            double sum = 0.0;
            for (int i = 0; i < reduced; ++i) {
                const double g = rng.gaussian();
                sum += g * g;
            }
            return sigma_sq * sum;
        }
        case FadingModel::Rician: {
            const double k = relay_eve.rician_k;
            const double sigma = std::sqrt(relay_eve.mean_power / (2.0 * n_r * (k + 1.0)));
            const double s_amp = std::sqrt(relay_eve.mean_power * k / (k + 1.0));
            double g = s_amp + sigma * rng.gaussian();
            double sum = g * g;
            for (int i = 1; i < reduced; ++i) {
                g = sigma * rng.gaussian();
                sum += g * g;
            }
            return sum;
        }
        case FadingModel::GaussianApprox:
            break;
    }
    throw std::invalid_argument("sample_residual_model: link model has no leakage law");
}

}  // namespace secsat
