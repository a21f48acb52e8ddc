// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

#include "secsat/rng.hpp"

namespace secsat {

using ComplexVector = std::vector<std::complex<double>>;

enum class FadingModel {
    Rayleigh,        // zero-mean complex Gaussian entries
    Rician,          // line-of-sight component plus scattered part
    GaussianApprox,  // deterministic: every entry sqrt(mean_power / dim)
};

// Statistics of one MIMO link. mean_power is E[||h||^2]; rician_k is the
// ratio of line-of-sight power to scattered power and is ignored outside the
// Rician model.
struct ChannelSpec {
    FadingModel model = FadingModel::Rayleigh;
    double rician_k = 0.0;
    double mean_power = 1.0;
    int dim = 1;
};

// Orthonormal basis (dim-1 columns of length dim) of the orthogonal
// complement of the vector it was built from.
struct NullSpaceBasis {
    std::vector<ComplexVector> columns;
};

void validate(const ChannelSpec& spec);

// One fading realization; consumes 2*dim Gaussians (none for GaussianApprox).
ComplexVector sample_channel(const ChannelSpec& spec, RandomStream& rng);

// Householder construction: reflect h onto the first axis and keep the
// remaining columns of the reflector. Throws for dim < 2 or ||h|| < 1e-12.
NullSpaceBasis null_space_basis(const ComplexVector& h);

// Jamming waveform G z with z i.i.d. complex Gaussian scaled so E||x||^2 = 1.
// The result is orthogonal to the vector the basis was built from.
ComplexVector an_signal(const NullSpaceBasis& basis, RandomStream& rng);

// ||h_re^H G||^2: jamming power that survives at the eavesdropper.
double residual_interference_power(const ComplexVector& h_re, const NullSpaceBasis& basis);

// Draws ||h_re^H G||^2 from its distribution directly instead of sampling
// vectors and projecting. For Rayleigh links the reduced-dimension law is
// exact; for Rician links this is the noncentral model law used by the
// closed-form outage expressions (see README on that approximation).
double sample_residual_model(const ChannelSpec& relay_eve, RandomStream& rng);

}  // namespace secsat
