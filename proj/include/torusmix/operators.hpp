#pragma once

#include <utility>

#include "torusmix/fft.hpp"
#include "torusmix/field.hpp"

namespace torusmix {

// d/dx or d/dy: multiply by 2*pi*i*k_axis. The Nyquist plane of the chosen
// axis is zeroed (it has no conjugate partner under odd symbols).
SpectralField derivative(const SpectralField& w, Axis axis);

// Multiply by -4*pi^2*|k|^2.
SpectralField laplacian(const SpectralField& w);

// Divide by -4*pi^2*|k|^2; the output mean mode is zero. Throws
// std::invalid_argument if |w_hat_0| > 1e-14 (callers must hand in
// zero-mean fields; anything else is a bug upstream).
SpectralField invert_laplacian(const SpectralField& w);

// (u, v) = (-d/dy psi, d/dx psi); divergence-free by construction.
std::pair<SpectralField, SpectralField> perp_gradient(const SpectralField& psi);

// Riesz transform: multiply by i*k_axis/|k|; mean and Nyquist modes zeroed.
SpectralField riesz(const SpectralField& w, Axis axis);

// Zero all modes with max(|kx|, |ky|) above the grid's 2/3-rule cutoff.
void dealias(SpectralField& w);
SpectralField dealiased(const SpectralField& w);

// Pointwise product computed in physical space with the 2/3 rule applied to
// both inputs and the output; result is zero-mean.
SpectralField multiply_dealiased(const SpectralField& a, const SpectralField& b);

// Jacobian d(a,b) = a_x b_y - b_x a_y, dealiased pseudospectral product.
// Throws std::invalid_argument on grid mismatch.
SpectralField jacobian(const SpectralField& a, const SpectralField& b);

// Spectral interpolation onto another (finer or coarser) grid: pad with
// zeros or truncate. Used by refinement oracles and the constant studies.
SpectralField resample(const SpectralField& w, Grid target);

}  // namespace torusmix
