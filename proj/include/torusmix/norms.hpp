#pragma once

#include <vector>

#include "torusmix/field.hpp"

namespace torusmix {

// Discrete L^p norm: (h^2 sum |f|^p)^(1/p) for finite p >= 1, collocation
// maximum for p = infinity. Throws std::invalid_argument for p < 1.
double lp_norm(const PhysicalField& f, double p);

// Spectral Sobolev norm |w|_{H^s} = sqrt(sum_{k != 0} |k|^{2s} |w_hat_k|^2),
// with |k| the Euclidean length of the integer wavenumber vector. s = 0 is
// the L^2 norm by Parseval.
double sobolev_norm(const SpectralField& w, double s);

// Mix norm: sobolev_norm restricted to s in {-1, -1/2}, the two scales used
// by the mixing diagnostics.
double mix_norm(const SpectralField& theta, double s);

// Discrete-gradient L^2 norm, 2*pi * |w|_{H^1} (the 2*pi converts the
// integer-wavenumber convention to physical derivatives).
double grad_l2_norm(const SpectralField& w);

// h^2 sum a*b, the collocation inner product.
double inner_product(const PhysicalField& a, const PhysicalField& b);

// Ball sweep for the discrete BMO seminorm. Radii are fractions of the
// domain side; balls are the sets of grid points within periodic Euclidean
// distance r of a center, and centers are subsampled with the given stride.
struct BmoConfig {
    std::vector<double> radii;
    int center_stride = 4;

    // Doubling radii 2h, 4h, ..., 1/2 and stride 4.
    static BmoConfig defaults(const Grid& grid);
    void validate(const Grid& grid) const;
};

// sup over sampled balls of the mean absolute deviation from the ball
// average (a lower bound of the true sup that grows with the sampling sets).
double bmo_seminorm(const PhysicalField& f, const BmoConfig& cfg);

}  // namespace torusmix
