#pragma once

#include "torusmix/field.hpp"

namespace torusmix {

// Forward transform. Normalized so that coefficients are the amplitudes in
// w(x) = sum_k w_hat_k exp(2*pi*i k.x). The mean mode is zeroed and the
// output is made exactly Hermitian (the field type's invariants).
SpectralField to_spectral(const PhysicalField& f);

// Inverse transform; exact inverse of to_spectral on zero-mean data.
PhysicalField to_physical(const SpectralField& w);

}  // namespace torusmix
