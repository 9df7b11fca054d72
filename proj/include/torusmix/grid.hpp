#pragma once

#include <stdexcept>

namespace torusmix {

enum class Axis { x, y };

// Uniform discretization of the periodic unit square [0,1)^2.
// Collocation points are x_ij = (i*h, j*h) with h = 1/n; the spectral side
// lives on the integer wavenumber lattice k in [-n/2, n/2)^2.
struct Grid {
    int n = 0;
    double h = 0.0;

    static Grid make(int n) {
        if (n < 16 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 16");
        return Grid{n, 1.0 / n};
    }

    int size() const { return n * n; }

    // DFT bin index -> signed wavenumber (bin n/2 maps to -n/2).
    int wavenumber(int idx) const { return idx < n / 2 ? idx : idx - n; }
    // Signed wavenumber -> DFT bin index.
    int bin(int k) const { return k >= 0 ? k : k + n; }

    // Largest wavenumber kept by the 2/3 dealiasing rule (per component).
    int dealias_cutoff() const { return n / 3; }

    bool operator==(const Grid& o) const { return n == o.n; }
    bool operator!=(const Grid& o) const { return n != o.n; }
};

}  // namespace torusmix
