#include "torusmix/field.hpp"

#include <cmath>
#include <stdexcept>

namespace torusmix {

double PhysicalField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SpectralField::hermitian_defect() const {
    const int n = grid_.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const int mi = (n - i) % n;
        for (int j = 0; j < n; ++j) {
            const int mj = (n - j) % n;
            worst = std::max(worst, std::abs(bin(mi, mj) - std::conj(bin(i, j))));
        }
    }
    return worst;
}

double SpectralField::energy_above(int limit) const {
    const int n = grid_.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const int kx = grid_.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int ky = grid_.wavenumber(j);
            if (std::max(std::abs(kx), std::abs(ky)) > limit)
                worst = std::max(worst, std::abs(bin(i, j)));
        }
    }
    return worst;
}

void axpy(SpectralField& y, double a, const SpectralField& x) {
    if (y.grid() != x.grid()) throw std::invalid_argument("axpy: grid mismatch");
    auto* yd = y.data();
    const auto* xd = x.data();
    const std::size_t m = y.size();
    for (std::size_t i = 0; i < m; ++i) yd[i] += a * xd[i];
}

SpectralField scaled(const SpectralField& x, double a) {
    SpectralField out = x;
    auto* d = out.data();
    const std::size_t m = out.size();
    for (std::size_t i = 0; i < m; ++i) d[i] *= a;
    return out;
}

}  // namespace torusmix
