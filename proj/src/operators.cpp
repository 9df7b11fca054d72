#include "torusmix/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace torusmix {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// out_k = (i * s_k) * w_k with s the real odd symbol along one axis.
SpectralField apply_imaginary_symbol(const SpectralField& w, Axis axis,
                                     double (*symbol)(int kx, int ky)) {
    const Grid grid = w.grid();
    const int n = grid.n;
    SpectralField out(grid);
    for (int i = 0; i < n; ++i) {
        const int kx = grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int ky = grid.wavenumber(j);
            // The -n/2 plane of the differentiated axis has no +n/2 partner;
            // an odd symbol there would break Hermitian symmetry.
            const int ka = axis == Axis::x ? kx : ky;
            if (ka == -n / 2 || (kx == 0 && ky == 0)) continue;
            const double s = symbol(kx, ky);
            const std::complex<double> c = w.bin(i, j);
            out.bin(i, j) = {-s * c.imag(), s * c.real()};
        }
    }
    return out;
}

double deriv_symbol_x(int kx, int) { return two_pi * kx; }
double deriv_symbol_y(int, int ky) { return two_pi * ky; }
double riesz_symbol_x(int kx, int ky) {
    return kx / std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
}
double riesz_symbol_y(int kx, int ky) {
    return ky / std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky);
}

}  // namespace

SpectralField derivative(const SpectralField& w, Axis axis) {
    return apply_imaginary_symbol(w, axis, axis == Axis::x ? deriv_symbol_x : deriv_symbol_y);
}

SpectralField laplacian(const SpectralField& w) {
    const Grid grid = w.grid();
    const int n = grid.n;
    SpectralField out(grid);
    for (int i = 0; i < n; ++i) {
        const double kx = grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.wavenumber(j);
            out.bin(i, j) = w.bin(i, j) * (-two_pi * two_pi * (kx * kx + ky * ky));
        }
    }
    return out;
}

SpectralField invert_laplacian(const SpectralField& w) {
    if (std::abs(w.data()[0]) > 1e-14)
        throw std::invalid_argument("invert_laplacian: input has a nonzero mean mode");
    const Grid grid = w.grid();
    const int n = grid.n;
    SpectralField out(grid);
    for (int i = 0; i < n; ++i) {
        const double kx = grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            if (i == 0 && j == 0) continue;
            const double ky = grid.wavenumber(j);
            out.bin(i, j) = w.bin(i, j) / (-two_pi * two_pi * (kx * kx + ky * ky));
        }
    }
    return out;
}

std::pair<SpectralField, SpectralField> perp_gradient(const SpectralField& psi) {
    SpectralField u = derivative(psi, Axis::y);
    for (std::size_t i = 0; i < u.size(); ++i) u.data()[i] = -u.data()[i];
    return {std::move(u), derivative(psi, Axis::x)};
}

SpectralField riesz(const SpectralField& w, Axis axis) {
    return apply_imaginary_symbol(w, axis, axis == Axis::x ? riesz_symbol_x : riesz_symbol_y);
}

void dealias(SpectralField& w) {
    const Grid grid = w.grid();
    const int n = grid.n;
    const int cut = grid.dealias_cutoff();
    for (int i = 0; i < n; ++i) {
        const int kx = grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int ky = grid.wavenumber(j);
            if (std::abs(kx) > cut || std::abs(ky) > cut) w.bin(i, j) = {0.0, 0.0};
        }
    }
}

SpectralField dealiased(const SpectralField& w) {
    SpectralField out = w;
    dealias(out);
    return out;
}

SpectralField multiply_dealiased(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("multiply_dealiased: grid mismatch");
    PhysicalField pa = to_physical(dealiased(a));
    PhysicalField pb = to_physical(dealiased(b));
    for (std::size_t i = 0; i < pa.size(); ++i) pa.data()[i] *= pb.data()[i];
    SpectralField out = to_spectral(pa);
    dealias(out);
    return out;
}

SpectralField jacobian(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("jacobian: grid mismatch");
    const SpectralField da = dealiased(a);
    const SpectralField db = dealiased(b);
    PhysicalField ax = to_physical(derivative(da, Axis::x));
    PhysicalField ay = to_physical(derivative(da, Axis::y));
    PhysicalField bx = to_physical(derivative(db, Axis::x));
    PhysicalField by = to_physical(derivative(db, Axis::y));
    PhysicalField prod(a.grid());
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod.data()[i] = ax.data()[i] * by.data()[i] - bx.data()[i] * ay.data()[i];
    SpectralField out = to_spectral(prod);
    dealias(out);
    return out;
}

SpectralField resample(const SpectralField& w, Grid target) {
    const Grid src = w.grid();
    SpectralField out(target);
    const int kmax = std::min(src.n, target.n) / 2 - 1;
    for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky) {
            if (kx == 0 && ky == 0) continue;
            out.mode(kx, ky) = w.mode(kx, ky);
        }
    return out;
}

}  // namespace torusmix
