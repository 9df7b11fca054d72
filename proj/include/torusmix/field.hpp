#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

#include "torusmix/grid.hpp"

namespace torusmix {

// 64-byte aligned storage so FFTW's SIMD kernels see one consistent
// alignment class for every buffer they are handed.
template <class T>
struct AlignedAllocator {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAllocator() = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) {}

    T* allocate(std::size_t count) {
        return static_cast<T*>(::operator new(count * sizeof(T), std::align_val_t(alignment)));
    }
    void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, std::align_val_t(alignment)); }

    template <class U>
    bool operator==(const AlignedAllocator<U>&) const { return true; }
};

using complex_vector = std::vector<std::complex<double>, AlignedAllocator<std::complex<double>>>;
using real_vector = std::vector<double, AlignedAllocator<double>>;

// Real scalar field sampled at the collocation points; values[i*n + j]
// holds w(i*h, j*h).
class PhysicalField {
  public:
    PhysicalField() = default;
    explicit PhysicalField(Grid grid) : grid_(grid), values_(static_cast<std::size_t>(grid.size()), 0.0) {}

    const Grid& grid() const { return grid_; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::size_t size() const { return values_.size(); }

    double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.n + j]; }
    double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.n + j]; }

    double mean() const {
        double s = 0.0;
        for (double v : values_) s += v;
        return s / static_cast<double>(values_.size());
    }
    double max_abs() const;

  private:
    Grid grid_;
    real_vector values_;
};

// Complex Fourier coefficients w_hat_k of a real zero-mean field,
// w(x) = sum_k w_hat_k exp(2*pi*i k.x), stored on the full n x n bin
// lattice (coeffs[i*n + j] is the (kx, ky) = (wavenumber(i), wavenumber(j))
// coefficient). Fields built through to_spectral are exactly Hermitian and
// have a zero mean mode; operators preserve both.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(Grid grid) : grid_(grid), coeffs_(static_cast<std::size_t>(grid.size()), {0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    std::complex<double>* data() { return coeffs_.data(); }
    const std::complex<double>* data() const { return coeffs_.data(); }
    std::size_t size() const { return coeffs_.size(); }

    std::complex<double>& bin(int i, int j) { return coeffs_[static_cast<std::size_t>(i) * grid_.n + j]; }
    const std::complex<double>& bin(int i, int j) const {
        return coeffs_[static_cast<std::size_t>(i) * grid_.n + j];
    }

    // Access by signed wavenumber.
    std::complex<double>& mode(int kx, int ky) { return bin(grid_.bin(kx), grid_.bin(ky)); }
    const std::complex<double>& mode(int kx, int ky) const { return bin(grid_.bin(kx), grid_.bin(ky)); }

    void zero_mean_mode() { coeffs_[0] = {0.0, 0.0}; }

    // Largest |w_hat_{-k} - conj(w_hat_k)| over the lattice.
    double hermitian_defect() const;
    // Largest |w_hat_k| outside max(|kx|,|ky|) <= limit.
    double energy_above(int limit) const;

    bool operator==(const SpectralField& o) const { return grid_ == o.grid_ && coeffs_ == o.coeffs_; }

  private:
    Grid grid_;
    complex_vector coeffs_;
};

// y += a*x, used by the time integrator.
void axpy(SpectralField& y, double a, const SpectralField& x);
SpectralField scaled(const SpectralField& x, double a);

}  // namespace torusmix
