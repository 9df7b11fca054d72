#include "torusmix/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace torusmix {

namespace {

// One pair of FFTW plans per grid size, planned once on scratch buffers and
// executed on caller arrays (same layout, same alignment class: every buffer
// in the project is 64-byte aligned). Plan creation is serialized; execution
// on distinct arrays is safe concurrently.
struct PlanSet {
    fftw_plan forward = nullptr;  // real n*n -> complex n*(n/2+1)
    fftw_plan inverse = nullptr;  // complex n*(n/2+1) -> real n*n
};

PlanSet& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, PlanSet> cache;

    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const std::size_t real_count = static_cast<std::size_t>(n) * n;
    const std::size_t half_count = static_cast<std::size_t>(n) * (n / 2 + 1);
    double* real_scratch = fftw_alloc_real(real_count);
    fftw_complex* half_scratch = fftw_alloc_complex(half_count);

    PlanSet set;
    // FFTW_ESTIMATE keeps plan choice deterministic (no timing runs), which
    // keeps whole-run outputs byte-reproducible.
    set.forward = fftw_plan_dft_r2c_2d(n, n, real_scratch, half_scratch, FFTW_ESTIMATE);
    set.inverse = fftw_plan_dft_c2r_2d(n, n, half_scratch, real_scratch, FFTW_ESTIMATE);

    fftw_free(real_scratch);
    fftw_free(half_scratch);
    return cache.emplace(n, set).first->second;
}

}  // namespace

SpectralField to_spectral(const PhysicalField& f) {
    const Grid grid = f.grid();
    const int n = grid.n;
    const int half = n / 2;
    PlanSet& plans = plans_for(n);

    complex_vector half_spec(static_cast<std::size_t>(n) * (half + 1));
    // r2c destroys nothing on the real side, but wants a non-const pointer.
    fftw_execute_dft_r2c(plans.forward, const_cast<double*>(f.data()),
                         reinterpret_cast<fftw_complex*>(half_spec.data()));

    SpectralField out(grid);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (int i = 0; i < n; ++i) {
        const auto* row = half_spec.data() + static_cast<std::size_t>(i) * (half + 1);
        for (int b = 0; b <= half; ++b) out.bin(i, b) = row[b] * scale;
    }
    // Mirror the ky > 0 half onto ky < 0; exact conjugates by construction.
    for (int i = 0; i < n; ++i) {
        const int mi = (n - i) % n;
        for (int j = half + 1; j < n; ++j) out.bin(i, j) = std::conj(out.bin(mi, n - j));
    }
    // The ky = 0 and ky = n/2 columns pair with themselves under kx -> -kx;
    // r2c computes both halves independently, so symmetrize them exactly.
    for (int b : {0, half}) {
        for (int i = 1; i < half; ++i) {
            const int mi = n - i;
            const std::complex<double> avg = 0.5 * (out.bin(i, b) + std::conj(out.bin(mi, b)));
            out.bin(i, b) = avg;
            out.bin(mi, b) = std::conj(avg);
        }
        out.bin(0, b).imag(0.0);
        out.bin(half, b).imag(0.0);
    }
    out.zero_mean_mode();
    return out;
}

PhysicalField to_physical(const SpectralField& w) {
    const Grid grid = w.grid();
    const int n = grid.n;
    const int half = n / 2;
    PlanSet& plans = plans_for(n);

    complex_vector half_spec(static_cast<std::size_t>(n) * (half + 1));
    for (int i = 0; i < n; ++i) {
        auto* row = half_spec.data() + static_cast<std::size_t>(i) * (half + 1);
        for (int b = 0; b <= half; ++b) row[b] = w.bin(i, b);
    }

    PhysicalField out(grid);
    // c2r clobbers its complex input; half_spec is a local copy, so let it.
    fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(half_spec.data()),
                         out.data());
    return out;
}

}  // namespace torusmix
