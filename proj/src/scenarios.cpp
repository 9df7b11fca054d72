#include "torusmix/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "torusmix/bounds.hpp"
#include "torusmix/util.hpp"

namespace torusmix {

namespace {

constexpr std::uint64_t omega_stream = 0x6f6d656761ULL;  // substream tags
constexpr std::uint64_t theta_stream = 0x7468657461ULL;

void require_mode(const Grid& grid, int m, const char* family) {
    if (m < 1 || m > grid.n / 4)
        throw std::invalid_argument(std::string(family) + ": mode must lie in [1, n/4]");
}

SpectralField build_shear(const Grid& grid, const FieldSpec& spec) {
    require_mode(grid, spec.mode, "shear");
    SpectralField w(grid);
    w.mode(0, spec.mode) = spec.amplitude * 0.5;
    w.mode(0, -spec.mode) = spec.amplitude * 0.5;
    return w;
}

SpectralField taylor_green_psi(const Grid& grid, const FieldSpec& spec) {
    require_mode(grid, spec.mode, "taylor_green");
    const int m = spec.mode;
    const double q = spec.amplitude * 0.25;
    SpectralField psi(grid);
    psi.mode(m, m) = -q;
    psi.mode(m, -m) = q;
    psi.mode(-m, m) = q;
    psi.mode(-m, -m) = -q;
    return psi;
}

SpectralField build_random_band(const Grid& grid, const FieldSpec& spec, std::uint64_t seed) {
    if (spec.k_max > grid.n / 4)
        throw std::invalid_argument("random_band: k_max exceeds the n/4 band limit");
    if (spec.k_min < 1 || spec.k_max < spec.k_min)
        throw std::invalid_argument("random_band: bad band");
    return random_band_field(grid, spec.k_min, spec.k_max, spec.enstrophy, seed);
}

SpectralField build_single_mode(const Grid& grid, const FieldSpec& spec) {
    const int mx = spec.mode_x;
    const int my = spec.mode_y;
    if (mx == 0 && my == 0) throw std::invalid_argument("single_mode: zero wavevector");
    if (std::abs(mx) > grid.n / 4 || std::abs(my) > grid.n / 4)
        throw std::invalid_argument("single_mode: mode exceeds the n/4 band limit");
    SpectralField w(grid);
    w.mode(mx, my) = spec.amplitude * 0.5;
    w.mode(-mx, -my) = spec.amplitude * 0.5;
    return w;
}

SpectralField build_checkerboard(const Grid& grid, const FieldSpec& spec) {
    require_mode(grid, spec.mode, "checkerboard");
    const int m = spec.mode;
    const double q = spec.amplitude * 0.25;
    SpectralField w(grid);
    w.mode(m, m) = q;
    w.mode(m, -m) = q;
    w.mode(-m, m) = q;
    w.mode(-m, -m) = q;
    return w;
}

SpectralField build_gaussian_blob(const Grid& grid, const FieldSpec& spec, BuildNotes* notes) {
    if (!(spec.width > 0.0)) throw std::invalid_argument("gaussian_blob: width must be positive");
    constexpr double pi = std::numbers::pi;
    const int cut = grid.n / 4;
    const double decay = 2.0 * pi * pi * spec.width * spec.width;
    SpectralField w(grid);
    double kept_sq = 0.0;
    double dropped_sq = 0.0;
    // Coefficients of the periodized Gaussian decay like exp(-2 pi^2 s^2 |k|^2);
    // sum a window comfortably past the band limit to measure what truncation
    // discards.
    const int window = std::max(4 * cut, 64);
    for (int kx = -window; kx <= window; ++kx)
        for (int ky = -window; ky <= window; ++ky) {
            if (kx == 0 && ky == 0) continue;  // mean removed
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            const double mag = spec.amplitude * std::exp(-decay * k2);
            if (std::max(std::abs(kx), std::abs(ky)) <= cut) {
                const double arg = -2.0 * pi * (kx * spec.x0 + ky * spec.y0);
                w.mode(kx, ky) = mag * std::complex<double>(std::cos(arg), std::sin(arg));
                kept_sq += mag * mag;
            } else {
                dropped_sq += mag * mag;
            }
        }
    if (notes) {
        const double total = kept_sq + dropped_sq;
        (*notes)["theta0_truncation_error"] =
            total > 0.0 ? std::sqrt(dropped_sq / total) : 0.0;
    }
    return w;
}

SpectralField build_omega(const Grid& grid, const FieldSpec& spec, std::uint64_t seed,
                          BuildNotes* notes) {
    if (spec.family == "rest") return SpectralField(grid);
    if (spec.family == "shear") return build_shear(grid, spec);
    if (spec.family == "taylor_green") return laplacian(taylor_green_psi(grid, spec));
    if (spec.family == "taylor_green_perturbed") {
        SpectralField w = laplacian(taylor_green_psi(grid, spec));
        if (spec.perturbation > 0.0) {
            const double base_l2 = sobolev_norm(w, 0.0);
            const double delta_l2 = spec.perturbation * base_l2;
            FieldSpec band = spec;
            band.enstrophy = 0.5 * delta_l2 * delta_l2;
            axpy(w, 1.0, build_random_band(grid, band, seed));
            if (notes) (*notes)["omega0_perturbation_l2"] = delta_l2;
        }
        return w;
    }
    if (spec.family == "random_band") return build_random_band(grid, spec, seed);
    throw std::invalid_argument("unknown vorticity family: " + spec.family);
}

SpectralField build_theta(const Grid& grid, const FieldSpec& spec, std::uint64_t seed,
                          BuildNotes* notes) {
    if (spec.family == "single_mode") return build_single_mode(grid, spec);
    if (spec.family == "checkerboard") return build_checkerboard(grid, spec);
    if (spec.family == "random_band") return build_random_band(grid, spec, seed);
    if (spec.family == "gaussian_blob") return build_gaussian_blob(grid, spec, notes);
    throw std::invalid_argument("unknown scalar family: " + spec.family);
}

}  // namespace

FlowState build(const ScenarioSpec& spec, BuildNotes* notes) {
    const Grid grid = Grid::make(spec.n);
    FlowState state;
    state.omega = build_omega(grid, spec.omega0, mix_seed(spec.seed, omega_stream), notes);
    state.theta = build_theta(grid, spec.theta0, mix_seed(spec.seed, theta_stream), notes);
    state.t = 0.0;
    state.validate();
    if (notes) (*notes)["omega0_linf"] = to_physical(state.omega).max_abs();
    return state;
}

}  // namespace torusmix
