#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "torusmix/fft.hpp"
#include "torusmix/operators.hpp"
#include "test_support.hpp"

using namespace torusmix;
using namespace torusmix::testing;

namespace {
constexpr double pi = std::numbers::pi;
const Grid g64 = Grid::make(64);
}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid::make(8), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(48), std::invalid_argument);
    CHECK(Grid::make(16).h == 1.0 / 16);
    CHECK(g64.wavenumber(0) == 0);
    CHECK(g64.wavenumber(31) == 31);
    CHECK(g64.wavenumber(32) == -32);
    CHECK(g64.wavenumber(63) == -1);
    CHECK(g64.bin(-1) == 63);
}

TEST_CASE("constant field transforms to zero (mean convention)") {
    PhysicalField ones = sample_function(g64, [](double, double) { return 1.0; });
    SpectralField w = to_spectral(ones);
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) worst = std::max(worst, std::abs(w.data()[i]));
    CHECK(worst <= 1e-15);
}

TEST_CASE("cosine picks out the k = (1,0) pair") {
    PhysicalField f = sample_function(g64, [](double x, double) { return std::cos(2 * pi * x); });
    SpectralField w = to_spectral(f);
    CHECK(std::abs(w.mode(1, 0) - 0.5) <= 1e-14);
    CHECK(std::abs(w.mode(-1, 0) - 0.5) <= 1e-14);
    w.mode(1, 0) = 0.0;
    w.mode(-1, 0) = 0.0;
    double rest = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) rest = std::max(rest, std::abs(w.data()[i]));
    CHECK(rest <= 1e-14);
}

TEST_CASE("round trip is the identity on zero-mean fields") {
    PhysicalField f = random_physical(g64, 17);
    PhysicalField back = to_physical(to_spectral(f));
    CHECK(max_value_diff(f, back) <= 1e-12 * f.max_abs());
}

TEST_CASE("to_spectral output is exactly Hermitian and zero-mean") {
    SpectralField w = to_spectral(random_physical(g64, 3));
    CHECK(w.hermitian_defect() == 0.0);
    CHECK(std::abs(w.data()[0]) == 0.0);
}

TEST_CASE("derivative of a cosine") {
    PhysicalField f = sample_function(g64, [](double x, double) { return std::cos(2 * pi * x); });
    PhysicalField expected =
        sample_function(g64, [](double x, double) { return -2 * pi * std::sin(2 * pi * x); });
    PhysicalField got = to_physical(derivative(to_spectral(f), Axis::x));
    CHECK(max_value_diff(got, expected) <= 1e-12 * expected.max_abs());
}

TEST_CASE("y-derivative of an x-only field vanishes") {
    PhysicalField f = sample_function(g64, [](double x, double) { return std::sin(4 * pi * x); });
    SpectralField dy = derivative(to_spectral(f), Axis::y);
    double worst = 0.0;
    for (std::size_t i = 0; i < dy.size(); ++i) worst = std::max(worst, std::abs(dy.data()[i]));
    CHECK(worst == 0.0);
}

TEST_CASE("mixed partial derivatives commute") {
    SpectralField w = random_band_field(g64, 1, 12, 1.0, 5);
    SpectralField xy = derivative(derivative(w, Axis::x), Axis::y);
    SpectralField yx = derivative(derivative(w, Axis::y), Axis::x);
    CHECK(max_coeff_diff(xy, yx) <= 1e-15 * sobolev_norm(xy, 0.0));
}

TEST_CASE("derivative preserves Hermitian symmetry and zero mean exactly") {
    SpectralField w = to_spectral(random_physical(g64, 11));
    for (Axis a : {Axis::x, Axis::y}) {
        SpectralField d = derivative(w, a);
        CHECK(d.hermitian_defect() == 0.0);
        CHECK(std::abs(d.data()[0]) == 0.0);
    }
}

TEST_CASE("inverse Laplacian of a Laplacian eigenfunction") {
    PhysicalField f = sample_function(g64, [](double x, double) { return std::cos(2 * pi * x); });
    PhysicalField expected = sample_function(
        g64, [](double x, double) { return -std::cos(2 * pi * x) / (4 * pi * pi); });
    PhysicalField got = to_physical(invert_laplacian(to_spectral(f)));
    CHECK(max_value_diff(got, expected) <= 1e-13);
}

TEST_CASE("inverse Laplacian inverts the Laplacian") {
    SpectralField w = to_spectral(random_physical(g64, 23));
    SpectralField back = invert_laplacian(laplacian(w));
    CHECK(max_coeff_diff(back, w) <= 1e-12 * sobolev_norm(w, 0.0));
    SpectralField fwd = laplacian(invert_laplacian(w));
    CHECK(max_coeff_diff(fwd, w) <= 1e-12 * sobolev_norm(w, 0.0));
}

TEST_CASE("inverse Laplacian rejects a nonzero mean mode") {
    SpectralField w(g64);
    w.mode(0, 0) = 1e-10;
    CHECK_THROWS_AS(invert_laplacian(w), std::invalid_argument);
    SpectralField ok(g64);
    ok.mode(0, 0) = 1e-15;  // below the caller-bug threshold
    CHECK_NOTHROW(invert_laplacian(ok));
}

TEST_CASE("gradient-inverse composition reproduces the identity") {
    SpectralField w = random_band_field(g64, 1, 14, 1.0, 29);
    SpectralField rebuilt = derivative(invert_laplacian(derivative(w, Axis::x)), Axis::x);
    axpy(rebuilt, 1.0, derivative(invert_laplacian(derivative(w, Axis::y)), Axis::y));
    CHECK(max_coeff_diff(rebuilt, w) <= 1e-12 * sobolev_norm(w, 0.0));
}

TEST_CASE("perp gradient of a shear streamfunction") {
    PhysicalField psi = sample_function(g64, [](double, double y) { return std::sin(2 * pi * y); });
    auto [u, v] = perp_gradient(to_spectral(psi));
    PhysicalField u_expected =
        sample_function(g64, [](double, double y) { return -2 * pi * std::cos(2 * pi * y); });
    CHECK(max_value_diff(to_physical(u), u_expected) <= 1e-12 * u_expected.max_abs());
    CHECK(to_physical(v).max_abs() <= 1e-15);
}

TEST_CASE("perp gradient is divergence-free") {
    SpectralField psi = to_spectral(random_physical(g64, 31));
    auto [u, v] = perp_gradient(psi);
    SpectralField div = derivative(u, Axis::x);
    axpy(div, 1.0, derivative(v, Axis::y));
    CHECK(sobolev_norm(div, 0.0) <= 1e-12 * grad_l2_norm(psi));
}

TEST_CASE("curl of the perp gradient recovers the Laplacian") {
    SpectralField psi = random_band_field(g64, 1, 12, 1.0, 37);
    auto [u, v] = perp_gradient(psi);
    SpectralField curl = derivative(v, Axis::x);
    axpy(curl, -1.0, derivative(u, Axis::y));
    SpectralField lap = laplacian(psi);
    CHECK(max_coeff_diff(curl, lap) <= 1e-12 * sobolev_norm(lap, 0.0));
}

TEST_CASE("jacobian of a field with itself vanishes") {
    SpectralField w = random_band_field(g64, 1, 10, 1.0, 41);
    SpectralField j = jacobian(w, w);
    CHECK(sobolev_norm(j, 0.0) <= 1e-12 * grad_l2_norm(w) * grad_l2_norm(w));
}

TEST_CASE("jacobian of the separable sine pair") {
    PhysicalField a = sample_function(g64, [](double x, double) { return std::sin(2 * pi * x); });
    PhysicalField b = sample_function(g64, [](double, double y) { return std::sin(2 * pi * y); });
    SpectralField j = jacobian(to_spectral(a), to_spectral(b));
    PhysicalField expected = sample_function(g64, [](double x, double y) {
        return 4 * pi * pi * std::cos(2 * pi * x) * std::cos(2 * pi * y);
    });
    CHECK(max_value_diff(to_physical(j), expected) <= 1e-11 * expected.max_abs());
}

TEST_CASE("jacobian antisymmetry and zero mean") {
    SpectralField a = random_band_field(g64, 1, 10, 1.0, 43);
    SpectralField b = random_band_field(g64, 2, 12, 2.0, 47);
    SpectralField jab = jacobian(a, b);
    SpectralField jba = jacobian(b, a);
    axpy(jba, 1.0, jab);
    CHECK(sobolev_norm(jba, 0.0) <= 1e-12 * sobolev_norm(jab, 0.0));
    CHECK(std::abs(jab.data()[0]) <= 1e-13);
    CHECK(jab.hermitian_defect() == 0.0);
}

TEST_CASE("jacobian output carries no energy above the dealias cutoff") {
    SpectralField a = to_spectral(random_physical(g64, 51));
    SpectralField b = to_spectral(random_physical(g64, 53));
    SpectralField j = jacobian(a, b);
    CHECK(j.energy_above(g64.dealias_cutoff()) == 0.0);
    CHECK_THROWS_AS(jacobian(a, to_spectral(random_physical(Grid::make(32), 1))),
                    std::invalid_argument);
}

TEST_CASE("riesz transform of a single mode") {
    PhysicalField f = sample_function(g64, [](double x, double) { return std::cos(2 * pi * x); });
    PhysicalField expected =
        sample_function(g64, [](double x, double) { return -std::sin(2 * pi * x); });
    PhysicalField got = to_physical(riesz(to_spectral(f), Axis::x));
    CHECK(max_value_diff(got, expected) <= 1e-13);
}

TEST_CASE("riesz transforms square to minus the identity") {
    SpectralField w = random_band_field(g64, 1, 14, 1.0, 59);
    SpectralField r2 = riesz(riesz(w, Axis::x), Axis::x);
    axpy(r2, 1.0, riesz(riesz(w, Axis::y), Axis::y));
    axpy(r2, 1.0, w);  // should now vanish
    CHECK(sobolev_norm(r2, 0.0) <= 1e-12 * sobolev_norm(w, 0.0));
}

TEST_CASE("riesz composition matches the direct velocity-gradient path") {
    SpectralField w = random_band_field(g64, 1, 12, 1.5, 61);
    const auto [u, v] = perp_gradient(invert_laplacian(w));
    const SpectralField direct[4] = {derivative(u, Axis::x), derivative(u, Axis::y),
                                     derivative(v, Axis::x), derivative(v, Axis::y)};
    const SpectralField rx = riesz(w, Axis::x);
    const SpectralField ry = riesz(w, Axis::y);
    const SpectralField composed[4] = {riesz(ry, Axis::x), riesz(ry, Axis::y),
                                       scaled(riesz(rx, Axis::x), -1.0),
                                       scaled(riesz(rx, Axis::y), -1.0)};
    const double scale = sobolev_norm(w, 0.0);
    for (int c = 0; c < 4; ++c) CHECK(max_coeff_diff(direct[c], composed[c]) <= 1e-12 * scale);
}

TEST_CASE("spectral resampling embeds and truncates") {
    SpectralField w = random_band_field(g64, 1, 8, 1.0, 67);
    SpectralField fine = resample(w, Grid::make(128));
    CHECK(sobolev_norm(fine, 0.0) == doctest::Approx(sobolev_norm(w, 0.0)).epsilon(1e-14));
    SpectralField back = resample(fine, g64);
    CHECK(max_coeff_diff(back, w) == 0.0);
}
