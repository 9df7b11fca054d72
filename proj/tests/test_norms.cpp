#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "torusmix/norms.hpp"
#include "torusmix/operators.hpp"
#include "test_support.hpp"

using namespace torusmix;
using namespace torusmix::testing;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
const Grid g64 = Grid::make(64);
}  // namespace

TEST_CASE("lp norms of a cosine") {
    PhysicalField f = sample_function(g64, [](double x, double) { return std::cos(2 * pi * x); });
    CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(lp_norm(f, inf) == 1.0);  // grid contains x = 0
    CHECK_THROWS_AS(lp_norm(f, 0.5), std::invalid_argument);
}

TEST_CASE("l1 norm agrees with a refined-grid quadrature oracle") {
    // Same band-limited function evaluated by spectral interpolation on a
    // grid 4x finer; the two Riemann sums of |f| must agree closely.
    const Grid coarse = Grid::make(256);
    SpectralField w = random_band_field(coarse, 1, 16, 1.0, 101);
    const double coarse_l1 = lp_norm(to_physical(w), 1.0);
    const double fine_l1 = lp_norm(to_physical(resample(w, Grid::make(1024))), 1.0);
    CHECK(rel_diff(coarse_l1, fine_l1) <= 1e-3);
}

TEST_CASE("sobolev norm of single-shell fields") {
    PhysicalField f =
        sample_function(g64, [](double x, double) { return 2.0 * std::cos(2 * pi * x); });
    SpectralField w = to_spectral(f);
    for (double s : {-1.0, -0.5, 0.0, 0.7, 1.0, 2.0})
        CHECK(sobolev_norm(w, s) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    PhysicalField f2 =
        sample_function(g64, [](double x, double) { return 2.0 * std::cos(4 * pi * x); });
    CHECK(sobolev_norm(to_spectral(f2), -1.0) ==
          doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("s = 0 is Parseval") {
    PhysicalField f = random_physical(g64, 7);
    CHECK(rel_diff(sobolev_norm(to_spectral(f), 0.0), lp_norm(f, 2.0)) <= 1e-12);
}

TEST_CASE("sobolev norms are monotone in s on zero-mean fields") {
    SpectralField w = random_band_field(g64, 1, 14, 1.0, 9);
    double prev = 0.0;
    for (double s : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0}) {
        const double v = sobolev_norm(w, s);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("mix norm is the negative-order sobolev norm") {
    SpectralField w = random_band_field(g64, 1, 10, 1.0, 13);
    CHECK(mix_norm(w, -1.0) == sobolev_norm(w, -1.0));
    CHECK(mix_norm(w, -0.5) == sobolev_norm(w, -0.5));
    CHECK_THROWS_AS(mix_norm(w, -0.7), std::invalid_argument);
}

TEST_CASE("mix norm equals the streamfunction-gradient norm up to 2 pi") {
    // |theta|_{H^-1} = 2 pi |grad Delta^-1 theta|_{L^2} in the integer
    // wavenumber convention; the 2 pi is the derivative symbol scale.
    SpectralField theta = random_band_field(g64, 1, 12, 1.0, 19);
    SpectralField phi = invert_laplacian(theta);
    PhysicalField gx = to_physical(derivative(phi, Axis::x));
    PhysicalField gy = to_physical(derivative(phi, Axis::y));
    double grad_sq = 0.0;
    const double h2 = g64.h * g64.h;
    for (std::size_t i = 0; i < gx.size(); ++i)
        grad_sq += (gx.data()[i] * gx.data()[i] + gy.data()[i] * gy.data()[i]) * h2;
    CHECK(rel_diff(mix_norm(theta, -1.0), 2.0 * pi * std::sqrt(grad_sq)) <= 1e-12);
}

TEST_CASE("checkerboard mix norm") {
    PhysicalField f = sample_function(g64, [](double x, double y) {
        return 4.0 * std::cos(2 * pi * x) * std::cos(2 * pi * y);
    });
    const double hm1 = mix_norm(to_spectral(f), -1.0);
    CHECK(hm1 * hm1 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("bmo config validation") {
    BmoConfig cfg = BmoConfig::defaults(g64);
    CHECK(cfg.radii.front() == 2.0 * g64.h);
    CHECK(cfg.radii.back() == 0.5);
    CHECK_NOTHROW(cfg.validate(g64));

    BmoConfig empty;
    empty.radii.clear();
    CHECK_THROWS_AS(bmo_seminorm(random_physical(g64, 1), empty), std::invalid_argument);

    BmoConfig bad = cfg;
    bad.center_stride = 3;  // does not divide 64
    CHECK_THROWS_AS(bad.validate(g64), std::invalid_argument);
    bad = cfg;
    bad.radii.push_back(0.75);
    CHECK_THROWS_AS(bad.validate(g64), std::invalid_argument);
}

TEST_CASE("bmo of a constant is zero") {
    PhysicalField f = sample_function(g64, [](double, double) { return 3.7; });
    // Ball means of a constant round at the last ulp; nothing more survives.
    CHECK(bmo_seminorm(f, BmoConfig::defaults(g64)) <= 1e-13);
}

TEST_CASE("bmo is dominated by the sup norm") {
    const BmoConfig cfg = BmoConfig::defaults(g64);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        PhysicalField f = random_physical(g64, 1000 + seed);
        CHECK(bmo_seminorm(f, cfg) <= lp_norm(f, inf));
    }
}

TEST_CASE("bmo sweep matches the exhaustive oracle") {
    // Exhaustive sweep (every center, every lattice radius) on a 64 grid
    // against the production sweep on a 256 grid for the same function.
    const Grid fine = Grid::make(256);
    auto cosx = [](double x, double) { return std::cos(2 * pi * x); };
    const double oracle = bmo_brute_force(sample_function(g64, cosx), all_radii(g64), 1);
    const double swept = bmo_seminorm(sample_function(fine, cosx), BmoConfig::defaults(fine));
    CHECK(rel_diff(swept, oracle) <= 0.05);
}

TEST_CASE("bmo production sweep equals the oracle on identical sampling sets") {
    PhysicalField f = random_physical(Grid::make(32), 23);
    BmoConfig cfg;
    cfg.radii = {3.0 / 32.0, 8.0 / 32.0, 0.4};
    cfg.center_stride = 2;
    const double got = bmo_seminorm(f, cfg);
    const double oracle = bmo_brute_force(f, cfg.radii, cfg.center_stride);
    CHECK(rel_diff(got, oracle) <= 1e-12);
}

TEST_CASE("bmo is invariant under constant shifts and lattice translations") {
    const BmoConfig cfg = BmoConfig::defaults(g64);
    PhysicalField f = random_physical(g64, 31);
    const double base = bmo_seminorm(f, cfg);

    PhysicalField shifted = f;
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted.data()[i] += 2.5;
    CHECK(bmo_seminorm(shifted, cfg) == doctest::Approx(base).epsilon(1e-12));

    // Translate by a multiple of the center stride: the sampled ball set maps
    // onto itself, so the sweep value is identical.
    PhysicalField translated(g64);
    const int shift = 2 * cfg.center_stride;
    for (int i = 0; i < g64.n; ++i)
        for (int j = 0; j < g64.n; ++j)
            translated.at(i, j) = f.at((i + shift) % g64.n, (j + shift) % g64.n);
    CHECK(bmo_seminorm(translated, cfg) == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("bmo grows with richer center and radius sampling") {
    PhysicalField f = random_physical(g64, 37);
    BmoConfig sparse;
    sparse.radii = {4.0 * g64.h, 16.0 * g64.h};
    sparse.center_stride = 8;
    BmoConfig denser = sparse;
    denser.center_stride = 2;
    BmoConfig more_radii = sparse;
    more_radii.radii = {2.0 * g64.h, 4.0 * g64.h, 8.0 * g64.h, 16.0 * g64.h, 0.5};
    CHECK(bmo_seminorm(f, denser) >= bmo_seminorm(f, sparse));
    CHECK(bmo_seminorm(f, more_radii) >= bmo_seminorm(f, sparse));
}

TEST_CASE("inner product matches Parseval on a product of cosines") {
    PhysicalField a = sample_function(g64, [](double x, double) { return std::cos(2 * pi * x); });
    CHECK(inner_product(a, a) == doctest::Approx(0.5).epsilon(1e-13));
}
