#include "torusmix/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "torusmix/util.hpp"

namespace torusmix {

double lp_norm(const PhysicalField& f, double p) {
    if (std::isinf(p)) return f.max_abs();
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    const double* v = f.data();
    const std::size_t m = f.size();
    double sum = 0.0;
    if (p == 1.0) {
        for (std::size_t i = 0; i < m; ++i) sum += std::abs(v[i]);
    } else if (p == 2.0) {
        for (std::size_t i = 0; i < m; ++i) sum += v[i] * v[i];
    } else {
        for (std::size_t i = 0; i < m; ++i) sum += std::pow(std::abs(v[i]), p);
    }
    const double h2 = f.grid().h * f.grid().h;
    return std::pow(h2 * sum, 1.0 / p);
}

double sobolev_norm(const SpectralField& w, double s) {
    const Grid grid = w.grid();
    const int n = grid.n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double kx = grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            if (i == 0 && j == 0) continue;
            const double ky = grid.wavenumber(j);
            const double k2 = kx * kx + ky * ky;
            const double a2 = std::norm(w.bin(i, j));
            if (a2 == 0.0) continue;
            double weight;
            if (s == 0.0)
                weight = 1.0;
            else if (s == -1.0)
                weight = 1.0 / k2;
            else if (s == 1.0)
                weight = k2;
            else if (s == -0.5)
                weight = 1.0 / std::sqrt(k2);
            else
                weight = std::pow(k2, s);
            sum += weight * a2;
        }
    }
    return std::sqrt(sum);
}

double mix_norm(const SpectralField& theta, double s) {
    if (s != -1.0 && s != -0.5)
        throw std::invalid_argument("mix_norm: s must be -1 or -1/2");
    return sobolev_norm(theta, s);
}

double grad_l2_norm(const SpectralField& w) {
    return 2.0 * std::numbers::pi * sobolev_norm(w, 1.0);
}

double inner_product(const PhysicalField& a, const PhysicalField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("inner_product: grid mismatch");
    double sum = 0.0;
    const double* ad = a.data();
    const double* bd = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) sum += ad[i] * bd[i];
    return sum * a.grid().h * a.grid().h;
}

BmoConfig BmoConfig::defaults(const Grid& grid) {
    BmoConfig cfg;
    for (double r = 2.0 * grid.h; r <= 0.5; r *= 2.0) cfg.radii.push_back(r);
    cfg.center_stride = 4;
    return cfg;
}

void BmoConfig::validate(const Grid& grid) const {
    if (radii.empty()) throw std::invalid_argument("BmoConfig: radii list is empty");
    double prev = 0.0;
    for (double r : radii) {
        if (r < 2.0 * grid.h - 1e-12 || r > 0.5 + 1e-12)
            throw std::invalid_argument("BmoConfig: radii must lie in [2h, 1/2]");
        if (r <= prev) throw std::invalid_argument("BmoConfig: radii must be strictly ascending");
        prev = r;
    }
    if (center_stride < 1 || grid.n % center_stride != 0)
        throw std::invalid_argument("BmoConfig: center_stride must be >= 1 and divide n");
}

namespace {

// Ball footprint on the periodic lattice: the set of row offsets di with the
// half-width of the in-ball column span at that row. Rows/columns are
// clamped so a diameter-n ball covers each point exactly once.
struct BallShape {
    std::vector<int> row_offset;
    std::vector<int> half_width;
    double point_count = 0.0;
};

BallShape ball_shape(const Grid& grid, double radius) {
    const int n = grid.n;
    const double rg = radius * grid.n;  // radius in grid units
    const int reach = static_cast<int>(std::floor(rg + 1e-9));
    BallShape shape;
    // Offsets are minimal-image residues; when the ball spans the whole
    // torus in one direction (reach == n/2) the -n/2 row duplicates +n/2.
    const int lo = (2 * reach + 1 > n) ? reach - n + 1 : -reach;
    for (int di = lo; di <= reach; ++di) {
        const double rem = rg * rg - static_cast<double>(di) * di;
        if (rem < 0.0) continue;
        int hw = static_cast<int>(std::floor(std::sqrt(rem) + 1e-9));
        shape.row_offset.push_back(di);
        shape.half_width.push_back(hw);
        shape.point_count += std::min(2 * hw + 1, n);
    }
    return shape;
}

// Sums f over one wrapped row span [c-hw, c+hw] (length clamped to n).
inline double span_sum(const double* row, int n, int center, int hw) {
    if (2 * hw + 1 >= n) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += row[j];
        return s;
    }
    int lo = center - hw;
    int hi = center + hw;
    double s = 0.0;
    if (lo < 0) {
        for (int j = lo + n; j < n; ++j) s += row[j];
        lo = 0;
    }
    if (hi >= n) {
        for (int j = 0; j <= hi - n; ++j) s += row[j];
        hi = n - 1;
    }
    for (int j = lo; j <= hi; ++j) s += row[j];
    return s;
}

inline double span_abs_dev(const double* row, int n, int center, int hw, double mean) {
    if (2 * hw + 1 >= n) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += std::abs(row[j] - mean);
        return s;
    }
    int lo = center - hw;
    int hi = center + hw;
    double s = 0.0;
    if (lo < 0) {
        for (int j = lo + n; j < n; ++j) s += std::abs(row[j] - mean);
        lo = 0;
    }
    if (hi >= n) {
        for (int j = 0; j <= hi - n; ++j) s += std::abs(row[j] - mean);
        hi = n - 1;
    }
    for (int j = lo; j <= hi; ++j) s += std::abs(row[j] - mean);
    return s;
}

}  // namespace

double bmo_seminorm(const PhysicalField& f, const BmoConfig& cfg) {
    const Grid grid = f.grid();
    cfg.validate(grid);
    const int n = grid.n;
    const int stride = cfg.center_stride;
    const int centers_per_dim = n / stride;

    std::vector<BallShape> shapes;
    shapes.reserve(cfg.radii.size());
    for (double r : cfg.radii) shapes.push_back(ball_shape(grid, r));

    const double* values = f.data();
    std::vector<double> row_max(static_cast<std::size_t>(centers_per_dim), 0.0);

    parallel_for(0, centers_per_dim, [&](int ci_idx) {
        const int ci = ci_idx * stride;
        double worst = 0.0;
        for (const BallShape& shape : shapes) {
            const std::size_t rows = shape.row_offset.size();
            for (int cj = 0; cj < n; cj += stride) {
                double sum = 0.0;
                for (std::size_t r = 0; r < rows; ++r) {
                    const int ii = (ci + shape.row_offset[r] + n) % n;
                    sum += span_sum(values + static_cast<std::size_t>(ii) * n, n, cj,
                                    shape.half_width[r]);
                }
                const double mean = sum / shape.point_count;
                double dev = 0.0;
                for (std::size_t r = 0; r < rows; ++r) {
                    const int ii = (ci + shape.row_offset[r] + n) % n;
                    dev += span_abs_dev(values + static_cast<std::size_t>(ii) * n, n, cj,
                                        shape.half_width[r], mean);
                }
                worst = std::max(worst, dev / shape.point_count);
            }
        }
        row_max[static_cast<std::size_t>(ci_idx)] = worst;
    });

    return *std::max_element(row_max.begin(), row_max.end());
}

}  // namespace torusmix
