#include "torusmix/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "torusmix/util.hpp"

namespace torusmix {

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::mixing_bmo: return "mixing_bmo";
        case BoundKind::mixing_sup: return "mixing_sup";
        case BoundKind::gradient_theta: return "gradient_theta";
        case BoundKind::gradient_omega: return "gradient_omega";
    }
    return "unknown";
}

std::optional<BoundKind> bound_kind_from(const std::string& name) {
    if (name == "mixing_bmo") return BoundKind::mixing_bmo;
    if (name == "mixing_sup") return BoundKind::mixing_sup;
    if (name == "gradient_theta") return BoundKind::gradient_theta;
    if (name == "gradient_omega") return BoundKind::gradient_omega;
    return std::nullopt;
}

namespace {

constexpr double lambda_inflation = 1e-9;

void validate_records(std::span<const DiagnosticRecord> records) {
    if (records.size() < 2) throw std::invalid_argument("bound check: need at least 2 records");
    for (std::size_t j = 1; j < records.size(); ++j)
        if (!(records[j].t > records[j - 1].t))
            throw std::invalid_argument("bound check: sample times must be strictly increasing");
}

// Decay fit shared by the two mixing checks. integral[j] is the exponent
// budget I(t_j); the fitted constant is the smallest lambda with
// q(t_j)^2 >= q(0)^2 exp(-lambda I_j) at every sample.
BoundReport fit_decay(BoundKind kind, std::span<const DiagnosticRecord> records,
                      const std::vector<double>& integral, double q0,
                      const std::function<double(const DiagnosticRecord&)>& q) {
    if (!(q0 > 0.0)) throw std::invalid_argument("bound check: initial mix-norm is zero");
    const double log_q0_sq = 2.0 * std::log(q0);

    double lambda = 0.0;
    std::vector<double> numer(records.size(), 0.0);
    for (std::size_t j = 1; j < records.size(); ++j) {
        const double qj = q(records[j]);
        if (!(qj > 0.0)) throw std::invalid_argument("bound check: vanishing sample norm");
        numer[j] = log_q0_sq - 2.0 * std::log(qj);
        if (numer[j] > 0.0 && integral[j] > 0.0) lambda = std::max(lambda, numer[j] / integral[j]);
    }

    BoundReport report;
    report.kind = kind;
    report.lambda_fit = lambda;
    const double lambda_ref = lambda * (1.0 + lambda_inflation);
    report.margin_series.resize(records.size());
    bool holds = true;
    for (std::size_t j = 0; j < records.size(); ++j) {
        const double margin = lambda_ref * integral[j] - numer[j];
        report.margin_series[j] = margin;
        holds = holds && margin >= 0.0;
    }
    report.holds = holds;
    return report;
}

}  // namespace

BoundReport check_mixing_bmo(std::span<const DiagnosticRecord> records) {
    validate_records(records);
    std::vector<double> integral(records.size(), 0.0);
    for (std::size_t j = 1; j < records.size(); ++j)
        integral[j] = integral[j - 1] + 0.5 * (records[j].bmo_omega + records[j - 1].bmo_omega) *
                                            (records[j].t - records[j - 1].t);
    return fit_decay(BoundKind::mixing_bmo, records, integral, records[0].hm1_theta,
                     [](const DiagnosticRecord& r) { return r.hm1_theta; });
}

BoundReport check_mixing_sup(std::span<const DiagnosticRecord> records) {
    validate_records(records);
    std::vector<double> integral(records.size(), 0.0);
    for (std::size_t j = 1; j < records.size(); ++j)
        integral[j] = (records[j].t - records[0].t) * records[0].linf_omega;
    return fit_decay(BoundKind::mixing_sup, records, integral, records[0].hm1_theta,
                     [](const DiagnosticRecord& r) { return r.hm1_theta; });
}

BoundReport check_gradient_growth(std::span<const DiagnosticRecord> records, BoundKind which) {
    if (which != BoundKind::gradient_theta && which != BoundKind::gradient_omega)
        throw std::invalid_argument("check_gradient_growth: kind must be a gradient bound");
    validate_records(records);
    auto g = [which](const DiagnosticRecord& r) {
        return which == BoundKind::gradient_theta ? r.grad_l2_theta : r.grad_l2_omega;
    };
    const double g0 = g(records[0]);
    if (!(g0 > 0.0)) throw std::invalid_argument("check_gradient_growth: initial gradient norm is zero");
    const double log_g0_sq = 2.0 * std::log(g0);
    const double linf0 = records[0].linf_omega;

    double lambda = 0.0;
    std::vector<double> numer(records.size(), 0.0);
    std::vector<double> budget(records.size(), 0.0);
    for (std::size_t j = 1; j < records.size(); ++j) {
        const double gj = g(records[j]);
        if (!(gj > 0.0)) throw std::invalid_argument("check_gradient_growth: vanishing gradient norm");
        numer[j] = 2.0 * std::log(gj) - log_g0_sq;
        budget[j] = (records[j].t - records[0].t) * linf0;
        if (numer[j] > 0.0 && budget[j] > 0.0) lambda = std::max(lambda, numer[j] / budget[j]);
    }

    BoundReport report;
    report.kind = which;
    report.lambda_fit = lambda;
    const double lambda_ref = lambda * (1.0 + lambda_inflation);
    report.margin_series.resize(records.size());
    bool holds = true;
    for (std::size_t j = 0; j < records.size(); ++j) {
        const double margin = lambda_ref * budget[j] - numer[j];
        report.margin_series[j] = margin;
        holds = holds && margin >= 0.0;
    }
    report.holds = holds;
    return report;
}

void EnsembleSpec::validate(const Grid& grid) const {
    if (count < 1) throw std::invalid_argument("EnsembleSpec: count must be >= 1");
    if (k_min < 1 || k_max < k_min) throw std::invalid_argument("EnsembleSpec: bad band");
    if (k_max > grid.n / 4)
        throw std::invalid_argument("EnsembleSpec: band exceeds n/4 headroom");
    if (enstrophy < 0.0) throw std::invalid_argument("EnsembleSpec: enstrophy must be >= 0");
}

SpectralField random_band_field(const Grid& grid, int k_min, int k_max, double enstrophy,
                                std::uint64_t seed) {
    SpectralField out(grid);
    std::mt19937_64 rng(seed);
    const double r_min_sq = static_cast<double>(k_min) * k_min;
    const double r_max_sq = static_cast<double>(k_max) * k_max;

    // Fill the half-lattice ky > 0 plus the ky = 0, kx > 0 axis in a fixed
    // order; mirrors keep the field real. One phase draw per mode.
    long modes = 0;
    for (int kx = -k_max; kx <= k_max; ++kx)
        for (int ky = 0; ky <= k_max; ++ky) {
            if (ky == 0 && kx <= 0) continue;
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            if (k2 < r_min_sq || k2 > r_max_sq) continue;
            ++modes;
        }
    if (modes == 0) return out;
    const double amp = std::sqrt(2.0 * enstrophy / (2.0 * static_cast<double>(modes)));

    for (int kx = -k_max; kx <= k_max; ++kx)
        for (int ky = 0; ky <= k_max; ++ky) {
            if (ky == 0 && kx <= 0) continue;
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
            if (k2 < r_min_sq || k2 > r_max_sq) continue;
            const double phase = 2.0 * std::numbers::pi * uniform01(rng);
            const std::complex<double> c = amp * std::complex<double>(std::cos(phase), std::sin(phase));
            out.mode(kx, ky) = c;
            out.mode(-kx, -ky) = std::conj(c);
        }
    return out;
}

namespace {

ConstantEstimate reduce_ratios(std::vector<std::optional<double>>& ratios,
                               std::vector<double>& path_diffs) {
    ConstantEstimate est;
    std::vector<double> valid;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (ratios[i]) {
            valid.push_back(*ratios[i]);
            est.cross_check_max_diff = std::max(est.cross_check_max_diff, path_diffs[i]);
        } else {
            ++est.skipped;
        }
    }
    est.evaluated = static_cast<int>(valid.size());
    if (valid.empty()) return est;
    std::sort(valid.begin(), valid.end());
    auto rank = [&](double p) {
        const std::size_t idx =
            std::min(valid.size() - 1,
                     static_cast<std::size_t>(std::ceil(p * static_cast<double>(valid.size()))) -
                         (p > 0.0 ? 1 : 0));
        return valid[idx];
    };
    est.q50 = rank(0.5);
    est.q90 = rank(0.9);
    est.max_ratio = valid.back();
    return est;
}

constexpr double denominator_guard = 1e-12;

}  // namespace

std::optional<double> jacobian_bmo_ratio(const SpectralField& zeta, const SpectralField& phi,
                                         const BmoConfig& bmo) {
    const SpectralField jac = jacobian(zeta, phi);
    const double num = sobolev_norm(jac, 0.0);
    const double bmo_zx = bmo_seminorm(to_physical(derivative(zeta, Axis::x)), bmo);
    const double bmo_zy = bmo_seminorm(to_physical(derivative(zeta, Axis::y)), bmo);
    const double denom = std::max(bmo_zx, bmo_zy) * grad_l2_norm(phi);
    if (denom <= denominator_guard) return std::nullopt;
    return num / denom;
}

std::optional<RieszRatio> riesz_bmo_ratio(const SpectralField& omega, const BmoConfig& bmo) {
    // Direct path: grad of the perp-gradient of the streamfunction.
    const SpectralField psi = invert_laplacian(omega);
    const auto [u, v] = perp_gradient(psi);
    const SpectralField direct[4] = {derivative(u, Axis::x), derivative(u, Axis::y),
                                     derivative(v, Axis::x), derivative(v, Axis::y)};
    // Riesz composition of the same operator.
    const SpectralField rx = riesz(omega, Axis::x);
    const SpectralField ry = riesz(omega, Axis::y);
    const SpectralField composed[4] = {riesz(ry, Axis::x), riesz(ry, Axis::y),
                                       scaled(riesz(rx, Axis::x), -1.0),
                                       scaled(riesz(rx, Axis::y), -1.0)};

    RieszRatio result;
    double worst_component = 0.0;
    for (int c = 0; c < 4; ++c) {
        SpectralField diff = direct[c];
        axpy(diff, -1.0, composed[c]);
        const double ref = std::max(sobolev_norm(direct[c], 0.0), denominator_guard);
        result.path_diff = std::max(result.path_diff, sobolev_norm(diff, 0.0) / ref);
        worst_component = std::max(worst_component, bmo_seminorm(to_physical(direct[c]), bmo));
    }
    const double denom = bmo_seminorm(to_physical(omega), bmo);
    if (denom <= denominator_guard) return std::nullopt;
    result.ratio = worst_component / denom;
    return result;
}

ConstantEstimate estimate_jacobian_bmo_constant(const EnsembleSpec& spec, const Grid& grid,
                                                const BmoConfig& bmo) {
    spec.validate(grid);
    bmo.validate(grid);
    std::vector<std::optional<double>> ratios(static_cast<std::size_t>(spec.count));
    std::vector<double> diffs(static_cast<std::size_t>(spec.count), 0.0);
    parallel_for(0, spec.count, [&](int m) {
        const SpectralField zeta = random_band_field(grid, spec.k_min, spec.k_max, spec.enstrophy,
                                                     mix_seed(spec.seed, 2 * m));
        const SpectralField phi = random_band_field(grid, spec.k_min, spec.k_max, spec.enstrophy,
                                                    mix_seed(spec.seed, 2 * m + 1));
        ratios[static_cast<std::size_t>(m)] = jacobian_bmo_ratio(zeta, phi, bmo);
    });
    return reduce_ratios(ratios, diffs);
}

ConstantEstimate estimate_riesz_bmo_constant(const EnsembleSpec& spec, const Grid& grid,
                                             const BmoConfig& bmo) {
    spec.validate(grid);
    bmo.validate(grid);
    std::vector<std::optional<double>> ratios(static_cast<std::size_t>(spec.count));
    std::vector<double> diffs(static_cast<std::size_t>(spec.count), 0.0);
    parallel_for(0, spec.count, [&](int m) {
        const SpectralField omega = random_band_field(grid, spec.k_min, spec.k_max, spec.enstrophy,
                                                      mix_seed(spec.seed, m));
        if (auto r = riesz_bmo_ratio(omega, bmo)) {
            ratios[static_cast<std::size_t>(m)] = r->ratio;
            diffs[static_cast<std::size_t>(m)] = r->path_diff;
        }
    });
    return reduce_ratios(ratios, diffs);
}

}  // namespace torusmix
