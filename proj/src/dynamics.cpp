#include "torusmix/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace torusmix {

void FlowState::validate() const {
    if (omega.grid() != theta.grid())
        throw std::invalid_argument("FlowState: omega and theta on different grids");
    if (std::abs(omega.data()[0]) > 1e-14 || std::abs(theta.data()[0]) > 1e-14)
        throw std::invalid_argument("FlowState: fields must be zero-mean");
}

namespace {

// Velocity at the collocation points from the (dealiased) vorticity.
std::pair<PhysicalField, PhysicalField> velocity(const SpectralField& omega) {
    SpectralField psi = invert_laplacian(omega);
    auto [u_hat, v_hat] = perp_gradient(psi);
    return {to_physical(u_hat), to_physical(v_hat)};
}

}  // namespace

std::pair<SpectralField, SpectralField> tendency(const FlowState& state) {
    const Grid grid = state.grid();
    const SpectralField w = dealiased(state.omega);
    const SpectralField th = dealiased(state.theta);

    auto [u, v] = velocity(w);
    const PhysicalField wx = to_physical(derivative(w, Axis::x));
    const PhysicalField wy = to_physical(derivative(w, Axis::y));
    const PhysicalField tx = to_physical(derivative(th, Axis::x));
    const PhysicalField ty = to_physical(derivative(th, Axis::y));

    PhysicalField adv_w(grid);
    PhysicalField adv_t(grid);
    const std::size_t m = adv_w.size();
    for (std::size_t i = 0; i < m; ++i) {
        adv_w.data()[i] = u.data()[i] * wx.data()[i] + v.data()[i] * wy.data()[i];
        adv_t.data()[i] = u.data()[i] * tx.data()[i] + v.data()[i] * ty.data()[i];
    }

    SpectralField dw = to_spectral(adv_w);
    SpectralField dth = to_spectral(adv_t);
    dealias(dw);
    dealias(dth);
    for (std::size_t i = 0; i < dw.size(); ++i) dw.data()[i] = -dw.data()[i];
    for (std::size_t i = 0; i < dth.size(); ++i) dth.data()[i] = -dth.data()[i];
    return {std::move(dw), std::move(dth)};
}

FlowState step(const FlowState& state, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

    auto stage = [&](double frac, const SpectralField& kw, const SpectralField& kt) {
        FlowState s{state.omega, state.theta, state.t + frac * dt};
        axpy(s.omega, frac * dt, kw);
        axpy(s.theta, frac * dt, kt);
        return s;
    };

    const auto [k1w, k1t] = tendency(state);
    const auto [k2w, k2t] = tendency(stage(0.5, k1w, k1t));
    const auto [k3w, k3t] = tendency(stage(0.5, k2w, k2t));
    const auto [k4w, k4t] = tendency(stage(1.0, k3w, k3t));

    FlowState out{state.omega, state.theta, state.t + dt};
    axpy(out.omega, dt / 6.0, k1w);
    axpy(out.omega, dt / 3.0, k2w);
    axpy(out.omega, dt / 3.0, k3w);
    axpy(out.omega, dt / 6.0, k4w);
    axpy(out.theta, dt / 6.0, k1t);
    axpy(out.theta, dt / 3.0, k2t);
    axpy(out.theta, dt / 3.0, k3t);
    axpy(out.theta, dt / 6.0, k4t);
    return out;
}

double cfl_dt(const FlowState& state, const StepControl& ctl) {
    ctl.validate();
    auto [u, v] = velocity(dealiased(state.omega));
    const double vmax = std::max({u.max_abs(), v.max_abs(), 1e-12});
    const double dt = std::min(ctl.dt_max, ctl.cfl * state.grid().h / vmax);
    if (dt < ctl.dt_min)
        throw SolverError("cfl_dt: step collapsed below dt_min at t = " + std::to_string(state.t),
                          state.t);
    return dt;
}

DiagnosticRecord diagnose(const FlowState& state, const BmoConfig& bmo) {
    constexpr double pi = std::numbers::pi;
    DiagnosticRecord rec;
    rec.t = state.t;
    rec.hm1_theta = sobolev_norm(state.theta, -1.0);
    rec.hm12_theta = sobolev_norm(state.theta, -0.5);
    rec.l2_theta = sobolev_norm(state.theta, 0.0);
    rec.grad_l2_theta = grad_l2_norm(state.theta);
    rec.grad_l2_omega = grad_l2_norm(state.omega);

    const double hm1_omega = sobolev_norm(state.omega, -1.0);
    rec.energy = hm1_omega * hm1_omega / (8.0 * pi * pi);
    const double l2_omega = sobolev_norm(state.omega, 0.0);
    rec.enstrophy = 0.5 * l2_omega * l2_omega;

    const PhysicalField omega_phys = to_physical(state.omega);
    rec.linf_omega = omega_phys.max_abs();
    rec.bmo_omega = bmo_seminorm(omega_phys, bmo);

    // Enstrophy fraction carried by the top third of the retained (dealiased)
    // modes; the under-resolution monitor.
    const Grid grid = state.grid();
    const int cut = grid.dealias_cutoff();
    const double tail_start = 2.0 * cut / 3.0;
    double total = 0.0;
    double tail = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const int kx = grid.wavenumber(i);
        for (int j = 0; j < grid.n; ++j) {
            const int ky = grid.wavenumber(j);
            const int kmax = std::max(std::abs(kx), std::abs(ky));
            if (kmax > cut) continue;
            const double a2 = std::norm(state.omega.bin(i, j));
            total += a2;
            if (kmax > tail_start) tail += a2;
        }
    }
    rec.resolved_fraction = total > 0.0 ? tail / total : 0.0;
    return rec;
}

FlowState run(const FlowState& state0, const StepControl& ctl, double t_end, double sample_every,
              const BmoConfig& bmo, DiagnosticSink& sink) {
    state0.validate();
    ctl.validate();
    if (t_end < state0.t) throw std::invalid_argument("run: t_end precedes the initial time");
    if (!(sample_every > 0.0)) throw std::invalid_argument("run: sample_every must be positive");

    FlowState state = state0;
    sink.emit(diagnose(state, bmo));
    if (t_end == state0.t) return state;

    const double t0 = state0.t;
    long sample_index = 1;
    double next_sample = std::min(t0 + sample_every, t_end);

    while (state.t < t_end) {
        const double dt_cfl = cfl_dt(state, ctl);
        const double dt = std::min(dt_cfl, next_sample - state.t);
        state = step(state, dt);
        if (state.t >= next_sample - 1e-12 * std::max(1.0, std::abs(next_sample))) {
            state.t = next_sample;  // pin away accumulated roundoff
            sink.emit(diagnose(state, bmo));
            ++sample_index;
            next_sample = std::min(t0 + sample_every * static_cast<double>(sample_index), t_end);
            if (next_sample <= state.t && state.t < t_end) next_sample = t_end;
        }
    }
    return state;
}

}  // namespace torusmix
