#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "torusmix/norms.hpp"
#include "torusmix/operators.hpp"

namespace torusmix {

// Spectral state of the coupled system: vorticity, passive scalar, time.
// Both fields are zero-mean, Hermitian and live on the same grid.
struct FlowState {
    SpectralField omega;
    SpectralField theta;
    double t = 0.0;

    const Grid& grid() const { return omega.grid(); }
    void validate() const;
};

struct StepControl {
    double cfl = 0.4;
    double dt_max = 0.02;
    double dt_min = 1e-9;

    void validate() const {
        if (!(0.0 < cfl && cfl <= 1.0)) throw std::invalid_argument("StepControl: cfl must be in (0,1]");
        if (!(0.0 < dt_min && dt_min < dt_max))
            throw std::invalid_argument("StepControl: need 0 < dt_min < dt_max");
    }
};

// Raised when the CFL step collapses below dt_min (velocity blow-up guard).
class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
    double time() const { return t_; }

  private:
    double t_;
};

// Right-hand sides (-J(psi,omega), -J(psi,theta)) with psi = laplacian^-1
// omega; pseudospectral products under the 2/3 rule, both outputs zero-mean.
std::pair<SpectralField, SpectralField> tendency(const FlowState& state);

// One classical RK4 step of size dt.
FlowState step(const FlowState& state, double dt);

// min(dt_max, cfl*h / max(|u|_inf, |v|_inf, 1e-12)); throws SolverError if
// the result falls below ctl.dt_min.
double cfl_dt(const FlowState& state, const StepControl& ctl);

// One sampling instant's worth of norms and conserved quantities.
struct DiagnosticRecord {
    double t = 0.0;
    double hm1_theta = 0.0;          // |theta|_{H^-1}
    double hm12_theta = 0.0;         // |theta|_{H^-1/2}
    double grad_l2_theta = 0.0;      // |grad theta|_{L^2}
    double grad_l2_omega = 0.0;      // |grad omega|_{L^2}
    double linf_omega = 0.0;         // |omega|_{L^inf}
    double bmo_omega = 0.0;          // |omega|_BMO
    double energy = 0.0;             // 0.5 |v|_{L^2}^2
    double enstrophy = 0.0;          // 0.5 |omega|_{L^2}^2
    double l2_theta = 0.0;           // |theta|_{L^2}
    double resolved_fraction = 0.0;  // enstrophy fraction in the top third of retained modes
};

DiagnosticRecord diagnose(const FlowState& state, const BmoConfig& bmo);

class DiagnosticSink {
  public:
    virtual ~DiagnosticSink() = default;
    virtual void emit(const DiagnosticRecord& record) = 0;
};

// Advances the state to t_end with adaptive CFL steps, emitting a record at
// t = state0.t, every sample_every thereafter, and at t = t_end. Exactly one
// record is emitted per instant; a degenerate interval (t_end == state0.t)
// emits one record. Deterministic for fixed inputs.
FlowState run(const FlowState& state0, const StepControl& ctl, double t_end, double sample_every,
              const BmoConfig& bmo, DiagnosticSink& sink);

}  // namespace torusmix
