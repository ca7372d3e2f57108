#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sns/field.hpp"
#include "sns/noise.hpp"

namespace sns {

struct SchemeConfig {
    double mu = 0.05;     // viscosity
    double horizon = 0.5; // T
    int steps = 1024;     // M
    double fp_tol = 1e-12;
    int fp_max_iters = 200;

    double dt() const { return horizon / steps; }

    SchemeConfig with_steps(int m) const {
        SchemeConfig c = *this;
        c.steps = m;
        return c;
    }

    void validate() const {
        if (mu <= 0.0) throw std::invalid_argument("SchemeConfig: mu must be positive");
        if (horizon <= 0.0) throw std::invalid_argument("SchemeConfig: T must be positive");
        if (steps < 1) throw std::invalid_argument("SchemeConfig: M must be >= 1");
        if (fp_tol < 1e-14) throw std::invalid_argument("SchemeConfig: fp_tol must be >= 1e-14");
        if (fp_max_iters < 1) throw std::invalid_argument("SchemeConfig: fp_max_iters must be >= 1");
    }
};

/// Per-step conservation bookkeeping. Energies are (1/2)||u||^2; the h1_*
/// entries are the same ledger at gradient level. The exact discrete
/// identities make both defects vanish up to the fixed-point residual.
struct LedgerEntry {
    double energy_before = 0.0;   // 1/2 ||u_m||^2
    double energy_after = 0.0;    // 1/2 ||u_{m+1}||^2
    double dissipation = 0.0;     // dt mu ||grad u_{m+1/2}||^2
    double energy_defect = 0.0;   // after + dissipation - before
    double h1_before = 0.0;       // 1/2 ||grad u_m||^2
    double h1_after = 0.0;
    double h1_dissipation = 0.0;  // dt mu ||lap u_{m+1/2}||^2
    double h1_defect = 0.0;
    int fp_iterations = 0;
    double fp_residual = 0.0;
};

struct StepLedger {
    std::vector<LedgerEntry> steps;

    double cumulative_energy_defect() const;
    double max_abs_energy_defect() const;
    double max_abs_h1_defect() const;
};

class NonConvergence : public std::runtime_error {
public:
    NonConvergence(int iterations, double residual)
        : std::runtime_error("fixed-point iteration did not converge"),
          iterations(iterations),
          residual(residual) {}

    int iterations = 0;
    double residual = 0.0;
    int step = -1;    // filled by run_trajectory
    int level = -1;   // filled by the harness
    int sample = -1;  // filled by the harness
};

/// Solve (I - L/2) x = rhs modewise, where
///   L(xi) = -dt mu |xi|^2 + i sum_k (sigma_k . xi) dW_k.
/// Re L <= 0, so |1 - L/2| >= 1 and the division is always well posed. For
/// mu dt = 0 the factor is the unitary Cayley rotation, which is why the
/// implicitly treated noise conserves energy.
SpectralVelocity linear_cayley_solve(const SpectralVelocity& rhs, std::span<const double> dW,
                                     const NoiseModel& noise, const SchemeConfig& cfg);

/// One implicit midpoint step: find u_{m+1} with
///   u_{m+1} = u_m + L u_{m+1/2} - dt P[div(u x u)](u_{m+1/2}),
/// u_{m+1/2} = (u_m + u_{m+1})/2, by Picard iteration on the midpoint
/// iterate. Stops when the midpoint update is below
/// fp_tol * max(1, ||u_m||); throws NonConvergence after fp_max_iters.
struct StepResult {
    SpectralVelocity next;
    LedgerEntry entry;
};
StepResult midpoint_step(const SpectralVelocity& u, std::span<const double> dW,
                         const NoiseModel& noise, const SchemeConfig& cfg, Workspace& ws);

/// L2 norm of the discrete momentum residual
///   u_{m+1} - u_m - L u_{m+1/2} + dt N(u_{m+1/2});
/// accepted steps satisfy <= 10 fp_tol ||u_m|| (solver postcondition).
double step_residual(const SpectralVelocity& u, const SpectralVelocity& next,
                     std::span<const double> dW, const NoiseModel& noise,
                     const SchemeConfig& cfg, Workspace& ws);

struct Trajectory {
    int steps = 0;
    double dt = 0.0;
    std::vector<SpectralVelocity> states;  // size steps + 1
    StepLedger ledger;

    SpectralVelocity state_midpoint(int m) const {  // u_{m+1/2}
        return midpoint(states.at(m), states.at(m + 1));
    }
};

/// Walk a full trajectory at level cfg.steps, feeding every state (including
/// the initial one) to the observer. The step count must divide
/// path.finest_steps; increments are exact sums of the fine ones.
void run_trajectory_observed(const SpectralVelocity& u0, const WienerPath& path,
                             const NoiseModel& noise, const SchemeConfig& cfg, Workspace& ws,
                             const std::function<void(int, const SpectralVelocity&)>& on_state,
                             StepLedger* ledger);

/// As above, storing all states. Deterministic given (u0, path, cfg).
Trajectory run_trajectory(const SpectralVelocity& u0, const WienerPath& path,
                          const NoiseModel& noise, const SchemeConfig& cfg, Workspace& ws);

}  // namespace sns
