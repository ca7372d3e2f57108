#include "sns/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sns {

namespace {

// Per-mode halves of the linear generator: 1 -/+ L/2 with
// L = -dt mu |xi|^2 + i theta, theta = sum_k (sigma_k . xi) dW_k.
struct ModeFactors {
    // a = dt mu |xi|^2 / 2, t = theta / 2
    static cplx denom(double a, double t) { return cplx(1.0 + a, -t); }
    static cplx numer(double a, double t) { return cplx(1.0 - a, t); }
};

double theta_of(int k1, int k2, std::span<const double> dW, const NoiseModel& noise) {
    double th = 0.0;
    for (int k = 0; k < noise.channels(); ++k)
        th += (noise.sigmas[k].x * k1 + noise.sigmas[k].y * k2) * dW[k];
    return th;
}

}  // namespace

double StepLedger::cumulative_energy_defect() const {
    double s = 0.0;
    for (const auto& e : steps) s += e.energy_defect;
    return s;
}

double StepLedger::max_abs_energy_defect() const {
    double s = 0.0;
    for (const auto& e : steps) s = std::max(s, std::abs(e.energy_defect));
    return s;
}

double StepLedger::max_abs_h1_defect() const {
    double s = 0.0;
    for (const auto& e : steps) s = std::max(s, std::abs(e.h1_defect));
    return s;
}

SpectralVelocity linear_cayley_solve(const SpectralVelocity& rhs, std::span<const double> dW,
                                     const NoiseModel& noise, const SchemeConfig& cfg) {
    const int n = rhs.grid.modes_per_dim;
    const double half_visc = 0.5 * cfg.dt() * cfg.mu;
    SpectralVelocity out(rhs.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = rhs.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = rhs.grid.wavenumber(j);
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const cplx d = ModeFactors::denom(half_visc * ksq, 0.5 * theta_of(k1, k2, dW, noise));
            out.at(0, i, j) = rhs.at(0, i, j) / d;
            out.at(1, i, j) = rhs.at(1, i, j) / d;
        }
    }
    return out;
}

StepResult midpoint_step(const SpectralVelocity& u, std::span<const double> dW,
                         const NoiseModel& noise, const SchemeConfig& cfg, Workspace& ws) {
    const int n = u.grid.modes_per_dim;
    const size_t sz = static_cast<size_t>(u.grid.size());
    const double dt = cfg.dt();
    const double half_visc = 0.5 * dt * cfg.mu;

    // Precompute (1 + L/2) u_m and the solve factors once per step.
    SpectralVelocity base(u.grid);
    std::vector<cplx> inv_denom(sz);
    for (int i = 0; i < n; ++i) {
        const int k1 = u.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = u.grid.wavenumber(j);
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const double a = half_visc * ksq;
            const double t = 0.5 * theta_of(k1, k2, dW, noise);
            const size_t idx = static_cast<size_t>(i) * n + j;
            inv_denom[idx] = 1.0 / ModeFactors::denom(a, t);
            const cplx nm = ModeFactors::numer(a, t);
            base.comp[0][idx] = nm * u.comp[0][idx];
            base.comp[1][idx] = nm * u.comp[1][idx];
        }
    }

    const double stop_scale = std::max(1.0, l2_norm(u));
    SpectralVelocity v = u;  // midpoint iterate, v^0 = u_m
    SpectralVelocity next(u.grid);
    int iters = 0;
    double residual = 0.0;
    bool converged = false;
    while (iters < cfg.fp_max_iters) {
        ++iters;
        const SpectralVelocity nl = nonlinear_term(v, ws);
        double diff_sq = 0.0;
        for (int c = 0; c < 2; ++c) {
            for (size_t idx = 0; idx < sz; ++idx) {
                const cplx xn = (base.comp[c][idx] - dt * nl.comp[c][idx]) * inv_denom[idx];
                next.comp[c][idx] = xn;
                const cplx vn = 0.5 * (u.comp[c][idx] + xn);
                const cplx dv = vn - v.comp[c][idx];
                diff_sq += std::norm(dv);
                v.comp[c][idx] = vn;
            }
        }
        residual = 2.0 * std::numbers::pi * std::sqrt(diff_sq);
        if (residual <= cfg.fp_tol * stop_scale) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NonConvergence(iters, residual);

    StepResult res{std::move(next), LedgerEntry{}};
    LedgerEntry& e = res.entry;
    const SpectralVelocity& mid = v;  // v is u_{m+1/2} of the accepted step
    e.energy_before = 0.5 * l2_norm_sq(u);
    e.energy_after = 0.5 * l2_norm_sq(res.next);
    e.dissipation = dt * cfg.mu * h_seminorm_sq(mid, 1);
    e.energy_defect = e.energy_after + e.dissipation - e.energy_before;
    e.h1_before = 0.5 * h_seminorm_sq(u, 1);
    e.h1_after = 0.5 * h_seminorm_sq(res.next, 1);
    e.h1_dissipation = dt * cfg.mu * h_seminorm_sq(mid, 2);
    e.h1_defect = e.h1_after + e.h1_dissipation - e.h1_before;
    e.fp_iterations = iters;
    e.fp_residual = residual;
    return res;
}

double step_residual(const SpectralVelocity& u, const SpectralVelocity& next,
                     std::span<const double> dW, const NoiseModel& noise,
                     const SchemeConfig& cfg, Workspace& ws) {
    require_same_grid(u.grid, next.grid, "step_residual");
    const int n = u.grid.modes_per_dim;
    const double dt = cfg.dt();
    const double half_visc = 0.5 * dt * cfg.mu;
    const SpectralVelocity mid = midpoint(u, next);
    const SpectralVelocity nl = nonlinear_term(mid, ws);
    double sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k1 = u.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = u.grid.wavenumber(j);
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            // L = -dt mu |xi|^2 + i theta applied to the midpoint
            const cplx L(-2.0 * half_visc * ksq, theta_of(k1, k2, dW, noise));
            for (int c = 0; c < 2; ++c) {
                const cplx r = next.at(c, i, j) - u.at(c, i, j) - L * mid.at(c, i, j) +
                               dt * nl.at(c, i, j);
                sq += std::norm(r);
            }
        }
    }
    return 2.0 * std::numbers::pi * std::sqrt(sq);
}

void run_trajectory_observed(const SpectralVelocity& u0, const WienerPath& path,
                             const NoiseModel& noise, const SchemeConfig& cfg, Workspace& ws,
                             const std::function<void(int, const SpectralVelocity&)>& on_state,
                             StepLedger* ledger) {
    cfg.validate();
    if (path.finest_steps % cfg.steps != 0)
        throw std::invalid_argument("run_trajectory: step count must divide the path's level");
    if (noise.channels() != path.channels)
        throw std::invalid_argument("run_trajectory: noise model and path channel counts differ");

    const auto increments = coarsen_increments(path, cfg.steps);
    std::vector<double> dW(noise.channels());

    SpectralVelocity u = u0;
    on_state(0, u);
    for (int m = 0; m < cfg.steps; ++m) {
        for (int k = 0; k < noise.channels(); ++k) dW[k] = increments[k][m];
        try {
            StepResult r = midpoint_step(u, dW, noise, cfg, ws);
            u = std::move(r.next);
            if (ledger) ledger->steps.push_back(r.entry);
        } catch (NonConvergence& nc) {
            nc.step = m;
            throw;
        }
        on_state(m + 1, u);
    }
}

Trajectory run_trajectory(const SpectralVelocity& u0, const WienerPath& path,
                          const NoiseModel& noise, const SchemeConfig& cfg, Workspace& ws) {
    Trajectory traj;
    traj.steps = cfg.steps;
    traj.dt = cfg.dt();
    traj.states.reserve(cfg.steps + 1);
    run_trajectory_observed(
        u0, path, noise, cfg, ws,
        [&traj](int, const SpectralVelocity& s) { traj.states.push_back(s); }, &traj.ledger);
    return traj;
}

}  // namespace sns
