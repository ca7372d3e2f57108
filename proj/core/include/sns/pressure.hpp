#pragma once

#include <vector>

#include "sns/scheme.hpp"

namespace sns {

/// Deterministic pressure -lap^{-1} div div(v x v), zero mean, with the
/// quadratic product dealiased like the nonlinear term.
ScalarField pressure_det(const SpectralVelocity& v, Workspace& ws);

/// Stochastic pressure gradients of the noise decomposition,
///   Pi_ito = -grad lap^{-1} div div(v x sigma),
///   Pi_cor = -grad lap^{-1} div div(sigma x sigma grad v).
/// Both vanish identically for constant sigma and divergence-free v (the
/// double divergence collapses onto div v); the general modewise formulas
/// are implemented so non-solenoidal debug inputs produce the field.
SpectralVelocity pressure_ito(const SpectralVelocity& v, Vec2 sigma);
SpectralVelocity pressure_cor(const SpectralVelocity& v, Vec2 sigma);

struct PressureBundle {
    ScalarField pi_det;
    std::vector<SpectralVelocity> pi_ito;  // one per channel
    std::vector<SpectralVelocity> pi_cor;
};

PressureBundle pressure_bundle(const SpectralVelocity& v, const NoiseModel& noise, Workspace& ws);

/// Accumulated uniform-in-dt statistics over a trajectory's midpoint states:
///   S_det = dt sum_m ||grad pi_det(u_{m+1/2})||^2,
///   S_ito = dt sum_m sum_k ||Pi_ito_k(u_{m+1/2})||^2_{W^{1,2}}.
struct PressureStats {
    double s_det = 0.0;
    double s_ito = 0.0;
};

PressureStats pressure_bound_stats(const Trajectory& traj, const NoiseModel& noise, Workspace& ws);

}  // namespace sns
