#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sns/scheme.hpp"

namespace sns {

/// One sample of the mean-square error functional at a level M:
///   max_{1<=m<=M} ||e_m||^2_{L2} + dt sum_{1<=m<=M} ||grad e_m||^2,
/// with e_m the difference of two trajectories on shared noise.
struct ErrorSample {
    int level = 0;
    double max_sq_err = 0.0;
    double grad_sq_err = 0.0;

    double total() const { return max_sq_err + grad_sq_err; }
};

/// Streaming evaluation: feed the state pairs m = 1..M in order.
class ErrorAccumulator {
public:
    ErrorAccumulator(int level, double dt) : level_(level), dt_(dt) {}

    void add(const SpectralVelocity& a, const SpectralVelocity& b);
    ErrorSample finish() const;

    /// ||e_m||^2 for each fed m, for the per-step mean diagnostic.
    const std::vector<double>& sq_errors() const { return sq_err_; }

private:
    int level_;
    double dt_;
    double max_sq_ = 0.0;
    double grad_sq_ = 0.0;
    std::vector<double> sq_err_;
};

/// Error functional over stored trajectories. The reference level must be a
/// multiple of the coarse level; reference state m * (M_f / M) plays the
/// role of u(t_m). Symmetric in its two arguments.
ErrorSample error_functional(const Trajectory& coarse, const Trajectory& reference);

/// Exact pathwise solution for a single solenoidal mode a e^{i xi . x}
/// (plus conjugate): nonlinearity and pressure vanish and
///   uhat(t) = a exp(-mu |xi|^2 t + i sum_k (sigma_k . xi) W_k(t)).
/// Requires a . xi = 0.
SpectralVelocity single_mode_exact(GridSpec grid, cplx a1, cplx a2, int k1, int k2, double t,
                                   std::span<const double> W_t, double mu,
                                   const NoiseModel& noise);

/// Least-squares exponent: alpha = slope(log mse over log dt) / 2. Needs at
/// least three levels and positive values.
double fit_order(std::span<const double> dts, std::span<const double> mses);

/// Time-regularity diagnostic: max over dyadic-gap step pairs of
///   ||u_m - u_n||_{W^{l-1,2}} / |t_m - t_n|^alpha,
/// subsampled to O(M log M) pairs. alpha in [0, 1/2), l in {1,2,3}.
double holder_quotient(const Trajectory& traj, double alpha, int l);

}  // namespace sns
