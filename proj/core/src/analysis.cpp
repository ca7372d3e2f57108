#include "sns/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace sns {

void ErrorAccumulator::add(const SpectralVelocity& a, const SpectralVelocity& b) {
    require_same_grid(a.grid, b.grid, "ErrorAccumulator");
    const SpectralVelocity e = sub(a, b);
    const double sq = l2_norm_sq(e);
    sq_err_.push_back(sq);
    max_sq_ = std::max(max_sq_, sq);
    grad_sq_ += dt_ * h_seminorm_sq(e, 1);
}

ErrorSample ErrorAccumulator::finish() const {
    ErrorSample s;
    s.level = level_;
    s.max_sq_err = max_sq_;
    s.grad_sq_err = grad_sq_;
    return s;
}

ErrorSample error_functional(const Trajectory& coarse, const Trajectory& reference) {
    if (reference.steps % coarse.steps != 0)
        throw std::invalid_argument("error_functional: coarse level must divide reference level");
    const int stride = reference.steps / coarse.steps;
    ErrorAccumulator acc(coarse.steps, coarse.dt);
    for (int m = 1; m <= coarse.steps; ++m)
        acc.add(reference.states.at(static_cast<size_t>(m) * stride), coarse.states.at(m));
    return acc.finish();
}

SpectralVelocity single_mode_exact(GridSpec grid, cplx a1, cplx a2, int k1, int k2, double t,
                                   std::span<const double> W_t, double mu,
                                   const NoiseModel& noise) {
    const double adotk = std::abs(a1 * static_cast<double>(k1) + a2 * static_cast<double>(k2));
    const double amag = std::max(std::abs(a1), std::abs(a2));
    if (adotk > 1e-12 * std::max(1.0, amag) * std::hypot(k1, k2))
        throw std::invalid_argument("single_mode_exact: amplitude is not orthogonal to xi");

    const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    double phase = 0.0;
    for (int k = 0; k < noise.channels(); ++k)
        phase += (noise.sigmas[k].x * k1 + noise.sigmas[k].y * k2) * W_t[k];
    const cplx factor = std::exp(cplx(-mu * ksq * t, phase));

    SpectralVelocity u(grid);
    u.at(0, grid.index_of(k1), grid.index_of(k2)) = a1 * factor;
    u.at(1, grid.index_of(k1), grid.index_of(k2)) = a2 * factor;
    u.at(0, grid.index_of(-k1), grid.index_of(-k2)) = std::conj(a1 * factor);
    u.at(1, grid.index_of(-k1), grid.index_of(-k2)) = std::conj(a2 * factor);
    return u;
}

double fit_order(std::span<const double> dts, std::span<const double> mses) {
    if (dts.size() != mses.size() || dts.size() < 3)
        throw std::invalid_argument("fit_order: need at least three levels");
    const size_t n = dts.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        if (mses[i] <= 0.0 || dts[i] <= 0.0)
            throw std::invalid_argument("fit_order: nonpositive value");
        lx[i] = std::log(dts[i]);
        ly[i] = std::log(mses[i]);
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    return 0.5 * sxy / sxx;
}

double holder_quotient(const Trajectory& traj, double alpha, int l) {
    if (alpha < 0.0 || alpha >= 0.5)
        throw std::invalid_argument("holder_quotient: alpha must be in [0, 1/2)");
    if (l < 1 || l > 3) throw std::invalid_argument("holder_quotient: l must be in {1,2,3}");
    const int M = traj.steps;
    double worst = 0.0;
    for (int gap = 1; gap <= M; gap *= 2) {
        const double tgap = gap * traj.dt;
        const double denom = std::pow(tgap, alpha);
        for (int m = 0; m + gap <= M; ++m) {
            const SpectralVelocity d = sub(traj.states[m + gap], traj.states[m]);
            double nsq = 0.0;
            for (int j = 0; j <= l - 1; ++j) nsq += h_seminorm_sq(d, j);
            worst = std::max(worst, std::sqrt(nsq) / denom);
        }
    }
    return worst;
}

}  // namespace sns
