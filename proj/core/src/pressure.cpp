#include "sns/pressure.hpp"

namespace sns {

ScalarField pressure_det(const SpectralVelocity& v, Workspace& ws) {
    require_same_grid(v.grid, ws.grid(), "pressure_det");
    const int n = v.grid.modes_per_dim;
    const size_t psize = static_cast<size_t>(v.grid.padded_size());

    auto& p1 = ws.pad_buffer(0);
    auto& p2 = ws.pad_buffer(1);
    ws.eval_padded(v.comp[0], p1);
    ws.eval_padded(v.comp[1], p2);
    auto& t11 = ws.pad_buffer(2);
    auto& t12 = ws.pad_buffer(3);
    for (size_t x = 0; x < psize; ++x) {
        const double a = p1[x].real();
        const double b = p2[x].real();
        t11[x] = cplx(a * a, 0.0);
        t12[x] = cplx(a * b, 0.0);
        p2[x] = cplx(b * b, 0.0);
    }
    std::vector<cplx> that11, that12, that22;
    ws.coeffs_from_padded(t11, that11);
    ws.coeffs_from_padded(t12, that12);
    ws.coeffs_from_padded(p2, that22);

    // pi = -lap^{-1} div div T: pihat = -(xi_i xi_j That_ij)/|xi|^2.
    ScalarField out(v.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = v.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = v.grid.wavenumber(j);
            if ((k1 == 0 && k2 == 0) || k1 == -n / 2 || k2 == -n / 2) continue;
            const size_t idx = static_cast<size_t>(i) * n + j;
            const double kk1 = k1, kk2 = k2;
            const cplx quad = kk1 * kk1 * that11[idx] + 2.0 * kk1 * kk2 * that12[idx] +
                              kk2 * kk2 * that22[idx];
            out.at(i, j) = -quad / (kk1 * kk1 + kk2 * kk2);
        }
    }
    return out;
}

namespace {

// Shared shape of both stochastic pressures:
//   Pihat = i xi * w(xi) / |xi|^2  with  w = (div div ...)^hat.
template <typename ScalarPerMode>
SpectralVelocity grad_invlap_of(const SpectralVelocity& v, ScalarPerMode&& w_of_mode) {
    const int n = v.grid.modes_per_dim;
    SpectralVelocity out(v.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = v.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = v.grid.wavenumber(j);
            if ((k1 == 0 && k2 == 0) || k1 == -n / 2 || k2 == -n / 2) continue;
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const cplx w = w_of_mode(i, j, k1, k2);
            out.at(0, i, j) = cplx(0.0, k1) * w / ksq;
            out.at(1, i, j) = cplx(0.0, k2) * w / ksq;
        }
    }
    return out;
}

}  // namespace

SpectralVelocity pressure_ito(const SpectralVelocity& v, Vec2 sigma) {
    // div div(v x sigma) -> (i xi . vhat)(i sigma . xi)
    return grad_invlap_of(v, [&](int i, int j, int k1, int k2) {
        const cplx div_v = cplx(0.0, 1.0) * (static_cast<double>(k1) * v.at(0, i, j) +
                                             static_cast<double>(k2) * v.at(1, i, j));
        const cplx is_xi(0.0, sigma.x * k1 + sigma.y * k2);
        return div_v * is_xi;
    });
}

SpectralVelocity pressure_cor(const SpectralVelocity& v, Vec2 sigma) {
    // div div(sigma x sigma grad v) -> (i sigma . xi)^2 (i xi . vhat)
    return grad_invlap_of(v, [&](int i, int j, int k1, int k2) {
        const cplx div_v = cplx(0.0, 1.0) * (static_cast<double>(k1) * v.at(0, i, j) +
                                             static_cast<double>(k2) * v.at(1, i, j));
        const cplx is_xi(0.0, sigma.x * k1 + sigma.y * k2);
        return is_xi * is_xi * div_v;
    });
}

PressureBundle pressure_bundle(const SpectralVelocity& v, const NoiseModel& noise, Workspace& ws) {
    PressureBundle b;
    b.pi_det = pressure_det(v, ws);
    b.pi_ito.reserve(noise.channels());
    b.pi_cor.reserve(noise.channels());
    for (const Vec2& s : noise.sigmas) {
        b.pi_ito.push_back(pressure_ito(v, s));
        b.pi_cor.push_back(pressure_cor(v, s));
    }
    return b;
}

PressureStats pressure_bound_stats(const Trajectory& traj, const NoiseModel& noise,
                                   Workspace& ws) {
    PressureStats stats;
    for (int m = 0; m < traj.steps; ++m) {
        const SpectralVelocity mid = traj.state_midpoint(m);
        const ScalarField pi = pressure_det(mid, ws);
        stats.s_det += traj.dt * h_seminorm_sq(pi, 1);
        for (const Vec2& s : noise.sigmas) {
            const SpectralVelocity ito = pressure_ito(mid, s);
            stats.s_ito += traj.dt * (l2_norm_sq(ito) + h_seminorm_sq(ito, 1));
        }
    }
    return stats;
}

}  // namespace sns
