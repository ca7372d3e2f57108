#include "sns/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sns/rng.hpp"

namespace sns {

namespace {
constexpr double kTwoPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

// Index-space Hermitian mirror: i -> (N - i) mod N.
inline int mirror(int i, int n) { return i == 0 ? 0 : n - i; }
}  // namespace

SpectralVelocity leray_project(const SpectralVelocity& v) {
    const int n = v.grid.modes_per_dim;
    SpectralVelocity out(v.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = v.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = v.grid.wavenumber(j);
            if ((k1 == 0 && k2 == 0) || k1 == -n / 2 || k2 == -n / 2) continue;
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const cplx a = v.at(0, i, j);
            const cplx b = v.at(1, i, j);
            const cplx kdot = (static_cast<double>(k1) * a + static_cast<double>(k2) * b) / ksq;
            out.at(0, i, j) = a - static_cast<double>(k1) * kdot;
            out.at(1, i, j) = b - static_cast<double>(k2) * kdot;
        }
    }
    return out;
}

SpectralVelocity transport_apply(const SpectralVelocity& u, Vec2 sigma) {
    const int n = u.grid.modes_per_dim;
    SpectralVelocity out(u.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = u.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = u.grid.wavenumber(j);
            const cplx mult(0.0, sigma.x * k1 + sigma.y * k2);
            out.at(0, i, j) = mult * u.at(0, i, j);
            out.at(1, i, j) = mult * u.at(1, i, j);
        }
    }
    return out;
}

SpectralVelocity laplacian(const SpectralVelocity& u) {
    const int n = u.grid.modes_per_dim;
    SpectralVelocity out(u.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = u.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = u.grid.wavenumber(j);
            const double m = -(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
            out.at(0, i, j) = m * u.at(0, i, j);
            out.at(1, i, j) = m * u.at(1, i, j);
        }
    }
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    const int n = f.grid.modes_per_dim;
    ScalarField out(f.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = f.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = f.grid.wavenumber(j);
            const double m = -(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
            out.at(i, j) = m * f.at(i, j);
        }
    }
    return out;
}

ScalarField inverse_laplacian(const ScalarField& f) {
    if (f.coeffs[0] != cplx(0.0, 0.0))
        throw std::invalid_argument("inverse_laplacian: input has a nonzero mean mode");
    const int n = f.grid.modes_per_dim;
    ScalarField out(f.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = f.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = f.grid.wavenumber(j);
            if (k1 == 0 && k2 == 0) continue;
            const double m = -1.0 / (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
            out.at(i, j) = m * f.at(i, j);
        }
    }
    return out;
}

ScalarField divergence(const SpectralVelocity& v) {
    const int n = v.grid.modes_per_dim;
    ScalarField out(v.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = v.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = v.grid.wavenumber(j);
            out.at(i, j) = cplx(0.0, 1.0) *
                           (static_cast<double>(k1) * v.at(0, i, j) +
                            static_cast<double>(k2) * v.at(1, i, j));
        }
    }
    return out;
}

SpectralVelocity nonlinear_term(const SpectralVelocity& u, Workspace& ws) {
    require_same_grid(u.grid, ws.grid(), "nonlinear_term");
    const int n = u.grid.modes_per_dim;
    const size_t psize = static_cast<size_t>(u.grid.padded_size());

    auto& p1 = ws.pad_buffer(0);
    auto& p2 = ws.pad_buffer(1);
    ws.eval_padded(u.comp[0], p1);
    ws.eval_padded(u.comp[1], p2);

    // Real parts only: the imaginary parts of a Hermitian field's physical
    // values are pure rounding noise and would break Hermitian symmetry of
    // the products.
    auto& t11 = ws.pad_buffer(2);
    auto& t12 = ws.pad_buffer(3);
    for (size_t x = 0; x < psize; ++x) {
        const double a = p1[x].real();
        const double b = p2[x].real();
        t11[x] = cplx(a * a, 0.0);
        t12[x] = cplx(a * b, 0.0);
        p2[x] = cplx(b * b, 0.0);  // reuse as t22
    }

    std::vector<cplx> that11, that12, that22;
    ws.coeffs_from_padded(t11, that11);
    ws.coeffs_from_padded(t12, that12);
    ws.coeffs_from_padded(p2, that22);

    // w_i = i xi_j T_ij, then Leray projection, all modewise.
    SpectralVelocity out(u.grid);
    for (int i = 0; i < n; ++i) {
        const int k1 = u.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = u.grid.wavenumber(j);
            if ((k1 == 0 && k2 == 0) || k1 == -n / 2 || k2 == -n / 2) continue;
            const size_t idx = static_cast<size_t>(i) * n + j;
            const cplx ik1(0.0, static_cast<double>(k1));
            const cplx ik2(0.0, static_cast<double>(k2));
            const cplx w1 = ik1 * that11[idx] + ik2 * that12[idx];
            const cplx w2 = ik1 * that12[idx] + ik2 * that22[idx];
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const cplx kdot = (static_cast<double>(k1) * w1 + static_cast<double>(k2) * w2) / ksq;
            out.at(0, i, j) = w1 - static_cast<double>(k1) * kdot;
            out.at(1, i, j) = w2 - static_cast<double>(k2) * kdot;
        }
    }
    return out;
}

double l2_norm_sq(const SpectralVelocity& u) {
    double s = 0.0;
    for (const auto& c : u.comp)
        for (const cplx& z : c) s += std::norm(z);
    return kTwoPiSq * s;
}

double l2_norm_sq(const ScalarField& f) {
    double s = 0.0;
    for (const cplx& z : f.coeffs) s += std::norm(z);
    return kTwoPiSq * s;
}

double l2_norm(const SpectralVelocity& u) { return std::sqrt(l2_norm_sq(u)); }

double h_seminorm_sq(const SpectralVelocity& u, int j) {
    const int n = u.grid.modes_per_dim;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k1 = u.grid.wavenumber(i);
        for (int jj = 0; jj < n; ++jj) {
            const int k2 = u.grid.wavenumber(jj);
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const double w = std::pow(ksq, j);
            s += w * (std::norm(u.at(0, i, jj)) + std::norm(u.at(1, i, jj)));
        }
    }
    return kTwoPiSq * s;
}

double h_seminorm_sq(const ScalarField& f, int j) {
    const int n = f.grid.modes_per_dim;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k1 = f.grid.wavenumber(i);
        for (int jj = 0; jj < n; ++jj) {
            const int k2 = f.grid.wavenumber(jj);
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            s += std::pow(ksq, j) * std::norm(f.at(i, jj));
        }
    }
    return kTwoPiSq * s;
}

double sobolev_norm_sq(const SpectralVelocity& u, int l) {
    if (l < 0 || l > 3) throw std::invalid_argument("sobolev_norm: l must be in {0,1,2,3}");
    double s = 0.0;
    for (int j = 0; j <= l; ++j) s += h_seminorm_sq(u, j);
    return s;
}

double sobolev_norm(const SpectralVelocity& u, int l) { return std::sqrt(sobolev_norm_sq(u, l)); }

double l2_inner(const SpectralVelocity& a, const SpectralVelocity& b) {
    require_same_grid(a.grid, b.grid, "l2_inner");
    double s = 0.0;
    for (int c = 0; c < 2; ++c)
        for (size_t i = 0; i < a.comp[c].size(); ++i)
            s += (std::conj(a.comp[c][i]) * b.comp[c][i]).real();
    return kTwoPiSq * s;
}

SpectralVelocity add(const SpectralVelocity& a, const SpectralVelocity& b) {
    require_same_grid(a.grid, b.grid, "add");
    SpectralVelocity out(a.grid);
    for (int c = 0; c < 2; ++c)
        for (size_t i = 0; i < a.comp[c].size(); ++i) out.comp[c][i] = a.comp[c][i] + b.comp[c][i];
    return out;
}

SpectralVelocity sub(const SpectralVelocity& a, const SpectralVelocity& b) {
    require_same_grid(a.grid, b.grid, "sub");
    SpectralVelocity out(a.grid);
    for (int c = 0; c < 2; ++c)
        for (size_t i = 0; i < a.comp[c].size(); ++i) out.comp[c][i] = a.comp[c][i] - b.comp[c][i];
    return out;
}

SpectralVelocity scaled(const SpectralVelocity& a, double factor) {
    SpectralVelocity out(a.grid);
    for (int c = 0; c < 2; ++c)
        for (size_t i = 0; i < a.comp[c].size(); ++i) out.comp[c][i] = factor * a.comp[c][i];
    return out;
}

SpectralVelocity midpoint(const SpectralVelocity& a, const SpectralVelocity& b) {
    require_same_grid(a.grid, b.grid, "midpoint");
    SpectralVelocity out(a.grid);
    for (int c = 0; c < 2; ++c)
        for (size_t i = 0; i < a.comp[c].size(); ++i)
            out.comp[c][i] = 0.5 * (a.comp[c][i] + b.comp[c][i]);
    return out;
}

SpectralVelocity taylor_green(GridSpec grid) {
    SpectralVelocity u(grid);
    const cplx qi(0.0, 0.25);  // i/4
    const int p = grid.index_of(1);
    const int m = grid.index_of(-1);
    // sin x1 cos x2
    u.at(0, p, p) = -qi;
    u.at(0, p, m) = -qi;
    u.at(0, m, p) = qi;
    u.at(0, m, m) = qi;
    // -cos x1 sin x2
    u.at(1, p, p) = qi;
    u.at(1, p, m) = -qi;
    u.at(1, m, p) = qi;
    u.at(1, m, m) = -qi;
    return u;
}

SpectralVelocity single_mode(GridSpec grid, int k1, int k2, double amplitude) {
    if (k1 == 0 && k2 == 0) throw std::invalid_argument("single_mode: zero wavenumber");
    const int n = grid.modes_per_dim;
    if (std::abs(k1) >= n / 2 || std::abs(k2) >= n / 2)
        throw std::invalid_argument("single_mode: wavenumber outside retained band");
    SpectralVelocity u(grid);
    const double knorm = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
    const double a1 = -amplitude * k2 / knorm / 2.0;
    const double a2 = amplitude * k1 / knorm / 2.0;
    u.at(0, grid.index_of(k1), grid.index_of(k2)) = cplx(a1, 0.0);
    u.at(1, grid.index_of(k1), grid.index_of(k2)) = cplx(a2, 0.0);
    u.at(0, grid.index_of(-k1), grid.index_of(-k2)) = cplx(a1, 0.0);
    u.at(1, grid.index_of(-k1), grid.index_of(-k2)) = cplx(a2, 0.0);
    return u;
}

SpectralVelocity random_divfree_field(GridSpec grid, std::uint64_t seed, double decay,
                                      double amplitude) {
    if (decay <= 4.0)
        throw std::invalid_argument("random_divfree_field: decay exponent must exceed 4");
    if (amplitude <= 0.0) throw std::invalid_argument("random_divfree_field: amplitude <= 0");
    const int n = grid.modes_per_dim;
    SpectralVelocity raw(grid);
    // Fill a half lattice with random-phase coefficients and mirror the rest,
    // keyed per mode so the draw order is immaterial.
    for (int i = 0; i < n; ++i) {
        const int k1 = grid.wavenumber(i);
        if (k1 == -n / 2) continue;
        for (int j = 0; j < n; ++j) {
            const int k2 = grid.wavenumber(j);
            if (k2 == -n / 2) continue;
            if (k1 == 0 && k2 == 0) continue;
            // Half lattice: k1 > 0, or k1 == 0 and k2 > 0.
            if (k1 < 0 || (k1 == 0 && k2 < 0)) continue;
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const double mag = amplitude * std::pow(ksq, -0.5 * decay);
            rng::Stream st(rng::seed_split(seed, (static_cast<std::uint64_t>(i) << 32) |
                                                     static_cast<std::uint64_t>(j)));
            for (int c = 0; c < 2; ++c) {
                const double phase = 2.0 * std::numbers::pi * st.next_uniform();
                const cplx a = mag * cplx(std::cos(phase), std::sin(phase));
                raw.at(c, i, j) = a;
                raw.at(c, mirror(i, n), mirror(j, n)) = std::conj(a);
            }
        }
    }
    return leray_project(raw);
}

double max_divergence(const SpectralVelocity& u) {
    const int n = u.grid.modes_per_dim;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k1 = u.grid.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = u.grid.wavenumber(j);
            const cplx d = static_cast<double>(k1) * u.at(0, i, j) +
                           static_cast<double>(k2) * u.at(1, i, j);
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

double mean_mode_magnitude(const SpectralVelocity& u) {
    return std::max(std::abs(u.comp[0][0]), std::abs(u.comp[1][0]));
}

}  // namespace sns
