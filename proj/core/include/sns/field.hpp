#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sns/fft.hpp"
#include "sns/grid.hpp"

namespace sns {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Scalar field on the torus as retained Fourier coefficients, FFT layout,
/// Hermitian-symmetric for real-valued fields.
struct ScalarField {
    GridSpec grid;
    std::vector<cplx> coeffs;

    ScalarField() = default;
    explicit ScalarField(GridSpec g) : grid(g), coeffs(g.size(), cplx(0.0, 0.0)) {}

    cplx& at(int i, int j) { return coeffs[static_cast<size_t>(i) * grid.modes_per_dim + j]; }
    const cplx& at(int i, int j) const {
        return coeffs[static_cast<size_t>(i) * grid.modes_per_dim + j];
    }
};

/// Velocity field as two component coefficient arrays (uhat_1, uhat_2).
///
/// Invariants maintained by every constructor and operation in this library:
///  - Hermitian symmetry (the physical field is real),
///  - xi . uhat(xi) = 0 (divergence free) where documented,
///  - uhat(0) = 0 (zero mean) and zero Nyquist rows/columns.
struct SpectralVelocity {
    GridSpec grid;
    std::array<std::vector<cplx>, 2> comp;

    SpectralVelocity() = default;
    explicit SpectralVelocity(GridSpec g) : grid(g) {
        comp[0].assign(g.size(), cplx(0.0, 0.0));
        comp[1].assign(g.size(), cplx(0.0, 0.0));
    }

    cplx& at(int c, int i, int j) {
        return comp[c][static_cast<size_t>(i) * grid.modes_per_dim + j];
    }
    const cplx& at(int c, int i, int j) const {
        return comp[c][static_cast<size_t>(i) * grid.modes_per_dim + j];
    }
};

// ---- modewise operators ----------------------------------------------------

/// L2-orthogonal projection onto divergence-free fields,
/// Phat v = v - xi (xi.v)/|xi|^2, zero mode and Nyquist slots set to zero.
SpectralVelocity leray_project(const SpectralVelocity& v);

/// Constant-coefficient advection (sigma . grad) u, i.e. multiplication by
/// i (sigma . xi) per mode. Divergence free input stays divergence free.
SpectralVelocity transport_apply(const SpectralVelocity& u, Vec2 sigma);

SpectralVelocity laplacian(const SpectralVelocity& u);
ScalarField laplacian(const ScalarField& f);

/// Modewise -1/|xi|^2, zero mode mapped to zero. Throws if the input has a
/// nonzero mean mode (that mode is not invertible).
ScalarField inverse_laplacian(const ScalarField& f);

ScalarField divergence(const SpectralVelocity& v);

// ---- dealiased nonlinearity -------------------------------------------------

/// P[div(u x u)] with the 3/2 rule: components are evaluated on the padded
/// grid, multiplied pointwise, transformed back and truncated, so retained
/// coefficients of the quadratic product are exact.
SpectralVelocity nonlinear_term(const SpectralVelocity& u, Workspace& ws);

// ---- norms -------------------------------------------------------------------

/// Parseval with torus normalization ||e^{i x_1}||_{L^2}^2 = (2 pi)^2.
double l2_norm_sq(const SpectralVelocity& u);
double l2_norm_sq(const ScalarField& f);
double l2_norm(const SpectralVelocity& u);

/// Homogeneous seminorm sum_xi |xi|^{2j} |uhat|^2 (times (2 pi)^2);
/// j = 1 is ||grad u||^2, j = 2 is ||Delta u||^2.
double h_seminorm_sq(const SpectralVelocity& u, int j);
double h_seminorm_sq(const ScalarField& f, int j);

/// W^{l,2} norm, sum_{j<=l} of the seminorms, l in {0,1,2,3}.
double sobolev_norm(const SpectralVelocity& u, int l);
double sobolev_norm_sq(const SpectralVelocity& u, int l);

/// Real L2 inner product.
double l2_inner(const SpectralVelocity& a, const SpectralVelocity& b);

// ---- field arithmetic ---------------------------------------------------------

SpectralVelocity add(const SpectralVelocity& a, const SpectralVelocity& b);
SpectralVelocity sub(const SpectralVelocity& a, const SpectralVelocity& b);
SpectralVelocity scaled(const SpectralVelocity& a, double factor);
/// 0.5 (a + b), the midpoint state.
SpectralVelocity midpoint(const SpectralVelocity& a, const SpectralVelocity& b);

// ---- constructors -------------------------------------------------------------

/// Taylor-Green vortex (sin x1 cos x2, -cos x1 sin x2); set exactly on the
/// four modes (+-1, +-1).
SpectralVelocity taylor_green(GridSpec grid);

/// Single divergence-free real mode amplitude * (xi_perp/|xi|) cos(xi . x).
SpectralVelocity single_mode(GridSpec grid, int k1, int k2, double amplitude);

/// Random divergence-free field with |a(xi)| ~ amplitude * |xi|^{-decay},
/// phases drawn deterministically from seed, Leray projected, Hermitian
/// symmetric, zero mean. decay > 4 keeps the W^{3,2} norm of the family
/// stable under refinement.
SpectralVelocity random_divfree_field(GridSpec grid, std::uint64_t seed, double decay,
                                      double amplitude);

// ---- diagnostics ----------------------------------------------------------------

/// max_xi |xi . uhat(xi)|, the worst modewise divergence residual.
double max_divergence(const SpectralVelocity& u);
/// |uhat(0)|, which every constructed field keeps exactly zero.
double mean_mode_magnitude(const SpectralVelocity& u);

}  // namespace sns
