#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sns/field.hpp"

using namespace sns;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

SpectralVelocity gradient_of_sin_x1(GridSpec g) {
    // grad(sin x1) = (cos x1, 0): uhat_1(+-1, 0) = 1/2
    SpectralVelocity v(g);
    v.at(0, g.index_of(1), g.index_of(0)) = cplx(0.5, 0.0);
    v.at(0, g.index_of(-1), g.index_of(0)) = cplx(0.5, 0.0);
    return v;
}
}  // namespace

TEST_CASE("leray projection kills gradients") {
    const GridSpec g(16);
    const SpectralVelocity p = leray_project(gradient_of_sin_x1(g));
    CHECK(l2_norm(p) <= 1e-15);
}

TEST_CASE("leray projection fixes solenoidal modes") {
    const GridSpec g(16);
    SpectralVelocity v(g);
    // a e^{i xi.x} with xi = (2, 1), a = (1, -2)c: a . xi = 0
    const cplx c(0.3, -0.7);
    v.at(0, g.index_of(2), g.index_of(1)) = c;
    v.at(1, g.index_of(2), g.index_of(1)) = -2.0 * c;
    v.at(0, g.index_of(-2), g.index_of(-1)) = std::conj(c);
    v.at(1, g.index_of(-2), g.index_of(-1)) = std::conj(-2.0 * c);
    const SpectralVelocity p = leray_project(v);
    CHECK(l2_norm(sub(p, v)) <= 1e-15 * l2_norm(v));
}

TEST_CASE("leray projection of (sin(x1+x2), 0)") {
    // xi = (1,1), a = (c, 0) -> projected (c/2, -c/2)
    const GridSpec g(16);
    SpectralVelocity v(g);
    const cplx c(0.0, -0.5);  // sin: e^{i(x1+x2)}/(2i)
    v.at(0, g.index_of(1), g.index_of(1)) = c;
    v.at(0, g.index_of(-1), g.index_of(-1)) = std::conj(c);
    const SpectralVelocity p = leray_project(v);
    CHECK(std::abs(p.at(0, g.index_of(1), g.index_of(1)) - c / 2.0) <= 1e-15);
    CHECK(std::abs(p.at(1, g.index_of(1), g.index_of(1)) + c / 2.0) <= 1e-15);
    CHECK(max_divergence(p) <= 1e-15);
}

TEST_CASE("transport multiplies by i(sigma . xi)") {
    const GridSpec g(16);
    SpectralVelocity v(g);
    v.at(0, g.index_of(1), g.index_of(0)) = cplx(1.0, 0.0);

    SUBCASE("sigma = (1,0) on e^{i x1}") {
        const SpectralVelocity t = transport_apply(v, Vec2{1.0, 0.0});
        CHECK(t.at(0, g.index_of(1), g.index_of(0)) == cplx(0.0, 1.0));
    }
    SUBCASE("sigma = 0 gives the zero field") {
        const SpectralVelocity t = transport_apply(v, Vec2{0.0, 0.0});
        CHECK(l2_norm(t) == 0.0);
    }
    SUBCASE("sigma = (1,2), xi = (3,-1): multiplier i") {
        SpectralVelocity w(g);
        w.at(0, g.index_of(3), g.index_of(-1)) = cplx(2.0, 0.0);
        const SpectralVelocity t = transport_apply(w, Vec2{1.0, 2.0});
        CHECK(t.at(0, g.index_of(3), g.index_of(-1)) == cplx(0.0, 2.0));
    }
}

TEST_CASE("nonlinear term vanishes where it should") {
    const GridSpec g(16);
    Workspace ws(g);
    SUBCASE("zero field") {
        CHECK(l2_norm(nonlinear_term(SpectralVelocity(g), ws)) == 0.0);
    }
    SUBCASE("single solenoidal mode") {
        const SpectralVelocity u = single_mode(g, 2, 1, 1.3);
        CHECK(l2_norm(nonlinear_term(u, ws)) <= 1e-14);
    }
    SUBCASE("Taylor-Green: (grad u)u is a gradient") {
        const SpectralVelocity u = taylor_green(g);
        CHECK(l2_norm(nonlinear_term(u, ws)) <= 1e-14 * l2_norm(u));
    }
}

TEST_CASE("dealiased product matches direct convolution") {
    const GridSpec g(16);
    Workspace ws(g);
    for (std::uint64_t seed : {3u, 17u}) {
        const SpectralVelocity u = random_divfree_field(g, seed, 4.5, 1.0);
        const SpectralVelocity ref = leray_project(oracle::brute_force_divuu(u));
        const SpectralVelocity fft = nonlinear_term(u, ws);
        CHECK(l2_norm(sub(ref, fft)) <= 1e-13 * std::max(1.0, l2_norm(ref)));
    }
}

TEST_CASE("laplacian family") {
    const GridSpec g(16);
    SUBCASE("laplacian of e^{i x1} is -e^{i x1}") {
        SpectralVelocity v(g);
        v.at(0, g.index_of(1), g.index_of(0)) = cplx(1.0, 0.0);
        const SpectralVelocity l = laplacian(v);
        CHECK(l.at(0, g.index_of(1), g.index_of(0)) == cplx(-1.0, 0.0));
    }
    SUBCASE("inverse_laplacian inverts laplacian on zero-mean fields") {
        ScalarField f(g);
        f.at(g.index_of(2), g.index_of(-3)) = cplx(0.7, 0.1);
        f.at(g.index_of(-2), g.index_of(3)) = cplx(0.7, -0.1);
        const ScalarField back = inverse_laplacian(laplacian(f));
        double worst = 0.0;
        for (size_t i = 0; i < f.coeffs.size(); ++i)
            worst = std::max(worst, std::abs(back.coeffs[i] - f.coeffs[i]));
        CHECK(worst <= 1e-15);
    }
    SUBCASE("inverse_laplacian rejects a nonzero mean mode") {
        ScalarField f(g);
        f.at(0, 0) = cplx(1.0, 0.0);
        CHECK_THROWS_AS(inverse_laplacian(f), std::invalid_argument);
    }
    SUBCASE("divergence of a projected field vanishes") {
        SpectralVelocity raw(g);
        raw.at(0, g.index_of(1), g.index_of(2)) = cplx(1.0, 0.5);
        raw.at(1, g.index_of(1), g.index_of(2)) = cplx(-0.3, 0.2);
        raw.at(0, g.index_of(-1), g.index_of(-2)) = cplx(1.0, -0.5);
        raw.at(1, g.index_of(-1), g.index_of(-2)) = cplx(-0.3, -0.2);
        const ScalarField d = divergence(leray_project(raw));
        CHECK(std::sqrt(l2_norm_sq(d)) <= 1e-14);
    }
}

TEST_CASE("sobolev norms") {
    const GridSpec g(32);
    SUBCASE("zero field") {
        CHECK(sobolev_norm(SpectralVelocity(g), 3) == 0.0);
    }
    SUBCASE("normalization: || e^{i x1} ||^2 = (2 pi)^2") {
        SpectralVelocity v(g);
        v.at(0, g.index_of(1), g.index_of(0)) = cplx(1.0, 0.0);
        CHECK(l2_norm_sq(v) == Approx(4.0 * kPi * kPi).epsilon(1e-14));
    }
    SUBCASE("gradient seminorm of a single mode is |xi|^2 ||u||^2") {
        const SpectralVelocity u = single_mode(g, 3, 4, 0.8);  // |xi|^2 = 25
        CHECK(h_seminorm_sq(u, 1) == Approx(25.0 * l2_norm_sq(u)).epsilon(1e-13));
    }
    SUBCASE("matches physical quadrature on random fields") {
        Workspace ws(g);
        const SpectralVelocity u = random_divfree_field(g, 99, 5.0, 1.0);
        const double quad = oracle::quadrature_l2_sq(u, ws);
        CHECK(l2_norm_sq(u) == Approx(quad).epsilon(1e-10));
    }
    SUBCASE("unsupported order") {
        const SpectralVelocity u = taylor_green(g);
        CHECK_THROWS_AS(sobolev_norm(u, 4), std::invalid_argument);
        CHECK_THROWS_AS(sobolev_norm(u, -1), std::invalid_argument);
    }
}

TEST_CASE("taylor_green is the expected exact field") {
    const GridSpec g(16);
    Workspace ws(g);
    const SpectralVelocity u = taylor_green(g);
    CHECK(max_divergence(u) == 0.0);
    CHECK(l2_norm_sq(u) == Approx(2.0 * kPi * kPi).epsilon(1e-14));
    // physical check at a few points: u1 = sin x1 cos x2
    std::vector<cplx> phys;
    ws.eval_grid(u.comp[0], phys);
    const int n = g.modes_per_dim;
    const double h = 2.0 * kPi / n;
    for (int i : {1, 5, 11})
        for (int j : {0, 7}) {
            const double expect = std::sin(i * h) * std::cos(j * h);
            CHECK(phys[static_cast<size_t>(i) * n + j].real() == Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("random_divfree_field contract") {
    const GridSpec g(32);
    SUBCASE("deterministic given seed") {
        const SpectralVelocity a = random_divfree_field(g, 1234, 5.0, 0.5);
        const SpectralVelocity b = random_divfree_field(g, 1234, 5.0, 0.5);
        for (int c = 0; c < 2; ++c)
            for (size_t i = 0; i < a.comp[c].size(); ++i)
                CHECK(a.comp[c][i] == b.comp[c][i]);
    }
    SUBCASE("divergence free, zero mean, Hermitian") {
        const SpectralVelocity u = random_divfree_field(g, 2024, 5.0, 1.0);
        CHECK(max_divergence(u) <= 1e-15 * l2_norm(u));
        CHECK(mean_mode_magnitude(u) == 0.0);
        CHECK(oracle::hermitian_defect(u) <= 1e-15);
    }
    SUBCASE("W^{3,2} norm stable under grid refinement") {
        const double n32 = sobolev_norm(random_divfree_field(GridSpec(32), 5, 5.0, 1.0), 3);
        const double n64 = sobolev_norm(random_divfree_field(GridSpec(64), 5, 5.0, 1.0), 3);
        const double n128 = sobolev_norm(random_divfree_field(GridSpec(128), 5, 5.0, 1.0), 3);
        CHECK(n64 == Approx(n32).epsilon(0.05));
        CHECK(n128 == Approx(n64).epsilon(0.05));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(random_divfree_field(g, 1, 4.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(random_divfree_field(g, 1, 5.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("projector and transport properties over random fields") {
    const GridSpec g(16);
    Workspace ws(g);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        // non-solenoidal input: solenoidal + gradient of a random scalar
        SpectralVelocity raw = random_divfree_field(g, seed, 4.5, 1.0);
        {
            const SpectralVelocity extra = random_divfree_field(g, seed + 100, 4.5, 1.0);
            const int n = g.modes_per_dim;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    // rotate the extra field into a gradient: i xi phi
                    const cplx phi = extra.at(0, i, j);
                    raw.at(0, i, j) += cplx(0.0, g.wavenumber(i)) * phi;
                    raw.at(1, i, j) += cplx(0.0, g.wavenumber(j)) * phi;
                }
        }
        const SpectralVelocity p = leray_project(raw);
        const SpectralVelocity pp = leray_project(p);
        CHECK(l2_norm(sub(pp, p)) <= 1e-12 * l2_norm(p));
        CHECK(max_divergence(p) <= 1e-13 * l2_norm(p));

        const SpectralVelocity divfree = random_divfree_field(g, seed + 200, 4.5, 1.0);
        const SpectralVelocity resid = sub(raw, p);
        CHECK(std::abs(l2_inner(resid, divfree)) <=
              1e-12 * l2_norm(resid) * l2_norm(divfree));

        const Vec2 sigma{0.3 * seed, 1.0 - 0.1 * seed};
        const SpectralVelocity t = transport_apply(divfree, sigma);
        CHECK(std::abs(l2_inner(t, divfree)) <= 1e-12 * l2_norm(t) * l2_norm(divfree));
        CHECK(max_divergence(t) <= 1e-13 * l2_norm(t));
    }
}

TEST_CASE("nonlinearity is energy and enstrophy neutral") {
    const GridSpec g(32);
    Workspace ws(g);
    for (std::uint64_t seed : {2u, 9u, 31u}) {
        const SpectralVelocity u = random_divfree_field(g, seed, 5.0, 1.0);
        const SpectralVelocity nl = nonlinear_term(u, ws);
        CHECK(std::abs(l2_inner(nl, u)) <= 1e-10 * l2_norm(nl) * l2_norm(u));
        const SpectralVelocity lap = laplacian(u);
        CHECK(std::abs(l2_inner(nl, lap)) <= 1e-10 * l2_norm(nl) * l2_norm(lap));
    }
}

TEST_CASE("spectral-physical round trip") {
    const GridSpec g(16);
    Workspace ws(g);
    const SpectralVelocity u = random_divfree_field(g, 77, 4.5, 1.0);
    std::vector<cplx> phys, back;
    for (int c = 0; c < 2; ++c) {
        ws.eval_grid(u.comp[c], phys);
        ws.coeffs_from_grid(phys, back);
        double diff = 0.0, ref = 0.0;
        for (size_t i = 0; i < back.size(); ++i) {
            diff += std::norm(back[i] - u.comp[c][i]);
            ref += std::norm(u.comp[c][i]);
        }
        CHECK(std::sqrt(diff) <= 1e-12 * std::sqrt(ref));
    }
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec(3), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(7), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(2), std::invalid_argument);
    const GridSpec g(64);
    CHECK(g.padded_modes == 96);
    CHECK(g.wavenumber(g.index_of(-31)) == -31);
    CHECK(g.wavenumber(63) == -1);
}
