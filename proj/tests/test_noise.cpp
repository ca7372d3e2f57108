#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sns/noise.hpp"
#include "sns/rng.hpp"

using namespace sns;
using doctest::Approx;

namespace {

// Tree sum by repeated halving, the path's documented summation order.
double tree_sum(std::vector<double> v) {
    while (v.size() > 1) v = halve_increments(v);
    return v[0];
}

}  // namespace

TEST_CASE("generate_path is deterministic and validates input") {
    const WienerPath a = generate_path(42, 2, 1 << 8, 0.5);
    const WienerPath b = generate_path(42, 2, 1 << 8, 0.5);
    for (int k = 0; k < 2; ++k)
        for (int m = 0; m < a.finest_steps; ++m)
            CHECK(a.increments[k][m] == b.increments[k][m]);

    CHECK_THROWS_AS(generate_path(42, 2, 100, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(generate_path(42, 2, 1 << 8, -1.0), std::invalid_argument);
}

TEST_CASE("channel streams do not reshuffle when K grows") {
    const WienerPath two = generate_path(7, 2, 1 << 6, 1.0);
    const WienerPath four = generate_path(7, 4, 1 << 6, 1.0);
    for (int k = 0; k < 2; ++k)
        for (int m = 0; m < two.finest_steps; ++m)
            CHECK(two.increments[k][m] == four.increments[k][m]);
}

TEST_CASE("law of large numbers at the finest level") {
    const int n = 1 << 16;
    const double T = 0.5;
    const WienerPath p = generate_path(2024, 2, n, T);
    const double dt = p.dt_fine;
    for (int k = 0; k < 2; ++k) {
        double mean = 0.0;
        for (double x : p.increments[k]) mean += x;
        mean /= n;
        // sample mean of N(0, dt): sd = sqrt(dt/n)
        CHECK(std::abs(mean) <= 4.0 * std::sqrt(dt / n));
        double var = 0.0;
        for (double x : p.increments[k]) var += (x - mean) * (x - mean);
        var /= (n - 1);
        CHECK(var == Approx(dt).epsilon(0.05));
    }
    // cross-channel correlation
    double c01 = 0.0;
    for (int m = 0; m < n; ++m) c01 += p.increments[0][m] * p.increments[1][m];
    c01 /= (n - 1) * dt;
    CHECK(std::abs(c01) < 0.05);
}

TEST_CASE("coarsening sums adjacent increments") {
    WienerPath p;
    p.channels = 1;
    p.finest_steps = 4;
    p.horizon = 1.0;
    p.dt_fine = 0.25;
    p.increments = {{0.1, -0.2, 0.35, 0.05}};

    SUBCASE("halving") {
        const auto c = coarsen_increments(p, 2);
        CHECK(c[0][0] == 0.1 + -0.2);
        CHECK(c[0][1] == 0.35 + 0.05);
    }
    SUBCASE("identity at the same level") {
        const auto c = coarsen_increments(p, 4);
        for (int m = 0; m < 4; ++m) CHECK(c[0][m] == p.increments[0][m]);
    }
    SUBCASE("level must divide") {
        CHECK_THROWS_AS(coarsen_increments(p, 3), std::invalid_argument);
        CHECK_THROWS_AS(coarsen_increments(p, 8), std::invalid_argument);
    }
}

TEST_CASE("summation order makes totals identical across levels") {
    const WienerPath p = generate_path(99, 2, 1 << 12, 2.0);
    for (int k = 0; k < p.channels; ++k) {
        const double total = tree_sum(p.increments[k]);
        for (int level = 1 << 4; level <= 1 << 12; level *= 2) {
            const auto c = coarsen_increments(p, level);
            CHECK(tree_sum(c[k]) == total);  // bit for bit
        }
    }
}

TEST_CASE("coarsening consistency across three levels") {
    const WienerPath p = generate_path(5, 3, 1 << 10, 0.5);
    const auto to64 = coarsen_increments(p, 64);
    const auto to32_direct = coarsen_increments(p, 32);
    for (int k = 0; k < p.channels; ++k) {
        const auto to32_via = halve_increments(to64[k]);
        REQUIRE(to32_via.size() == to32_direct[k].size());
        for (size_t m = 0; m < to32_via.size(); ++m)
            CHECK(to32_via[m] == to32_direct[k][m]);  // bit for bit
    }
}

TEST_CASE("value_at_node is the prefix sum") {
    const WienerPath p = generate_path(31, 1, 1 << 4, 1.0);
    double acc = 0.0;
    CHECK(p.value_at_node(0, 0) == 0.0);
    for (int m = 0; m < p.finest_steps; ++m) {
        acc += p.increments[0][m];
        CHECK(p.value_at_node(0, m + 1) == acc);
    }
}

TEST_CASE("normalized increments pass a KS normality test") {
    const int n = 1 << 16;
    const WienerPath p = generate_path(0x5EEDBA5E, 1, n, 0.5);
    std::vector<double> z = p.increments[0];
    const double s = 1.0 / std::sqrt(p.dt_fine);
    for (double& v : z) v *= s;
    std::sort(z.begin(), z.end());
    double d = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        const double f = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    CHECK(d < 1.63 / std::sqrt(static_cast<double>(n)));  // 1% critical value
}

TEST_CASE("seed_split separates streams") {
    CHECK(rng::seed_split(1, 0) != rng::seed_split(1, 1));
    CHECK(rng::seed_split(1, 0) != rng::seed_split(2, 0));
    rng::Stream s(rng::seed_split(1, 0));
    double z0, z1;
    s.next_normal_pair(z0, z1);
    CHECK(std::isfinite(z0));
    CHECK(std::isfinite(z1));
}
