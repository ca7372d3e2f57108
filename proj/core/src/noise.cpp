#include "sns/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sns/rng.hpp"

namespace sns {

namespace rng {
void box_muller(double u1, double u2, double& z0, double& z1) {
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(theta);
    z1 = r * std::sin(theta);
}
}  // namespace rng

double WienerPath::value_at_node(int k, int node) const {
    double w = 0.0;
    const auto& inc = increments.at(k);
    for (int m = 0; m < node; ++m) w += inc[m];
    return w;
}

WienerPath generate_path(std::uint64_t seed, int channels, int finest_steps, double horizon) {
    if (finest_steps < 1 || (finest_steps & (finest_steps - 1)) != 0)
        throw std::invalid_argument("generate_path: finest_steps must be a power of two");
    if (horizon <= 0.0) throw std::invalid_argument("generate_path: horizon must be positive");
    if (channels < 0) throw std::invalid_argument("generate_path: negative channel count");

    WienerPath path;
    path.channels = channels;
    path.finest_steps = finest_steps;
    path.horizon = horizon;
    path.dt_fine = horizon / finest_steps;
    path.seed = seed;
    path.increments.resize(channels);

    const double scale = std::sqrt(path.dt_fine);
    for (int k = 0; k < channels; ++k) {
        auto& inc = path.increments[k];
        inc.resize(finest_steps);
        rng::Stream st(rng::seed_split(seed, static_cast<std::uint64_t>(k)));
        for (int m = 0; m < finest_steps; m += 2) {
            double z0, z1;
            st.next_normal_pair(z0, z1);
            inc[m] = scale * z0;
            if (m + 1 < finest_steps) inc[m + 1] = scale * z1;
        }
    }
    return path;
}

std::vector<double> halve_increments(const std::vector<double>& fine) {
    std::vector<double> coarse(fine.size() / 2);
    for (size_t m = 0; m < coarse.size(); ++m) coarse[m] = fine[2 * m] + fine[2 * m + 1];
    return coarse;
}

std::vector<std::vector<double>> coarsen_increments(const WienerPath& path, int coarse_steps) {
    if (coarse_steps < 1 || path.finest_steps % coarse_steps != 0)
        throw std::invalid_argument("coarsen_increments: coarse level must divide finest level");
    std::vector<std::vector<double>> out(path.channels);
    for (int k = 0; k < path.channels; ++k) {
        std::vector<double> cur = path.increments[k];
        while (static_cast<int>(cur.size()) > coarse_steps) cur = halve_increments(cur);
        out[k] = std::move(cur);
    }
    return out;
}

}  // namespace sns
