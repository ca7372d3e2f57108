#pragma once

#include <cstdint>
#include <vector>

#include "sns/field.hpp"

namespace sns {

/// K constant transport directions sigma_k.
struct NoiseModel {
    std::vector<Vec2> sigmas;

    int channels() const { return static_cast<int>(sigmas.size()); }
};

/// Brownian increments of K independent channels at the finest dyadic level.
///
/// Coarser levels are produced by summing, never by refining, so every level
/// of a convergence study sees the same underlying path. All sums are dyadic
/// pairwise (repeated halving): coarsening to M and then to M/2 is the same
/// float operation sequence as coarsening straight to M/2, which makes the
/// cross-level consistency checks hold bit for bit.
struct WienerPath {
    int channels = 0;
    int finest_steps = 0;  // M_f, power of two
    double horizon = 0.0;  // T
    double dt_fine = 0.0;  // T / M_f
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> increments;  // [k][m], m < M_f

    /// W_k(t_j) at fine node j, a left-to-right prefix sum of the increments.
    double value_at_node(int k, int node) const;
};

/// Deterministic given seed; channel k draws from the substream
/// rng::seed_split(seed, k), so channel count changes never reshuffle
/// earlier channels.
WienerPath generate_path(std::uint64_t seed, int channels, int finest_steps, double horizon);

/// Sum fine increments to a coarser level. Requires coarse_steps to divide
/// finest_steps (both are powers of two, so the ratio is one as well).
std::vector<std::vector<double>> coarsen_increments(const WienerPath& path, int coarse_steps);

/// One halving pass, the primitive the coarsening is built from.
std::vector<double> halve_increments(const std::vector<double>& fine);

}  // namespace sns
