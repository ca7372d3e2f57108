#include "sns/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

#include "sns/io.hpp"
#include "sns/pressure.hpp"
#include "sns/rng.hpp"

namespace sns {

namespace {
// Seed-split tags (documented): sample paths and the random part of the
// initial datum live in disjoint substream families of master_seed.
constexpr std::uint64_t kSampleTagBase = 0x100000000ULL;
constexpr std::uint64_t kU0Tag = 0x75300001ULL;

std::uint64_t sample_seed(std::uint64_t master, int sample) {
    return rng::seed_split(master, kSampleTagBase + static_cast<std::uint64_t>(sample));
}
}  // namespace

void StudyConfig::validate() const {
    [[maybe_unused]] const GridSpec grid_check(grid_n);  // throws on bad N
    scheme_config().validate();
    if (levels.size() < 3)
        throw std::invalid_argument("StudyConfig: need at least three levels to fit an order");
    int max_level = 0;
    for (int m : levels) {
        if (m < 1) throw std::invalid_argument("StudyConfig: level < 1");
        if (reference_steps % m != 0)
            throw std::invalid_argument("StudyConfig: level " + std::to_string(m) +
                                        " does not divide reference_steps");
        max_level = std::max(max_level, m);
    }
    if (reference_steps < 16 * max_level)
        throw std::invalid_argument("StudyConfig: reference_steps must be >= 16 * max(levels)");
    if (reference_steps < 1 || (reference_steps & (reference_steps - 1)) != 0)
        throw std::invalid_argument("StudyConfig: reference_steps must be a power of two");
    if (samples < 8) throw std::invalid_argument("StudyConfig: samples must be >= 8");
    if (reference == Reference::exact_single_mode && u0.kind != U0Spec::Kind::single_mode)
        throw std::invalid_argument(
            "StudyConfig: exact reference requires single-mode initial data");
}

SpectralVelocity build_u0(const StudyConfig& cfg) {
    const GridSpec grid(cfg.grid_n);
    const std::uint64_t u0_seed = rng::seed_split(cfg.master_seed, kU0Tag);
    switch (cfg.u0.kind) {
        case U0Spec::Kind::taylor_green:
            return taylor_green(grid);
        case U0Spec::Kind::random:
            return random_divfree_field(grid, u0_seed, cfg.u0.decay, cfg.u0.amplitude);
        case U0Spec::Kind::taylor_green_plus_random:
            return add(taylor_green(grid),
                       random_divfree_field(grid, u0_seed, cfg.u0.decay, cfg.u0.amplitude));
        case U0Spec::Kind::single_mode:
            return single_mode(grid, cfg.u0.k1, cfg.u0.k2, cfg.u0.mode_amplitude);
        case U0Spec::Kind::snapshot: {
            SpectralVelocity u = load_snapshot(cfg.u0.snapshot_path);
            if (u.grid.modes_per_dim != cfg.grid_n)
                throw std::invalid_argument("u0 snapshot grid N=" +
                                            std::to_string(u.grid.modes_per_dim) +
                                            " does not match configured N=" +
                                            std::to_string(cfg.grid_n));
            return u;
        }
    }
    throw std::logic_error("build_u0: unreachable");
}

namespace {

struct SampleResult {
    // [level index] -> functional value / per-step ||e_m||^2
    std::vector<double> totals;
    std::vector<std::vector<double>> sq_errs;
};

// W_k at all fine nodes, prefix-summed once per sample.
std::vector<std::vector<double>> node_values(const WienerPath& path) {
    std::vector<std::vector<double>> w(path.channels);
    for (int k = 0; k < path.channels; ++k) {
        w[k].resize(path.finest_steps + 1);
        w[k][0] = 0.0;
        for (int m = 0; m < path.finest_steps; ++m) w[k][m + 1] = w[k][m] + path.increments[k][m];
    }
    return w;
}

SampleResult run_sample(const StudyConfig& cfg, const SpectralVelocity& u0, int sample,
                        Workspace& ws, int* failing_level) {
    const int max_level = *std::max_element(cfg.levels.begin(), cfg.levels.end());
    const WienerPath path =
        generate_path(sample_seed(cfg.master_seed, sample), cfg.noise.channels(),
                      cfg.reference_steps, cfg.horizon);

    SampleResult result;
    result.totals.resize(cfg.levels.size());
    result.sq_errs.resize(cfg.levels.size());

    SchemeConfig base = cfg.scheme_config();

    if (cfg.reference == StudyConfig::Reference::scheme) {
        // Reference at M_f, keeping only the states on the finest measured
        // grid (all level grids are nested in it).
        const int ref_stride = cfg.reference_steps / max_level;
        std::vector<SpectralVelocity> ref_states(max_level + 1);
        *failing_level = cfg.reference_steps;
        run_trajectory_observed(
            u0, path, cfg.noise, base.with_steps(cfg.reference_steps), ws,
            [&](int m, const SpectralVelocity& s) {
                if (m % ref_stride == 0) ref_states[m / ref_stride] = s;
            },
            nullptr);

        for (size_t li = 0; li < cfg.levels.size(); ++li) {
            const int level = cfg.levels[li];
            const int stride = max_level / level;
            *failing_level = level;
            ErrorAccumulator acc(level, cfg.horizon / level);
            run_trajectory_observed(
                u0, path, cfg.noise, base.with_steps(level), ws,
                [&](int m, const SpectralVelocity& s) {
                    if (m >= 1) acc.add(ref_states[static_cast<size_t>(m) * stride], s);
                },
                nullptr);
            const ErrorSample es = acc.finish();
            result.totals[li] = es.total();
            result.sq_errs[li] = acc.sq_errors();
        }
    } else {
        const auto W = node_values(path);
        const GridSpec grid(cfg.grid_n);
        const cplx a1 = u0.at(0, grid.index_of(cfg.u0.k1), grid.index_of(cfg.u0.k2));
        const cplx a2 = u0.at(1, grid.index_of(cfg.u0.k1), grid.index_of(cfg.u0.k2));
        std::vector<double> Wt(cfg.noise.channels());
        for (size_t li = 0; li < cfg.levels.size(); ++li) {
            const int level = cfg.levels[li];
            const int node_stride = cfg.reference_steps / level;
            const double dt = cfg.horizon / level;
            *failing_level = level;
            ErrorAccumulator acc(level, dt);
            run_trajectory_observed(
                u0, path, cfg.noise, base.with_steps(level), ws,
                [&](int m, const SpectralVelocity& s) {
                    if (m < 1) return;
                    for (int k = 0; k < cfg.noise.channels(); ++k)
                        Wt[k] = W[k][static_cast<size_t>(m) * node_stride];
                    const SpectralVelocity exact = single_mode_exact(
                        grid, a1, a2, cfg.u0.k1, cfg.u0.k2, m * dt, Wt, cfg.mu, cfg.noise);
                    acc.add(exact, s);
                },
                nullptr);
            const ErrorSample es = acc.finish();
            result.totals[li] = es.total();
            result.sq_errs[li] = acc.sq_errors();
        }
    }
    return result;
}

}  // namespace

ErrorReport convergence_study(const StudyConfig& cfg) {
    cfg.validate();
    const GridSpec grid(cfg.grid_n);
    const SpectralVelocity u0 = build_u0(cfg);

    std::vector<SampleResult> results(cfg.samples);
    std::atomic<int> next{0};
    std::atomic<bool> abort{false};
    std::mutex failure_mutex;
    std::optional<NonConvergence> failure;
    int failure_sample = -1;

    int nthreads = cfg.threads > 0 ? cfg.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, cfg.samples);

    auto worker = [&]() {
        Workspace ws(grid);
        while (true) {
            const int s = next.fetch_add(1);
            if (s >= cfg.samples || abort.load()) break;
            int failing_level = -1;
            try {
                results[s] = run_sample(cfg, u0, s, ws, &failing_level);
            } catch (NonConvergence& nc) {
                nc.sample = s;
                nc.level = failing_level;
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure_sample < 0 || s < failure_sample) {
                    failure = nc;
                    failure_sample = s;
                }
                abort.store(true);
            }
        }
    };

    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) throw *failure;

    ErrorReport report;
    report.samples = cfg.samples;
    report.master_seed = cfg.master_seed;
    report.levels.resize(cfg.levels.size());
    std::vector<double> dts, means;
    for (size_t li = 0; li < cfg.levels.size(); ++li) {
        LevelStats& ls = report.levels[li];
        ls.level = cfg.levels[li];
        ls.dt = cfg.horizon / cfg.levels[li];
        ls.samples = cfg.samples;
        ls.totals.resize(cfg.samples);
        for (int s = 0; s < cfg.samples; ++s) ls.totals[s] = results[s].totals[li];
        double sum = 0.0;
        for (int s = 0; s < cfg.samples; ++s) sum += results[s].totals[li];
        ls.mse_mean = sum / cfg.samples;
        double var = 0.0;
        for (int s = 0; s < cfg.samples; ++s) {
            const double d = results[s].totals[li] - ls.mse_mean;
            var += d * d;
        }
        var /= (cfg.samples - 1);
        ls.mse_stderr = std::sqrt(var / cfg.samples);
        // max_m of the per-step sample mean of ||e_m||^2
        const size_t steps = results[0].sq_errs[li].size();
        double max_mean = 0.0;
        for (size_t m = 0; m < steps; ++m) {
            double s = 0.0;
            for (int smp = 0; smp < cfg.samples; ++smp) s += results[smp].sq_errs[li][m];
            max_mean = std::max(max_mean, s / cfg.samples);
        }
        ls.max_mean_sq = max_mean;
        dts.push_back(ls.dt);
        means.push_back(ls.mse_mean);
    }
    report.alpha_fit = fit_order(dts, means);
    return report;
}

// ---- validation suite ---------------------------------------------------------

namespace {

void check(ValidationReport& rep, const std::string& name, double measured, double tolerance,
           const std::string& note = "") {
    rep.checks.push_back({name, measured, tolerance, measured <= tolerance, false, false, note});
}

void skip(ValidationReport& rep, const std::string& name, const std::string& note) {
    rep.checks.push_back({name, 0.0, 0.0, true, true, false, note});
}

void info(ValidationReport& rep, const std::string& name, double measured,
          const std::string& note) {
    rep.checks.push_back({name, measured, 0.0, true, false, true, note});
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// One-sample Kolmogorov-Smirnov statistic against the standard normal.
double ks_statistic(std::vector<double> z) {
    std::sort(z.begin(), z.end());
    const double n = static_cast<double>(z.size());
    double d = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        const double f = normal_cdf(z[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

}  // namespace

ValidationReport validate_suite(const StudyConfig& cfg) {
    ValidationReport rep;
    const GridSpec grid(cfg.grid_n);
    Workspace ws(grid);
    const bool has_noise = cfg.noise.channels() > 0;
    const std::uint64_t vseed = 0x5EEDBA5Eu;

    // --- field invariants, on a random solenoidal field plus a gradient part.
    {
        const SpectralVelocity udiv = random_divfree_field(grid, vseed, 5.0, 1.0);
        // raw = solenoidal + gradient: grad phi has modes i xi phihat
        SpectralVelocity raw = udiv;
        {
            const ScalarField phi = pressure_det(udiv, ws);  // any nonzero scalar field
            const int n = grid.modes_per_dim;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const cplx g = phi.at(i, j);
                    raw.at(0, i, j) += cplx(0.0, grid.wavenumber(i)) * g;
                    raw.at(1, i, j) += cplx(0.0, grid.wavenumber(j)) * g;
                }
        }
        const SpectralVelocity p1 = leray_project(raw);
        const SpectralVelocity p2 = leray_project(p1);
        check(rep, "field.projector_idempotent",
              l2_norm(sub(p2, p1)) / std::max(1e-300, l2_norm(p1)), 1e-12);

        const SpectralVelocity resid = sub(raw, p1);
        check(rep, "field.projector_orthogonal",
              std::abs(l2_inner(resid, udiv)) /
                  std::max(1e-300, l2_norm(resid) * l2_norm(udiv)),
              1e-12);

        if (has_noise) {
            double worst = 0.0;
            for (const Vec2& s : cfg.noise.sigmas) {
                const SpectralVelocity tu = transport_apply(udiv, s);
                worst = std::max(worst, std::abs(l2_inner(tu, udiv)) /
                                            std::max(1e-300, l2_norm(tu) * l2_norm(udiv)));
            }
            check(rep, "field.transport_energy_neutral", worst, 1e-12);
        } else {
            skip(rep, "field.transport_energy_neutral", "K = 0");
        }

        const SpectralVelocity nl = nonlinear_term(udiv, ws);
        check(rep, "field.nonlinear_energy_neutral",
              std::abs(l2_inner(nl, udiv)) / std::max(1e-300, l2_norm(nl) * l2_norm(udiv)),
              1e-10);
        const SpectralVelocity lap = laplacian(udiv);
        check(rep, "field.nonlinear_enstrophy_neutral",
              std::abs(l2_inner(nl, lap)) / std::max(1e-300, l2_norm(nl) * l2_norm(lap)),
              1e-10);

        std::vector<cplx> phys, back;
        ws.eval_grid(udiv.comp[0], phys);
        ws.coeffs_from_grid(phys, back);
        double diff = 0.0, ref = 0.0;
        for (size_t i = 0; i < back.size(); ++i) {
            diff += std::norm(back[i] - udiv.comp[0][i]);
            ref += std::norm(udiv.comp[0][i]);
        }
        check(rep, "field.fft_round_trip", std::sqrt(diff / ref), 1e-12);
    }

    // --- noise invariants.
    if (has_noise) {
        const WienerPath path = generate_path(vseed, cfg.noise.channels(), 1 << 12, cfg.horizon);
        const auto via64 = coarsen_increments(path, 64);
        const auto direct32 = coarsen_increments(path, 32);
        double worst = 0.0;
        for (int k = 0; k < path.channels; ++k) {
            const auto via32 = halve_increments(via64[k]);
            for (size_t m = 0; m < via32.size(); ++m)
                worst = std::max(worst, std::abs(via32[m] - direct32[k][m]));
        }
        check(rep, "noise.coarsen_consistency", worst, 0.0, "bit-for-bit");

        const int n = 1 << 16;
        const WienerPath big = generate_path(vseed, 1, n, cfg.horizon);
        std::vector<double> z(big.increments[0]);
        const double scale = 1.0 / std::sqrt(big.dt_fine);
        for (double& v : z) v *= scale;
        const double d = ks_statistic(std::move(z));
        check(rep, "noise.increment_distribution", d, 1.63 / std::sqrt(static_cast<double>(n)),
              "KS vs N(0,1), 1% critical value");
    } else {
        skip(rep, "noise.coarsen_consistency", "K = 0");
        skip(rep, "noise.increment_distribution", "K = 0");
    }

    // --- scheme invariants. M = 64 keeps the fixed-point truncation visible:
    // at this step size a loosened fp_tol breaks the 1e-9 identity budget,
    // while the default fp_tol passes it by six orders of magnitude.
    {
        StudyConfig base = cfg;
        base.u0.kind = U0Spec::Kind::taylor_green_plus_random;
        const SpectralVelocity u0 = build_u0(base);
        SchemeConfig sc = cfg.scheme_config();
        sc.steps = 64;
        const WienerPath path = generate_path(rng::seed_split(cfg.master_seed, 7),
                                              cfg.noise.channels(), 64, cfg.horizon);
        const double e0 = 0.5 * l2_norm_sq(u0);
        const double h0 = 0.5 * h_seminorm_sq(u0, 1);
        double max_divres = 0.0, max_zero = 0.0;
        StepLedger ledger;
        run_trajectory_observed(
            u0, path, cfg.noise, sc, ws,
            [&](int, const SpectralVelocity& s) {
                max_divres = std::max(max_divres, max_divergence(s) / std::max(1e-300, l2_norm(s)));
                max_zero = std::max(max_zero, mean_mode_magnitude(s));
            },
            &ledger);
        check(rep, "scheme.energy_identity_step", ledger.max_abs_energy_defect() / e0, 1e-9);
        check(rep, "scheme.energy_identity_cumulative",
              std::abs(ledger.cumulative_energy_defect()) / e0, 1e-7);
        check(rep, "scheme.h1_identity_step", ledger.max_abs_h1_defect() / h0, 1e-8);
        check(rep, "scheme.divergence_free", max_divres, 1e-12);
        check(rep, "scheme.zero_mean", max_zero, 0.0, "exact");

        // determinism: identical runs produce identical states bit for bit
        SchemeConfig sd = cfg.scheme_config();
        sd.steps = 64;
        const Trajectory t1 = run_trajectory(u0, path, cfg.noise, sd, ws);
        const Trajectory t2 = run_trajectory(u0, path, cfg.noise, sd, ws);
        double worst = 0.0;
        for (int m = 0; m <= sd.steps; ++m)
            for (int c = 0; c < 2; ++c)
                for (size_t i = 0; i < t1.states[m].comp[c].size(); ++i)
                    worst = std::max(worst, std::abs(t1.states[m].comp[c][i] -
                                                     t2.states[m].comp[c][i]));
        check(rep, "scheme.determinism", worst, 0.0, "bit-for-bit");
    }

    // --- uniform-in-dt stability of higher norms across levels.
    {
        const GridSpec g32(32);
        Workspace ws32(g32);
        StudyConfig small = cfg;
        small.grid_n = 32;
        small.u0.kind = U0Spec::Kind::taylor_green_plus_random;
        const SpectralVelocity u0 = build_u0(small);
        SchemeConfig sc = cfg.scheme_config();
        sc.horizon = 0.25;
        const WienerPath path = generate_path(rng::seed_split(cfg.master_seed, 8),
                                              cfg.noise.channels(), 1024, sc.horizon);
        std::vector<double> stats;
        for (int level = 64; level <= 1024; level *= 2) {
            double w3 = 0.0;
            run_trajectory_observed(
                u0, path, cfg.noise, sc.with_steps(level), ws32,
                [&](int m, const SpectralVelocity& s) {
                    if (m >= 1) w3 = std::max(w3, sobolev_norm(s, 3));
                },
                nullptr);
            stats.push_back(w3);
        }
        const double lo = *std::min_element(stats.begin(), stats.end());
        const double hi = *std::max_element(stats.begin(), stats.end());
        check(rep, "scheme.sobolev_stability", hi / lo - 1.0, 0.05,
              "max_m ||u_m||_{W^{3,2}} spread across M in {2^6..2^10}");
    }

    // --- pressure invariants.
    {
        const SpectralVelocity v = random_divfree_field(grid, vseed + 1, 5.0, 1.0);
        const ScalarField q = pressure_det(v, ws);

        // Recompute div div(v x v) through the unprojected product route.
        const int n = grid.modes_per_dim;
        const size_t psize = static_cast<size_t>(grid.padded_size());
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

        double resid_sq = 0.0, ref_sq = 0.0, leray_sq = 0.0, nl_sq = 0.0;
        const SpectralVelocity nl = nonlinear_term(v, ws);
        for (int i = 0; i < n; ++i) {
            const int k1 = grid.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const int k2 = grid.wavenumber(j);
                if ((k1 == 0 && k2 == 0) || k1 == -n / 2 || k2 == -n / 2) continue;
                const size_t idx = static_cast<size_t>(i) * n + j;
                const double kk1 = k1, kk2 = k2;
                const double ksq = kk1 * kk1 + kk2 * kk2;
                const cplx divdiv = -(kk1 * kk1 * that11[idx] + 2.0 * kk1 * kk2 * that12[idx] +
                                      kk2 * kk2 * that22[idx]);
                // lap q = -div div(v x v)
                const cplx r = -ksq * q.coeffs[idx] + divdiv;
                resid_sq += std::norm(r);
                ref_sq += std::norm(divdiv);
                // Leray consistency: nl = div(v x v) + grad q, modewise
                const cplx w1 = cplx(0.0, kk1) * that11[idx] + cplx(0.0, kk2) * that12[idx];
                const cplx w2 = cplx(0.0, kk1) * that12[idx] + cplx(0.0, kk2) * that22[idx];
                const cplx l1 = nl.at(0, i, j) - (w1 + cplx(0.0, kk1) * q.coeffs[idx]);
                const cplx l2 = nl.at(1, i, j) - (w2 + cplx(0.0, kk2) * q.coeffs[idx]);
                leray_sq += std::norm(l1) + std::norm(l2);
                nl_sq += std::norm(nl.at(0, i, j)) + std::norm(nl.at(1, i, j));
            }
        }
        check(rep, "pressure.det_residual", std::sqrt(resid_sq / ref_sq), 1e-10);
        check(rep, "pressure.leray_consistency", std::sqrt(leray_sq / nl_sq), 1e-10);

        if (has_noise) {
            double worst = 0.0;
            const double vnorm = l2_norm(v);
            for (const Vec2& s : cfg.noise.sigmas) {
                worst = std::max(worst, l2_norm(pressure_ito(v, s)) / vnorm);
                worst = std::max(worst, l2_norm(pressure_cor(v, s)) / vnorm);
            }
            check(rep, "pressure.stochastic_vanishing", worst, 1e-12);
        } else {
            skip(rep, "pressure.stochastic_vanishing", "K = 0");
        }
    }

    // --- analysis invariants.
    {
        const GridSpec g8(8);
        auto mini = [&](std::uint64_t seed) {
            Trajectory t;
            t.steps = 4;
            t.dt = 0.1;
            for (int m = 0; m <= 4; ++m)
                t.states.push_back(random_divfree_field(g8, seed + m, 5.0, 1.0));
            return t;
        };
        const Trajectory A = mini(11), B = mini(22), C = mini(33);
        const double ab = error_functional(A, B).total();
        const double bc = error_functional(B, C).total();
        const double ac = error_functional(A, C).total();
        const double ba = error_functional(B, A).total();
        double measured = std::max(ac - 2.0 * ab - 2.0 * bc, 0.0);
        measured = std::max(measured, std::abs(ab - ba));
        check(rep, "analysis.error_functional_triangle", measured, 1e-12,
              "symmetry and quadratic triangle bound");

        const std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
        std::vector<double> mse1, mse2;
        for (double d : dts) {
            mse1.push_back(d);
            mse2.push_back(d * d);
        }
        const double a1 = std::abs(fit_order(dts, mse1) - 0.5);
        const double a2 = std::abs(fit_order(dts, mse2) - 1.0);
        check(rep, "analysis.fit_order_exact", std::max(a1, a2), 1e-12);

        if (has_noise) {
            double worst = 0.0;
            std::vector<double> Wt(cfg.noise.channels());
            rng::Stream st(vseed + 2);
            const double a0 = std::sqrt(2.0) / 2.0;
            for (int trial = 0; trial < 8; ++trial) {
                for (double& w : Wt) w = st.next_normal();
                const SpectralVelocity u = single_mode_exact(g8, cplx(-a0, 0), cplx(a0, 0), 1, 1,
                                                             0.3 * trial, Wt, 0.0, cfg.noise);
                worst = std::max(worst, std::abs(l2_norm(u) / std::sqrt(4.0 * a0 * a0 *
                                                 4.0 * std::numbers::pi * std::numbers::pi) -
                                                 1.0));
            }
            check(rep, "analysis.single_mode_energy_conservation", worst, 1e-12,
                  "mu = 0 transport is a pure phase");
        } else {
            skip(rep, "analysis.single_mode_energy_conservation", "K = 0");
        }

        // Time-regularity diagnostic (informational).
        const GridSpec g16(16);
        Workspace ws16(g16);
        StudyConfig hcfg = cfg;
        hcfg.grid_n = 16;
        hcfg.u0.kind = U0Spec::Kind::taylor_green_plus_random;
        const WienerPath hpath = generate_path(rng::seed_split(cfg.master_seed, 9),
                                               cfg.noise.channels(), 256, cfg.horizon);
        SchemeConfig hsc = cfg.scheme_config();
        hsc.steps = 256;
        const Trajectory ht = run_trajectory(build_u0(hcfg), hpath, cfg.noise, hsc, ws16);
        info(rep, "analysis.holder_quotient", holder_quotient(ht, 0.4, 1),
             "C^0.4 -> L2 quotient at M = 256");
    }

    // --- harness invariants at reduced size.
    {
        StudyConfig small;
        small.grid_n = 16;
        small.noise = cfg.noise;
        small.mu = cfg.mu;
        small.horizon = cfg.horizon;
        small.fp_tol = cfg.fp_tol;
        small.fp_max_iters = cfg.fp_max_iters;
        small.levels = {8, 16, 32};
        small.reference_steps = 512;
        small.samples = 8;
        small.master_seed = cfg.master_seed;
        small.u0.kind = U0Spec::Kind::taylor_green_plus_random;

        StudyConfig one = small;
        one.threads = 1;
        StudyConfig two = small;
        two.threads = 2;
        const ErrorReport r1 = convergence_study(one);
        const ErrorReport r2 = convergence_study(two);
        double worst = 0.0;
        for (size_t i = 0; i < r1.levels.size(); ++i) {
            worst = std::max(worst, std::abs(r1.levels[i].mse_mean - r2.levels[i].mse_mean));
            worst = std::max(worst, std::abs(r1.levels[i].mse_stderr - r2.levels[i].mse_stderr));
        }
        check(rep, "harness.reproducibility", worst, 0.0,
              "threads 1 vs 2 give identical statistics");

        if (!has_noise) {
            skip(rep, "harness.stderr_scaling", "K = 0: trajectories are deterministic");
            return rep;
        }
        // Fixed documented seed family: the ratio of a skewed sample's
        // standard error is itself noisy at these sizes.
        StudyConfig scale16 = small;
        scale16.master_seed = 7;
        scale16.samples = 16;
        StudyConfig scale64 = scale16;
        scale64.samples = 64;
        const ErrorReport rs16 = convergence_study(scale16);
        const ErrorReport rs64 = convergence_study(scale64);
        double ratio = 0.0;
        for (size_t i = 0; i < rs16.levels.size(); ++i)
            ratio += rs64.levels[i].mse_stderr / rs16.levels[i].mse_stderr;
        ratio /= static_cast<double>(rs16.levels.size());
        check(rep, "harness.stderr_scaling", std::abs(ratio - 0.5), 0.15,
              "stderr ratio at 4x samples vs 1/2, seed 7");
    }

    return rep;
}

}  // namespace sns
