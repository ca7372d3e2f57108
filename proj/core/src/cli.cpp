#include "sns/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "sns/config.hpp"
#include "sns/io.hpp"
#include "sns/pressure.hpp"
#include "sns/svg.hpp"

namespace sns {

namespace {

StudyConfig make_config(const CliOptions& opt) {
    std::vector<std::string> overrides;
    if (const char* env = std::getenv("SNS_SEED"); env && *env)
        overrides.push_back(std::string("study.master_seed=") + env);
    if (opt.seed >= 0)
        overrides.push_back("study.master_seed=" + std::to_string(opt.seed));
    overrides.insert(overrides.end(), opt.overrides.begin(), opt.overrides.end());
    StudyConfig cfg = load_study_config(opt.config_path, overrides);
    if (opt.threads >= 0) cfg.threads = opt.threads;
    return cfg;
}

std::filesystem::path out_file(const CliOptions& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return std::filesystem::path(opt.out_dir) / name;
}

int guarded(const CliOptions& opt, int (*body)(const CliOptions&)) {
    try {
        return body(opt);
    } catch (const NonConvergence& nc) {
        std::cerr << "error: fixed-point solver did not converge (sample " << nc.sample
                  << ", level " << nc.level << ", step " << nc.step << ", residual "
                  << nc.residual << " after " << nc.iterations << " iterations); "
                  << "dt is too large for the contraction\n";
        return kNonConvergence;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::runtime_error& e) {
        // I/O and format problems: bad paths, unreadable snapshots
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvariantFailure;
    }
}

int simulate_body(const CliOptions& opt) {
    StudyConfig cfg = make_config(opt);

    SpectralVelocity u0;
    if (!opt.load_state.empty()) {
        u0 = load_snapshot(opt.load_state);
        cfg.grid_n = u0.grid.modes_per_dim;
    } else {
        u0 = build_u0(cfg);
    }

    SchemeConfig sc = cfg.scheme_config();
    if (sc.steps < 1 || (sc.steps & (sc.steps - 1)) != 0)
        throw ConfigError("simulate: scheme.M must be a power of two (dyadic noise levels)");
    const WienerPath path =
        generate_path(cfg.master_seed, cfg.noise.channels(), sc.steps, cfg.horizon);

    if (!opt.dump_path.empty()) write_text_file(opt.dump_path, path_csv(path));

    Workspace ws(GridSpec(cfg.grid_n));
    StepLedger ledger;
    SpectralVelocity prev, last;
    PressureStats pstats;
    const double dt = sc.dt();
    run_trajectory_observed(
        u0, path, cfg.noise, sc, ws,
        [&](int m, const SpectralVelocity& s) {
            if (opt.pressure_stats && m >= 1) {
                const SpectralVelocity mid = midpoint(prev, s);
                const ScalarField pi = pressure_det(mid, ws);
                pstats.s_det += dt * h_seminorm_sq(pi, 1);
                for (const Vec2& sg : cfg.noise.sigmas) {
                    const SpectralVelocity ito = pressure_ito(mid, sg);
                    pstats.s_ito += dt * (l2_norm_sq(ito) + h_seminorm_sq(ito, 1));
                }
            }
            prev = s;
            if (m == sc.steps) last = s;
        },
        &ledger);

    write_ledger_csv(out_file(opt, "ledger.csv").string(), ledger, dt);
    if (opt.pressure_stats)
        write_text_file(out_file(opt, "pressure_stats.csv").string(),
                        pressure_stats_csv({{sc.steps, pstats}}));
    if (!opt.save_state.empty()) save_snapshot(opt.save_state, last);

    if (opt.verbosity > 0) {
        std::cout << "steps: " << sc.steps << "  dt: " << fmt17(dt) << '\n';
        std::cout << "final energy: " << fmt17(0.5 * l2_norm_sq(last)) << '\n';
        std::cout << "max |energy defect|: " << fmt17(ledger.max_abs_energy_defect()) << '\n';
    }
    return kOk;
}

int convergence_body(const CliOptions& opt) {
    const StudyConfig cfg = make_config(opt);
    const ErrorReport report = convergence_study(cfg);
    write_convergence_csv(out_file(opt, "convergence.csv").string(), report);
    write_summary(out_file(opt, "summary.json").string(), report);
    write_convergence_svg(out_file(opt, "convergence.svg").string(), report);
    std::cout << "alpha_fit = " << fmt17(report.alpha_fit) << '\n';
    if (opt.verbosity > 0) {
        for (const LevelStats& l : report.levels)
            std::cout << "M=" << l.level << " dt=" << fmt17(l.dt) << " mse=" << fmt17(l.mse_mean)
                      << " stderr=" << fmt17(l.mse_stderr) << '\n';
    }
    return kOk;
}

int validate_body(const CliOptions& opt) {
    const StudyConfig cfg = make_config(opt);
    const ValidationReport rep = validate_suite(cfg);
    for (const CheckResult& c : rep.checks) {
        const char* status = c.skipped ? "SKIP" : (c.diagnostic ? "INFO" : (c.passed ? "PASS" : "FAIL"));
        std::cout << status << "  " << c.name << "  measured=" << fmt17(c.measured);
        if (!c.skipped && !c.diagnostic) std::cout << "  tolerance=" << fmt17(c.tolerance);
        if (!c.note.empty()) std::cout << "  (" << c.note << ')';
        std::cout << '\n';
    }
    return rep.all_passed() ? kOk : kInvariantFailure;
}

}  // namespace

int cmd_simulate(const CliOptions& opt) { return guarded(opt, simulate_body); }
int cmd_convergence(const CliOptions& opt) { return guarded(opt, convergence_body); }
int cmd_validate(const CliOptions& opt) { return guarded(opt, validate_body); }

int run_cli(int argc, char** argv) {
    CLI::App app{"Pseudospectral 2D Navier-Stokes with transport noise: implicit midpoint "
                 "trajectories and mean-square temporal convergence studies"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "Config file (key = value sections)");
        sub->add_option("--set", opt.overrides,
                        "Override a config entry, section.key=value (repeatable)");
        sub->add_option("--out", opt.out_dir, "Output directory");
        sub->add_option("--threads", opt.threads, "Worker thread cap");
        sub->add_option("--seed", opt.seed, "Master seed override");
        sub->add_flag_function("-v,--verbose", [&](std::int64_t n) {
            opt.verbosity = static_cast<int>(n);
        }, "Verbose output");
    };

    CLI::App* sim = app.add_subcommand("simulate", "Run one trajectory, write the step ledger");
    add_common(sim);
    sim->add_option("--save-state", opt.save_state, "Write the final field snapshot here");
    sim->add_option("--load-state", opt.load_state, "Start from a field snapshot");
    sim->add_option("--dump-path", opt.dump_path, "Write the Wiener increments as CSV");
    sim->add_flag("--pressure-stats", opt.pressure_stats,
                  "Accumulate pressure bound statistics");

    CLI::App* conv = app.add_subcommand(
        "convergence", "Monte Carlo temporal convergence study (CSV + summary + SVG)");
    add_common(conv);

    CLI::App* val = app.add_subcommand("validate", "Run the invariant suite, one line per check");
    add_common(val);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    if (sim->parsed()) return cmd_simulate(opt);
    if (conv->parsed()) return cmd_convergence(opt);
    if (val->parsed()) return cmd_validate(opt);
    return kConfigError;
}

}  // namespace sns
