#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sns/cli.hpp"
#include "sns/config.hpp"
#include "sns/io.hpp"
#include "sns/svg.hpp"

using namespace sns;
using doctest::Approx;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("sns_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("snapshot round trip is exact") {
    TempDir tmp;
    const GridSpec g(16);
    const SpectralVelocity u = random_divfree_field(g, 4711, 5.0, 1.0);
    save_snapshot(tmp.file("u.sns2"), u);
    const SpectralVelocity back = load_snapshot(tmp.file("u.sns2"));
    REQUIRE(back.grid.modes_per_dim == 16);
    for (int c = 0; c < 2; ++c)
        for (size_t i = 0; i < u.comp[c].size(); ++i) CHECK(back.comp[c][i] == u.comp[c][i]);
}

TEST_CASE("snapshot rejects damaged input") {
    TempDir tmp;
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_snapshot(tmp.file("missing.sns2")), std::runtime_error);
    }
    SUBCASE("bad magic") {
        std::ofstream os(tmp.file("bad.sns2"), std::ios::binary);
        os << "NOPE0000000000000000";
        os.close();
        CHECK_THROWS_AS(load_snapshot(tmp.file("bad.sns2")), std::runtime_error);
    }
    SUBCASE("truncated") {
        const GridSpec g(16);
        save_snapshot(tmp.file("t.sns2"), SpectralVelocity(g));
        std::filesystem::resize_file(tmp.file("t.sns2"), 100);
        CHECK_THROWS_AS(load_snapshot(tmp.file("t.sns2")), std::runtime_error);
    }
}

TEST_CASE("fmt17 round trips doubles exactly") {
    for (double v : {0.1, 1.0 / 3.0, 6.02e23, -2.2250738585072014e-308, 0.0,
                     0.00048828125, 3.141592653589793}) {
        CHECK(std::stod(fmt17(v)) == v);
    }
}

TEST_CASE("csv writers") {
    StepLedger ledger;
    LedgerEntry e;
    e.energy_before = 1.0;
    e.energy_after = 0.875;
    e.dissipation = 0.125;
    e.energy_defect = 0.0;
    e.fp_iterations = 3;
    e.fp_residual = 1e-13;
    ledger.steps.push_back(e);
    const std::string csv = ledger_csv(ledger, 0.5);
    CHECK(csv.find("m,t,energy,grad_energy,dissipation,energy_defect,fp_iters,fp_residual\n") ==
          0);
    CHECK(csv.find("\n1,0.5,0.875,") != std::string::npos);

    ErrorReport rep;
    rep.alpha_fit = 0.5;
    rep.samples = 8;
    rep.levels.push_back({16, 0.03125, 1e-3, 1e-4, 8, 9e-4});
    CHECK(convergence_csv(rep).find("M,dt,mse_mean,mse_stderr,samples\n16,0.03125,") == 0);
    CHECK(summary_json(rep).find("\"alpha_fit\": 0.5") != std::string::npos);
    CHECK(pressure_stats_csv({{16, {0.25, 0.0}}}).find("M,S_det,S_ito\n16,0.25,0\n") == 0);
    CHECK(convergence_svg(rep).find("<svg") == 0);
}

TEST_CASE("config parsing") {
    SUBCASE("defaults") {
        const StudyConfig cfg = parse_study_config("");
        CHECK(cfg.grid_n == 64);
        CHECK(cfg.noise.channels() == 2);
        CHECK(cfg.levels == std::vector<int>{16, 32, 64, 128, 256});
        CHECK(cfg.reference_steps == 4096);
        CHECK(cfg.samples == 32);
        CHECK_NOTHROW(cfg.validate());
    }
    SUBCASE("full file") {
        const char* text = R"(
# comment
[grid]
N = 32
[noise]
K = 1
sigma_1 = 0.5 -1.5
[scheme]
mu = 0.1
T = 0.25
M = 64
fp_tol = 1e-11
fp_max_iters = 50
[study]
levels = 8 16 32
reference_steps = 512
samples = 12
master_seed = 99
threads = 3
u0 = random(decay=6, amplitude=0.4)
reference = scheme
)";
        const StudyConfig cfg = parse_study_config(text);
        CHECK(cfg.grid_n == 32);
        CHECK(cfg.noise.channels() == 1);
        CHECK(cfg.noise.sigmas[0].x == 0.5);
        CHECK(cfg.noise.sigmas[0].y == -1.5);
        CHECK(cfg.mu == 0.1);
        CHECK(cfg.horizon == 0.25);
        CHECK(cfg.simulate_steps == 64);
        CHECK(cfg.fp_tol == 1e-11);
        CHECK(cfg.fp_max_iters == 50);
        CHECK(cfg.levels == std::vector<int>{8, 16, 32});
        CHECK(cfg.samples == 12);
        CHECK(cfg.master_seed == 99);
        CHECK(cfg.threads == 3);
        CHECK(cfg.u0.kind == U0Spec::Kind::random);
        CHECK(cfg.u0.decay == 6.0);
        CHECK(cfg.u0.amplitude == 0.4);
    }
    SUBCASE("unknown keys name the offender") {
        CHECK_THROWS_WITH_AS(parse_study_config("[grid]\nM = 3\n"),
                             doctest::Contains("grid.M"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_study_config("[typo]\nx = 1\n"),
                             doctest::Contains("typo"), ConfigError);
        CHECK_THROWS_WITH_AS(parse_study_config("[study]\nlevel = 8\n"),
                             doctest::Contains("study.level"), ConfigError);
    }
    SUBCASE("sigma index outside the channel count is an error") {
        CHECK_THROWS_AS(parse_study_config("[noise]\nsigma_3 = 1 0\n"), ConfigError);
        CHECK_THROWS_AS(parse_study_config("[noise]\nK = 1\nsigma_2 = 1 0\n"), ConfigError);
    }
    SUBCASE("overrides behave like file entries") {
        const StudyConfig a = parse_study_config("[scheme]\nmu = 0.2\n");
        const StudyConfig b = parse_study_config("", {"scheme.mu=0.2"});
        CHECK(a.mu == b.mu);
        CHECK_THROWS_WITH_AS(parse_study_config("", {"scheme.nope=1"}),
                             doctest::Contains("scheme.nope"), ConfigError);
        CHECK_THROWS_AS(parse_study_config("", {"garbage"}), ConfigError);
    }
    SUBCASE("u0 grammar") {
        CHECK(parse_u0_spec("taylor-green").kind == U0Spec::Kind::taylor_green);
        const U0Spec tgr = parse_u0_spec("taylor-green+random(decay=5.5, amplitude=0.2)");
        CHECK(tgr.kind == U0Spec::Kind::taylor_green_plus_random);
        CHECK(tgr.decay == 5.5);
        const U0Spec sm = parse_u0_spec("single-mode(k1=2, k2=-1, amplitude=0.7)");
        CHECK(sm.kind == U0Spec::Kind::single_mode);
        CHECK(sm.k1 == 2);
        CHECK(sm.k2 == -1);
        const U0Spec snap = parse_u0_spec("file:/tmp/state.sns2");
        CHECK(snap.kind == U0Spec::Kind::snapshot);
        CHECK(snap.snapshot_path == "/tmp/state.sns2");
        CHECK_THROWS_AS(parse_u0_spec("vortex"), ConfigError);
        CHECK_THROWS_AS(parse_u0_spec("random(sigma=1)"), ConfigError);
    }
}

TEST_CASE("cli: simulate writes deterministic outputs and snapshots round trip") {
    TempDir tmp;
    CliOptions opt;
    opt.out_dir = tmp.file("run1");
    opt.overrides = {"grid.N=16", "scheme.M=32", "study.u0=taylor-green+random(amplitude=0.1)"};
    opt.seed = 7;
    opt.save_state = tmp.file("final.sns2");
    REQUIRE(cmd_simulate(opt) == kOk);

    CliOptions opt2 = opt;
    opt2.out_dir = tmp.file("run2");
    opt2.save_state = tmp.file("final2.sns2");
    REQUIRE(cmd_simulate(opt2) == kOk);

    CHECK(read_text_file(tmp.file("run1") + "/ledger.csv") ==
          read_text_file(tmp.file("run2") + "/ledger.csv"));
    CHECK(read_text_file(tmp.file("final.sns2")) == read_text_file(tmp.file("final2.sns2")));

    // resume from the snapshot: the loaded field is the saved one
    CliOptions opt3 = opt;
    opt3.out_dir = tmp.file("run3");
    opt3.load_state = tmp.file("final.sns2");
    opt3.save_state.clear();
    CHECK(cmd_simulate(opt3) == kOk);

    const SpectralVelocity fin = load_snapshot(tmp.file("final.sns2"));
    CHECK(fin.grid.modes_per_dim == 16);
}

TEST_CASE("cli: exit codes") {
    TempDir tmp;
    SUBCASE("unknown config key is a config error") {
        CliOptions opt;
        opt.out_dir = tmp.file("out");
        opt.overrides = {"grid.Q=1"};
        CHECK(cmd_simulate(opt) == kConfigError);
        CHECK(cmd_convergence(opt) == kConfigError);
    }
    SUBCASE("missing config file is a config error") {
        CliOptions opt;
        opt.config_path = tmp.file("nope.cfg");
        CHECK(cmd_simulate(opt) == kConfigError);
    }
    SUBCASE("non-convergence maps to exit 3") {
        CliOptions opt;
        opt.out_dir = tmp.file("out");
        // dt far beyond the contraction threshold with an active nonlinearity
        opt.overrides = {"grid.N=16", "scheme.M=2", "scheme.T=16",
                         "study.u0=random(decay=5,amplitude=8)", "scheme.fp_max_iters=4"};
        CHECK(cmd_simulate(opt) == kNonConvergence);
    }
    SUBCASE("simulate requires a dyadic step count") {
        CliOptions opt;
        opt.out_dir = tmp.file("out");
        opt.overrides = {"scheme.M=100"};
        CHECK(cmd_simulate(opt) == kConfigError);
    }
}

TEST_CASE("cli: convergence outputs are byte-identical across runs and thread counts") {
    TempDir tmp;
    CliOptions opt;
    opt.overrides = {"grid.N=16", "study.levels=8 16 32", "study.reference_steps=512",
                     "study.samples=8"};
    opt.seed = 11;

    opt.out_dir = tmp.file("a");
    opt.threads = 1;
    REQUIRE(cmd_convergence(opt) == kOk);
    opt.out_dir = tmp.file("b");
    opt.threads = 2;
    REQUIRE(cmd_convergence(opt) == kOk);

    for (const char* name : {"/convergence.csv", "/summary.json", "/convergence.svg"})
        CHECK(read_text_file(tmp.file("a") + name) == read_text_file(tmp.file("b") + name));
}

TEST_CASE("cli: run_cli argv parsing") {
    TempDir tmp;
    const std::string out = tmp.file("out");
    std::vector<std::string> args_store = {"sns", "simulate", "--out", out, "--set",
                                           "grid.N=16", "--set", "scheme.M=16"};
    std::vector<char*> argv;
    for (auto& a : args_store) argv.push_back(a.data());
    CHECK(run_cli(static_cast<int>(argv.size()), argv.data()) == kOk);
    CHECK(std::filesystem::exists(out + "/ledger.csv"));

    std::vector<std::string> bad_store = {"sns", "teleport"};
    std::vector<char*> bad;
    for (auto& a : bad_store) bad.push_back(a.data());
    CHECK(run_cli(static_cast<int>(bad.size()), bad.data()) == kConfigError);
}

TEST_CASE("SNS_SEED environment override") {
    TempDir tmp;
    ::setenv("SNS_SEED", "424242", 1);
    CliOptions opt;
    opt.out_dir = tmp.file("a");
    opt.overrides = {"grid.N=16", "scheme.M=16"};
    REQUIRE(cmd_simulate(opt) == kOk);
    ::unsetenv("SNS_SEED");

    CliOptions opt2;
    opt2.out_dir = tmp.file("b");
    opt2.overrides = {"grid.N=16", "scheme.M=16"};
    opt2.seed = 424242;
    REQUIRE(cmd_simulate(opt2) == kOk);

    CHECK(read_text_file(tmp.file("a") + "/ledger.csv") ==
          read_text_file(tmp.file("b") + "/ledger.csv"));
}
