#pragma once

#include <string>
#include <vector>

namespace sns {

/// Process exit codes: 0 ok, 2 invariant failure, 3 solver non-convergence,
/// 4 config error.
enum ExitCode : int {
    kOk = 0,
    kInvariantFailure = 2,
    kNonConvergence = 3,
    kConfigError = 4,
};

struct CliOptions {
    std::string config_path;
    std::vector<std::string> overrides;  // section.key=value
    std::string out_dir = ".";
    int threads = -1;                    // -1: not set on the command line
    long long seed = -1;                 // -1: not set
    int verbosity = 0;
    // simulate extras
    std::string save_state;
    std::string load_state;
    std::string dump_path;
    bool pressure_stats = false;
};

int cmd_simulate(const CliOptions& opt);
int cmd_convergence(const CliOptions& opt);
int cmd_validate(const CliOptions& opt);

/// Full argv entry point (subcommands simulate | convergence | validate).
int run_cli(int argc, char** argv);

}  // namespace sns
