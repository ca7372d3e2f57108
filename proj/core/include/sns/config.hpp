#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sns/harness.hpp"

namespace sns {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse the flat `key = value` config format (sections in brackets, `#`
/// comments). Unknown sections or keys are a hard error naming the
/// offending key. Overrides are `section.key=value` strings applied after
/// the file, so a flag and a file entry encoding the same value behave
/// identically.
///
/// Recognized keys:
///   [grid]   N
///   [noise]  K, sigma_1 .. sigma_K ("x y" pairs)
///   [scheme] mu, T, M, fp_tol, fp_max_iters
///   [study]  levels, reference_steps, samples, master_seed, threads,
///            u0, reference
StudyConfig parse_study_config(const std::string& text,
                               const std::vector<std::string>& overrides = {});

/// parse_study_config over the contents of a file; an empty path yields the
/// built-in defaults (plus overrides).
StudyConfig load_study_config(const std::string& path,
                              const std::vector<std::string>& overrides = {});

/// u0 grammar: "taylor-green", "random(decay=5,amplitude=0.1)",
/// "taylor-green+random(decay=5,amplitude=0.1)",
/// "single-mode(k1=1,k2=0,amplitude=1)", "file:PATH".
U0Spec parse_u0_spec(const std::string& text);

}  // namespace sns
