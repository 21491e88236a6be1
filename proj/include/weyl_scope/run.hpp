#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "weyl_scope/errors.hpp"
#include "weyl_scope/io.hpp"

namespace weyl {

inline constexpr std::uint64_t kDefaultSeed = 1729;

struct RunOptions {
    std::uint64_t seed = kDefaultSeed;
    /// Overrides every per-check tolerance when set.
    std::optional<double> tol;
    /// Relative "file" entries in a config are resolved against this directory.
    std::string base_dir;
};

/// Report text plus process exit status: 0 all checks pass, 1 some check
/// failed. Configuration problems are thrown (ConfigInvalid, ModelUnknown)
/// and map to exit status 2 in the CLI.
struct RunOutput {
    int exit_code = 0;
    std::string text;
};

/// Residual suite over synthetic or loaded triples (JSON report).
RunOutput run_check(const Json& config, const RunOptions& opts);
/// Parameter scan for a hainlust, friedrichs or firstorder model (CSV).
RunOutput run_scan(const Json& config, const RunOptions& opts);
/// Eigenvalues of a Hain-Lust model in a rectangle or of A_B for a triple (JSON).
RunOutput run_eig(const Json& config, const RunOptions& opts);
/// Detection spaces and contour residuals for one extension (JSON).
RunOutput run_contour(const Json& config, const RunOptions& opts);
/// One of the perturbed multiplication operator examples (JSON).
RunOutput run_example(const Json& config, const RunOptions& opts);

/// Dispatch by command name; ConfigInvalid for an unknown command.
RunOutput run_command(const std::string& command, const Json& config, const RunOptions& opts);

/// Exit status for a thrown library error: 2 for configuration errors, 1 otherwise.
int exit_code_for(const Error& e);

}  // namespace weyl
