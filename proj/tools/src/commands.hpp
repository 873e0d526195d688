#pragma once

#include <cstdint>
#include <string>

namespace qcm::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Options common to all subcommands. Per-command inputs ride alongside.
struct RunConfig {
    std::uint64_t seed = 0;
    double tol = 1e-9;
    int restarts = 32;
    double log_base = 2.0;
    int trials = -1; // -1 means the command's default
    std::string output; // empty writes to stdout
};

/// Pure-state report: the full monotone family, G, entropy, spectrum.
int cmd_monotones(const RunConfig& cfg, const std::string& state_path,
                  const std::string& path_name);

/// Replay a distribution scenario and check the delivered average G
/// against its ceiling.
int cmd_red(const RunConfig& cfg, const std::string& scenario_path);

/// Run the phase-tuned swapping protocol on two Schmidt spectra.
int cmd_rpbes(const RunConfig& cfg, const std::string& spectra_path,
              double target_g, bool has_target);

/// Convex-roof estimate for a mixed state.
int cmd_roof(const RunConfig& cfg, const std::string& state_path,
             const std::string& monotone);

/// Randomized internal consistency checks; exit 1 on any violation.
int cmd_selftest(const RunConfig& cfg);

} // namespace qcm::cli
