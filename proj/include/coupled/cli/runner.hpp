#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "coupled/cli/config.hpp"

namespace coupled::cli {

/// Process exit statuses.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;     ///< I/O or evaluation failure
inline constexpr int config = 2;      ///< parse or schema error
inline constexpr int infeasible = 3;  ///< model parameters rejected by a builder
inline constexpr int audit = 4;       ///< bound violation or unexpected certificate outcome
}  // namespace exit_code

struct RunOptions {
    std::optional<std::filesystem::path> out;
    std::optional<std::uint64_t> seed;
    /// Replaces the config's command list when set.
    std::optional<std::vector<Command>> commands;
};

/// Executes the commands in order, writing into the output directory:
///   <name>_solve_<i>.csv       trace of start i
///   <name>_solve_<i>_plot.csv  bound-tightness columns of start i
///   <name>_solve.json          equilibrium reports
///   <name>_certify.json        certificate report
///   <name>_lipschitz.json      sampled Lipschitz estimate
///   <name>_second_order.json   first/second-order checks at the oracle fixed points
///   <table>.csv                reproduced tables
/// Progress goes to `log`. Returns an exit_code value; library errors escape.
[[nodiscard]] int run(ExperimentConfig cfg, const RunOptions& opts, std::ostream& log);

/// Loads `path` and runs it, mapping errors to exit codes with a diagnostic on `err`.
[[nodiscard]] int run_file(const std::filesystem::path& path, const RunOptions& opts,
                           std::ostream& log, std::ostream& err);

}  // namespace coupled::cli
