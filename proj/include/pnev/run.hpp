#pragma once

#include "pnev/plfunction.hpp"
#include "pnev/scenario.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pnev {

enum class Subcommand { fmt_check, smt_report, defect, sharpness, polygon, bounded_proximity };

std::optional<Subcommand> parse_subcommand(std::string_view name);
std::string_view subcommand_name(Subcommand c);

// Exit status contract of the command-line front-end.
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_input_error = 2 };

struct Artifact {
    std::string path;  // relative to the output directory
    std::string content;
};

struct RunResult {
    int exit_code = exit_ok;
    std::string report;
    // Report, exact dump and plot table, in that order (plus the generated
    // scenario for `sharpness`). Empty when the input was rejected.
    std::vector<Artifact> artifacts;
};

// Evaluates one subcommand. Input and check failures are reported through
// the exit code and the report text; nothing is thrown for them.
RunResult run(Subcommand cmd, const Scenario& scenario);

// Tab-separated table: one row per grid point, one column per function.
// Cells outside a function's certified domain hold "-".
std::string plot_table(const std::vector<Rational>& grid,
                       const std::vector<std::pair<std::string, PLFunction>>& columns);

}  // namespace pnev
