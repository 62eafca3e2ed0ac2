#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace radmorse {

enum class Command { construct, index, quotient, hardy, scan, critical, verify_all };
enum class Format { csv, json };

/// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    Command command = Command::construct;
    std::vector<int> dimensions;
    std::vector<double> radii;
    /// Scan pairs are zipped from p and q (equal length).
    std::vector<double> p;
    std::vector<double> q;
    /// index: (a, b). Defaults to (0, 1).
    std::vector<double> interval;
    /// hardy
    std::vector<double> alphas;
    std::vector<double> left_ends;
    double right_end = 1.0;
    std::size_t trials = 100;
    /// critical
    std::vector<double> lambdas;
    std::size_t grid_n = 2048;
    std::optional<std::string> output_path;
    Format format = Format::csv;
    std::uint64_t seed = 0;
    unsigned workers = 0;
};

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command command);

/// Throws DomainError naming the first violated requirement for the command.
void validate(const RunConfig& config);

/// Executes the command: one summary line per row on `out`, the table written atomically to
/// output_path when set. Returns kExitOk iff every per-row verification passed, kExitFailed
/// otherwise, kExitUsage on validation errors (reported on `err`, as a JSON record in json mode).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace radmorse
