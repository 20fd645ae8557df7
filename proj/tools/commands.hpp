#ifndef BDTW_TOOLS_COMMANDS_HPP
#define BDTW_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bdtw::tools {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Runs the command line `args` (program name excluded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestSummary {
    std::uint64_t exhaustive_pairs = 0;
    std::uint64_t random_pairs = 0;
    std::uint64_t matching_instances = 0;
    std::uint64_t failures = 0;
    std::string first_failure;  // smallest failing case, empty when all pass
};

/// Exhaustive oracle agreement over all string pairs of length 1..max_len,
/// then `trials` random pairs (lengths 1..500) and random matching instances.
SelftestSummary run_selftest(int max_len, std::uint64_t trials, std::uint64_t seed);

}  // namespace bdtw::tools

#endif  // BDTW_TOOLS_COMMANDS_HPP
