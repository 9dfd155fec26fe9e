#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zen::cli {

enum ExitCode : int { kOk = 0, kComputationError = 1, kUsageError = 2 };

// Accepts "a..b" (inclusive), comma lists and mixtures such as "0..4,7".
std::vector<std::uint64_t> parse_seeds(const std::string& text);

// Entry point of the `zen` tool; writes results to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zen::cli
