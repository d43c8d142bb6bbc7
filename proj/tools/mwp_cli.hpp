#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mwp/analyzer.hpp"

namespace mwp::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUnbounded = 1;
inline constexpr int kUsageError = 2;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Stable-key-order JSON report for the listed functions (all if empty).
std::string emit_json(const AnalysisResult& result, const std::vector<std::string>& only = {});

/// Human-readable report for one function.
std::string emit_text(const FunctionResult& r);

/// Parses `0,2,1`; throws std::invalid_argument on malformed input.
Assignment parse_assignment(const std::string& text);

}  // namespace mwp::cli
