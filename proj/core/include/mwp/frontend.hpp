#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mwp/ast.hpp"

namespace mwp {

struct Diagnostic {
  enum class Severity { kError, kWarning };

  Severity severity = Severity::kError;
  std::string code;  // E001..., W001...
  SourceLoc loc;
  std::string message;

  /// `<line>:<col>: error E002: message`
  std::string format() const;
};

// Error codes.
inline constexpr const char* kLexError = "E001";
inline constexpr const char* kSyntaxError = "E002";
inline constexpr const char* kDuplicateFunction = "E003";
inline constexpr const char* kUndeclaredCall = "E004";
inline constexpr const char* kMainHasParams = "E005";
inline constexpr const char* kNoMain = "E006";
inline constexpr const char* kReservedName = "E007";
inline constexpr const char* kDuplicateParam = "E008";
inline constexpr const char* kUnusedReturn = "E009";
inline constexpr const char* kMainReturns = "E010";
inline constexpr const char* kArityMismatch = "E011";
inline constexpr const char* kCallToMain = "E012";
inline constexpr const char* kCounterAssigned = "W001";

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic d) : std::runtime_error(d.format()), diag_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

struct ParseOptions {
  /// Accept `__`-prefixed identifiers (generated code only).
  bool allow_reserved = false;
  /// Skip the program-level checks (main present etc.).
  bool require_main = true;
};

struct ParseResult {
  Program program;
  std::vector<Diagnostic> warnings;
};

/// Throws ParseError on the first error.
ParseResult parse(std::string_view source, const ParseOptions& options = {});

/// Convenience wrapper discarding warnings.
Program parse_program(std::string_view source, const ParseOptions& options = {});

}  // namespace mwp
