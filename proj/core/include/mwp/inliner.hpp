#pragma once

// Call-site inlining P[F] and an exhaustive check that analysing a call with
// the summary-based call rule agrees with analysing the inlined body.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mwp/analyzer.hpp"
#include "mwp/ast.hpp"

namespace mwp {

struct InlineResult {
  FunctionDecl inlined;
  /// Callee variable -> name used in the inlined body.
  std::map<std::string, std::string> renaming;
  /// Variables of the original caller.
  std::vector<std::string> caller_vars;
};

/// Replaces the first call to `callee` in `caller` (in walk order, nested
/// blocks included) by `Y1 = X1; ...; F~; Xi = R;`. Parameters become
/// `__y<n>`, the returned variable `__r1`, and other callee variables that
/// clash with caller variables `__v<n>`. Throws AnalysisError if there is no
/// such call.
InlineResult build_inlined(const FunctionDecl& caller, const FunctionDecl& callee);

/// Submatrix on `keep`, in the order of `keep`.
template <typename M>
M project_variables(const M& m, const std::vector<std::string>& vars,
                    const std::vector<std::string>& keep);

/// Number of choice points the analysis allocates before reaching the first
/// call to `callee` in `body`; nullopt if there is no such call.
std::optional<std::size_t> choices_before_call(const std::vector<Command>& body,
                                               const std::string& callee,
                                               const SummaryTable& summaries);

struct TheoremReport {
  enum class Status { kHolds, kFails, kRefused, kNotApplicable };

  Status status = Status::kHolds;
  std::string detail;
  std::size_t caller_assignments = 0;   // alpha checked
  std::size_t outside_assignments = 0;  // beta outside the injection's image
  /// beta outside the image whose non-caller block has no infinity; these
  /// are accepted when the callee part merges into an existing behaviour.
  std::size_t merged_outside = 0;

  bool ok() const { return status == Status::kHolds; }
};

/// Checks M(P)[a] = Pi_P(M(P[F]))[Psi(a)] for every caller assignment a, and
/// for every b outside the image of Psi: if the callee part of b is
/// infinite, the block of M(P[F])[b] outside the caller variables contains
/// an infinity; otherwise the callee part shares its behaviour with a
/// representative and Pi_P(M(P[F])[b]) equals M(P) at the matching a.
/// Not applicable when the callee has no infinity-free assignment, or when
/// the call sits in a loop and a non-parameter callee variable flows into
/// the result (its value then survives between calls in P[F]). Refuses when
/// P[F] has more than `budget` assignments.
TheoremReport check_call_theorem(const Program& program, const std::string& caller,
                                 const std::string& callee, std::size_t budget = 1u << 16);

}  // namespace mwp
