#pragma once

// Derivation engine: one choice-indexed matrix per command and function.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mwp/ast.hpp"
#include "mwp/choice_poly.hpp"
#include "mwp/delta_graph.hpp"

namespace mwp {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ChoiceVector = std::vector<ChoicePolynomial>;

enum class Verdict { kBounded, kConditionallyBounded, kUnbounded };

/// "bounded", "conditionally-bounded", "unbounded".
std::string_view to_string(Verdict v);

/// One input/output behaviour of a function: the flow from each parameter
/// into the returned variable, with the smallest assignment producing it.
struct Behavior {
  Assignment representative;
  std::vector<Mwp> flows;

  friend bool operator==(const Behavior&, const Behavior&) = default;
};

struct FunctionSummary {
  std::string name;
  std::vector<std::string> params;
  std::vector<Behavior> behaviors;
};

using SummaryTable = std::map<std::string, FunctionSummary>;

struct AnalysisOptions {
  /// Verdict and sample from the delta graph only, no per-assignment
  /// evaluation.
  bool fast = false;
  /// Above this many assignments the full verdict also uses the graph.
  std::size_t enumeration_limit = std::size_t{1} << 16;
  /// Budget of assignments visited while building a summary.
  std::size_t summary_limit = std::size_t{1} << 22;
};

/// Mutable state of one derivation.
struct AnalysisContext {
  std::vector<std::string> variables;
  std::shared_ptr<ChoiceDomainRegistry> registry = std::make_shared<ChoiceDomainRegistry>();
  DeltaGraph graph{registry};
  bool infinity_emitted = false;
  const SummaryTable* summaries = nullptr;

  AnalysisContext() = default;
  explicit AnalysisContext(std::vector<std::string> vars) : variables(std::move(vars)) {}
  AnalysisContext(const AnalysisContext&) = delete;
  AnalysisContext& operator=(const AnalysisContext&) = delete;

  std::size_t index_of(const std::string& name) const;
};

ChoiceVector analyze_expr(const Expr& e, AnalysisContext& ctx);
PolyMatrix analyze_cmd(const Command& c, AnalysisContext& ctx);
PolyMatrix analyze_body(const std::vector<Command>& body, AnalysisContext& ctx);

struct FunctionResult {
  std::string name;
  std::vector<std::string> variables;
  std::shared_ptr<const ChoiceDomainRegistry> registry;
  PolyMatrix matrix;
  DeltaGraph graph;
  bool infinity_emitted = false;
  Verdict verdict = Verdict::kBounded;
  std::optional<Assignment> sample;
  std::vector<std::pair<std::string, std::string>> blame;
  FunctionSummary summary;
};

struct AnalysisResult {
  std::vector<FunctionResult> functions;

  const FunctionResult* find(const std::string& name) const;
};

FunctionResult analyze_function(const FunctionDecl& f, const SummaryTable& summaries,
                                const AnalysisOptions& options = {});

AnalysisResult analyze_program(const Program& p, const AnalysisOptions& options = {});

/// M[alpha]; throws std::invalid_argument if alpha does not fit the registry.
MwpMatrix evaluate(const FunctionResult& r, const Assignment& alpha);

}  // namespace mwp
