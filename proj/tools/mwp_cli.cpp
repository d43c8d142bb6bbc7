#include "mwp_cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "mwp/frontend.hpp"
#include "mwp/inliner.hpp"

namespace mwp::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string scalar_name(MwpInf v) {
  return v == MwpInf::kInf ? std::string("inf") : std::string(1, to_char(v));
}

std::string show_assignment(const Assignment& a) {
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
  return s.empty() ? "()" : s;
}

Json function_json(const FunctionResult& r) {
  Json f;
  f["name"] = r.name;
  f["variables"] = r.variables;
  Json choices = Json::array();
  for (std::uint32_t i = 0; i < r.registry->size(); ++i)
    choices.push_back(Json{{"index", i}, {"domain", r.registry->cardinality(i)}});
  f["choices"] = std::move(choices);

  Json matrix = Json::array();
  for (std::size_t i = 0; i < r.matrix.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < r.matrix.size(); ++j) {
      Json monos = Json::array();
      for (const auto& m : r.matrix.at(i, j).monomials()) {
        Json deltas = Json::array();
        for (const auto& d : m.deltas) deltas.push_back(Json::array({d.value, d.index}));
        monos.push_back(Json{{"scalar", scalar_name(m.scalar)}, {"deltas", std::move(deltas)}});
      }
      row.push_back(Json{{"monomials", std::move(monos)}});
    }
    matrix.push_back(std::move(row));
  }
  f["matrix"] = std::move(matrix);

  std::string verdict(to_string(r.verdict));
  std::replace(verdict.begin(), verdict.end(), '-', '_');
  f["verdict"] = verdict;
  f["sample_assignment"] = r.sample ? Json(*r.sample) : Json(nullptr);
  Json blame = Json::array();
  for (const auto& [a, b] : r.blame) blame.push_back(Json::array({a, b}));
  f["blame"] = std::move(blame);

  Json behaviors = Json::array();
  for (const auto& b : r.summary.behaviors) {
    Json flows = Json::object();
    for (std::size_t q = 0; q < b.flows.size(); ++q)
      flows[r.summary.params[q]] = std::string(1, to_char(b.flows[q]));
    behaviors.push_back(Json{{"assignment", b.representative}, {"flows", std::move(flows)}});
  }
  f["behaviors"] = std::move(behaviors);
  return f;
}

bool selected(const std::vector<std::string>& only, const std::string& name) {
  return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
}

}  // namespace

Assignment parse_assignment(const std::string& text) {
  Assignment a;
  if (text.empty()) return a;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad assignment component '" + part + "'");
    a.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  }
  return a;
}

std::string emit_json(const AnalysisResult& result, const std::vector<std::string>& only) {
  Json doc;
  doc["version"] = kVersion;
  Json fs = Json::array();
  for (const auto& r : result.functions)
    if (selected(only, r.name)) fs.push_back(function_json(r));
  doc["functions"] = std::move(fs);
  return doc.dump(2) + "\n";
}

std::string emit_text(const FunctionResult& r) {
  std::ostringstream o;
  o << "function " << r.name << "\n";
  o << "  variables:";
  for (const auto& v : r.variables) o << ' ' << v;
  o << "\n  choices: " << r.registry->size();
  if (r.registry->size()) {
    o << " (domains";
    for (auto c : r.registry->cardinalities()) o << ' ' << c;
    o << ')';
  }
  o << "\n  matrix:\n";
  for (std::size_t i = 0; i < r.matrix.size(); ++i)
    for (std::size_t j = 0; j < r.matrix.size(); ++j) {
      const auto& p = r.matrix.at(i, j);
      if (!p.is_zero())
        o << "    " << r.variables[i] << " -> " << r.variables[j] << ": " << p.to_string() << "\n";
    }
  o << "  verdict: " << to_string(r.verdict) << "\n";
  if (r.sample) o << "  sample assignment: " << show_assignment(*r.sample) << "\n";
  o << "  blame:";
  if (r.blame.empty()) o << " none";
  for (const auto& [a, b] : r.blame) o << " (" << a << "->" << b << ")";
  o << "\n";
  if (!r.summary.behaviors.empty()) {
    o << "  behaviors:\n";
    for (const auto& b : r.summary.behaviors) {
      o << "    [" << show_assignment(b.representative) << "]";
      for (std::size_t q = 0; q < b.flows.size(); ++q)
        o << ' ' << r.summary.params[q] << ':' << to_char(b.flows[q]);
      o << "\n";
    }
  }
  return o.str();
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  if (!args.empty() && args.front() == "analyze") args.erase(args.begin());

  CLI::App app{"mwp flow analyzer", "mwpa"};
  app.set_version_flag("--version", kVersion);
  std::string file;
  std::string function;
  std::string eval;
  bool json = false;
  bool fast = false;
  bool dump_ast = false;
  std::vector<std::string> check_inline;
  app.add_option("file", file, "Source file to analyze")->required();
  app.add_option("--function", function, "Only report this function");
  app.add_option("--eval", eval, "Print M[a] for the comma-separated assignment a");
  app.add_flag("--json", json, "Emit a JSON report");
  app.add_flag("--fast", fast, "Qualitative verdict from the delta graph only");
  app.add_flag("--dump-ast", dump_ast, "Print the parsed program");
  app.add_option("--check-inline", check_inline, "caller callee")->expected(2)->group("");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << file << "'\n";
    return kUsageError;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  ParseResult parsed;
  try {
    parsed = parse(buf.str());
  } catch (const ParseError& e) {
    err << file << ":" << e.diagnostic().format() << "\n";
    return kUsageError;
  }
  for (const auto& w : parsed.warnings) err << file << ":" << w.format() << "\n";
  const Program& program = parsed.program;

  if (dump_ast) {
    out << render(program);
    return kOk;
  }

  try {
    if (!check_inline.empty()) {
      const auto rep = check_call_theorem(program, check_inline[0], check_inline[1]);
      static const char* kNames[] = {"holds", "fails", "refused", "not-applicable"};
      out << "theorem: " << kNames[static_cast<int>(rep.status)] << "\n"
          << "  caller assignments: " << rep.caller_assignments << "\n"
          << "  outside assignments: " << rep.outside_assignments << "\n"
          << "  merged outside: " << rep.merged_outside << "\n"
          << "  detail: " << rep.detail << "\n";
      return rep.status == TheoremReport::Status::kFails ? kUnbounded
             : rep.ok()                                  ? kOk
                                                         : kUsageError;
    }

    if (!function.empty() && !program.find(function)) {
      err << "error: no function named '" << function << "'\n";
      return kUsageError;
    }
    AnalysisOptions opts;
    opts.fast = fast;
    const auto result = analyze_program(program, opts);
    std::vector<std::string> only;
    if (!function.empty()) only.push_back(function);

    bool unbounded = false;
    for (const auto& r : result.functions)
      if (selected(only, r.name) && r.verdict == Verdict::kUnbounded) unbounded = true;

    if (!eval.empty()) {
      const auto* r = result.find(function.empty() ? "main" : function);
      Assignment a;
      try {
        a = parse_assignment(eval);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
      }
      if (!r->registry->valid(a)) {
        err << "error: '" << r->name << "' expects " << r->registry->size()
            << " choice(s) with domains";
        for (auto c : r->registry->cardinalities()) err << ' ' << c;
        err << "\n";
        return kUsageError;
      }
      out << render(evaluate(*r, a));
    } else if (json) {
      out << emit_json(result, only);
    } else {
      bool first = true;
      for (const auto& r : result.functions) {
        if (!selected(only, r.name)) continue;
        if (!first) out << "\n";
        first = false;
        out << emit_text(r);
      }
    }
    return unbounded ? kUnbounded : kOk;
  } catch (const AnalysisError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace mwp::cli
