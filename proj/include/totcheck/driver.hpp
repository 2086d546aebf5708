#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "totcheck/callgraph.hpp"
#include "totcheck/games.hpp"
#include "totcheck/typesys.hpp"

namespace totcheck {

struct CheckOptions {
  int bound_weight = 2;
  int bound_depth = 2;
  size_t max_edges = 100000;
  unsigned jobs = 1;
};

struct GroupReport {
  std::vector<std::string> functions;
  Verdict verdict = Verdict::Total;
  std::string reason;
  std::optional<Call> evidence;
  CallGraph graph;    // empty when the group failed before extraction
  CallGraph closure;
};

struct CheckReport {
  TypedProgram typed;
  ParityGame game;
  std::vector<GroupReport> groups;
};

// Whole pipeline on one source text.  Parse, desugar, declaration and type
// errors propagate as exceptions; per-group failures become verdicts.
CheckReport check_source(std::string_view source, const CheckOptions& opts = {});

// 0 when every verdict is TOTAL, 2 when any is ERROR, 1 otherwise.
int exit_code(const std::vector<Verdict>& verdicts);

// Program text of a file; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);

// Type checks EXPR against the program and renders the forced value.
std::string evaluate_expression(std::string_view source, std::string_view expr, int depth, long fuel);

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace totcheck
