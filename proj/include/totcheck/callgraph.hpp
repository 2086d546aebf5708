#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "totcheck/approx.hpp"
#include "totcheck/ast.hpp"

namespace totcheck {

// "source x1..xn -> <out> target (args)", args indexed by target parameter
// and expressed over the source parameters.
struct Call {
  std::string source;
  std::string target;
  sct::Weight out;
  std::vector<sct::ApproxTerm> args;
};

std::string to_string(const Call& c);
bool same_call(const Call& a, const Call& b);

struct CallGraph {
  std::vector<std::string> vertices;
  std::vector<Call> edges;
};

// Chains of destructor steps from parameter `index` to each pattern variable.
std::map<std::string, sct::ApproxTerm> pattern_substitution(const Pattern& p, int index);

// Requires priorities stamped on the group.
CallGraph extract_calls(const DefGroup& g);

// b after a; requires a.target == b.source.  Empty when an argument reduces
// to the error term.
std::optional<Call> compose(const Call& a, const Call& b);
std::optional<Call> collapsed_compose(const Call& a, const Call& b, int B, int D);
// Collapses one call in place of composing; used on extracted edges.
Call collapse_call(const Call& c, int B, int D);

CallGraph transitive_closure(const CallGraph& g, int B, int D, size_t max_edges = 100000);

bool coherent(const Call& a, const Call& b);

struct LoopCheck {
  bool pass = false;
  int condition = 0;  // 1 or 2 when passing
  std::string reason;
};

LoopCheck check_loop(const Call& c);

enum class Verdict { Total, Unsafe, UnsafeByDependency, Error };

std::string to_string(Verdict v);

struct TotalityResult {
  Verdict verdict = Verdict::Total;
  std::string reason;
  std::optional<Call> evidence;
  CallGraph graph;
  CallGraph closure;
};

TotalityResult decide_totality(const DefGroup& g, int B, int D, size_t max_edges = 100000);

}  // namespace totcheck
