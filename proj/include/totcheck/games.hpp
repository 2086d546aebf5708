#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "totcheck/typesys.hpp"

namespace totcheck {

inline constexpr int kInfPriority = INT_MAX;

struct TypeGraph {
  struct Edge {
    size_t from;
    std::string label;
    size_t to;
    bool operator==(const Edge&) const = default;
  };

  std::vector<TypeExpr> nodes;
  std::vector<Edge> edges;

  // Index of a node, keyed by its printed form; npos when absent.
  size_t find(const TypeExpr& t) const;
  bool is_parameter(size_t node) const { return !nodes[node].is_app(); }

  std::map<std::string, size_t> index;
};

// Syntactic containment T1 ⊑ T2 (reflexive); function types are opaque.
bool type_contained_in(const TypeExpr& small, const TypeExpr& big);

TypeGraph build_type_graph(const std::vector<TypeExpr>& roots, const TypeEnv& env);

struct ParityGame {
  TypeGraph graph;
  std::vector<int> priority;  // kInfPriority on parameter nodes

  // Priority of a type occurring in the game; -1 when absent.
  int priority_of(const TypeExpr& t) const;
  int max_finite_priority() const;
};

ParityGame assign_priorities(const TypeGraph& g, const TypeEnv& env);

// Every stamped type of the group's patterns and terms that names a
// (co)datatype.
std::vector<TypeExpr> stamped_roots(const DefGroup& g);

// Stamps the priority of each constructor and record occurrence.
void annotate_group(DefGroup& g, const ParityGame& game);

// One global game over every stamped type; stamps all groups in place.
ParityGame annotate_program(TypedProgram& tp);

std::string to_dot(const ParityGame& game);

}  // namespace totcheck
