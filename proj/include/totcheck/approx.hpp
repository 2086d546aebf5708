#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "totcheck/weight.hpp"

namespace totcheck::sct {

// One destructor step `.D` or inverse constructor step `C-`.
struct Step {
  enum class Kind { Proj, CtorInv };
  Kind kind = Kind::Proj;
  std::string label;
  int prio = 0;

  bool operator==(const Step&) const = default;
};

struct ApproxNode;
using ApproxTerm = std::shared_ptr<const ApproxNode>;

struct Factor {
  Weight weight;
  ApproxTerm term;
};

// Generalized patterns.  Normal forms only use Err, Ctor, Record, Chain and
// Product; Proj, CtorInv and Weighted are the raw forms reduction removes.
struct ApproxNode {
  enum class Kind { Err, Ctor, Record, Chain, Product, Proj, CtorInv, Weighted };

  Kind kind = Kind::Err;
  std::string label;                // Ctor, Proj, CtorInv
  int prio = 0;                     // Ctor, Record, Proj, CtorInv; -1 on a synthetic `{}` leaf
  std::vector<std::string> labels;  // Record, sorted
  std::vector<ApproxTerm> kids;     // Record fields; single child for Ctor/Proj/CtorInv/Weighted
  std::vector<Step> steps;          // Chain: steps[0] is applied first to the parameter
  int param = 0;                    // Chain
  std::vector<Factor> factors;      // Product
  Weight weight;                    // Weighted
};

using Kind = ApproxNode::Kind;

ApproxTerm err();
ApproxTerm param(int index);
ApproxTerm chain(std::vector<Step> steps, int index);
ApproxTerm ctor(std::string label, int prio, ApproxTerm arg);
ApproxTerm record(std::vector<std::pair<std::string, ApproxTerm>> fields, int prio);
ApproxTerm empty_record(int prio = -1);
ApproxTerm product(std::vector<Factor> factors);
ApproxTerm proj(std::string label, int prio, ApproxTerm arg);
ApproxTerm ctor_inv(std::string label, int prio, ApproxTerm arg);
ApproxTerm weighted(Weight w, ApproxTerm arg);

// The reduction normal form.
ApproxTerm nf(const ApproxTerm& t);
bool is_normal(const ApproxTerm& t);

// Apply one step to a normal term, returning a normal term.
ApproxTerm apply_step(const ApproxTerm& t, const Step& s);

// Replace parameter i by sigma[i] (all normal) and normalize.
ApproxTerm substitute(const ApproxTerm& t, const std::vector<ApproxTerm>& sigma);

int compare(const ApproxTerm& a, const ApproxTerm& b);
inline bool equal(const ApproxTerm& a, const ApproxTerm& b) { return compare(a, b) == 0; }

// Largest priority occurring anywhere (steps, nodes, weight entries); -1 if none.
int max_priority(const ApproxTerm& t);
// Number of nodes, counting each chain step and factor.
size_t term_size(const ApproxTerm& t);

// Dump syntax: `C^p t`, `{D=t;...}^p`, `C^p- t`, `.D^p t`, `<w@p,...> t`,
// `<T>` for Daimon, `!` for the error term, `*` for products, `x1..xn` for
// parameters.
std::string to_string(const ApproxTerm& t);
ApproxTerm parse_approx(std::string_view text);
Weight parse_weight(std::string_view text);

// ---- order --------------------------------------------------------------

bool term_leq(const ApproxTerm& u, const ApproxTerm& v);
bool coherent(const ApproxTerm& u, const ApproxTerm& v);

// ---- collapse -----------------------------------------------------------

ApproxTerm collapse_weights(const ApproxTerm& t, int B);
ApproxTerm collapse_depth(const ApproxTerm& t, int D);

// ---- branches -----------------------------------------------------------

struct BranchStep {
  enum class Kind { Ctor, Record, Weight, Dtor };
  Kind kind = Kind::Ctor;
  int prio = 0;
  Weight weight;  // Kind::Weight only
};

// Root-to-leaf path.  Destructor steps are listed outermost first; `param`
// is -1 for a `{}` leaf.
struct Branch {
  std::vector<BranchStep> steps;
  int param = -1;
};

std::vector<Branch> branches(const ApproxTerm& t);
ZInf branch_norm(const Branch& b, int p);
// Largest priority along the branch, including weight supports; -1 if none.
int branch_max_priority(const Branch& b);

}  // namespace totcheck::sct
