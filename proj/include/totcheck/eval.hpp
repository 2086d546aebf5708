#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "totcheck/ast.hpp"

namespace totcheck {

struct Suspension;
using SuspensionPtr = std::shared_ptr<const Suspension>;
using EvalEnv = std::map<std::string, SuspensionPtr>;
using EvalEnvPtr = std::shared_ptr<const EvalEnv>;

// An unevaluated term together with the bindings of its free variables.
struct Suspension {
  const Term* term = nullptr;
  EvalEnvPtr env;
};

// Weak-head normal forms.  Partial applications of functions and bare
// constructors used as functions are values as well.
struct Value {
  enum class Kind { Ctor, Record, Partial, CtorFn };
  Kind kind = Kind::Ctor;
  std::string name;                 // constructor label or function name
  std::vector<std::string> labels;  // Record
  std::vector<SuspensionPtr> args;  // Ctor: one; Record: parallel to labels; Partial: supplied arguments
};

struct FuelExhausted {
  std::string message;
};

using WhnfResult = std::variant<Value, FuelExhausted>;

class Evaluator {
 public:
  // `program` must be desugared; it is copied.
  explicit Evaluator(const Program& program);

  // The term is copied and owned by the evaluator.
  SuspensionPtr suspend(const Term& closed);

  WhnfResult eval_whnf(const SuspensionPtr& s, long fuel);
  WhnfResult eval_whnf(const Term& closed, long fuel) { return eval_whnf(suspend(closed), fuel); }

  // Forces to record depth `depth`.  Data constructors do not consume depth;
  // every record level does.  Deeper suspensions print as `…`; each forced
  // node gets its own budget of `fuel` steps.
  std::string force_depth(const SuspensionPtr& s, int depth, long fuel);
  std::string force_depth(const Term& closed, int depth, long fuel) { return force_depth(suspend(closed), depth, fuel); }

 private:
  struct Budget;
  Value whnf(const Term* t, EvalEnvPtr env, Budget& b);
  Value apply(Value head, std::vector<SuspensionPtr> args, Budget& b);
  Value call(const std::string& f, std::vector<SuspensionPtr> args, Budget& b);
  std::string render(const SuspensionPtr& s, int depth, long fuel, bool root);

  Program program_;
  std::map<std::string, std::vector<const Clause*>> clauses_;
  std::map<std::string, size_t> arity_;
  std::deque<Term> owned_;
};

// Number of `Succ` around `Zero` in a printed numeral; empty otherwise.
std::optional<long> numeral_value(const std::string& printed);

}  // namespace totcheck
