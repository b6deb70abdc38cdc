#pragma once

// External predicates, their evaluable assertions, and executors.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "peval/program.hpp"

namespace peval {

/// Outcome of executing an external call. Bundled builtins only ever
/// produce complete sequences.
struct SubstSeq {
  enum class Tail { Complete, Incomplete, Infinite };

  std::vector<Substitution> answers;
  Tail tail = Tail::Complete;

  static SubstSeq none() { return {}; }
  static SubstSeq identity() { return {{Substitution{}}, Tail::Complete}; }
};

using Executor = std::function<SubstSeq(const Atom& call)>;

struct BuiltinDef {
  PredKey pred;
  Atom head;  // assertion head pattern, e.g. `=<(A, B)`
  SCExpr condition;
  Executor exec;
};

class Registry {
 public:
  /// =</2 </2 >/2 >=/2 =:=/2 =\=/2 is/2 =/2 ground/1 between/3, plus
  /// write/1 and nl/0 which are never evaluable.
  static const Registry& defaults();

  /// Defaults with the program's `:- eval` assertions substituted.
  static Registry for_program(const Program& p);

  void add(BuiltinDef def);
  /// Replaces the assertion of an existing builtin; throws
  /// std::invalid_argument if `a.head` is not a registered predicate.
  void override_assertion(const EvalAssertion& a);

  const BuiltinDef* find(const PredKey& p) const;
  bool contains(const PredKey& p) const { return find(p) != nullptr; }

 private:
  std::map<PredKey, BuiltinDef> defs_;
};

/// True when `t` is an integer expression over + - * // mod (and unary -)
/// that evaluates without error: no overflow, no zero divisor.
bool is_arithexpr(const Term& t);
std::optional<std::int64_t> eval_arith(const Term& t);

/// Evaluates the assertion's sufficient condition for `call`.
bool check_sc(const BuiltinDef& b, const Atom& call);

/// Runs the executor. Precondition: check_sc(b, call).
SubstSeq exec(const BuiltinDef& b, const Atom& call);

}  // namespace peval
