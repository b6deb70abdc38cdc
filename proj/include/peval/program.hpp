#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "peval/terms.hpp"

namespace peval {

struct Clause {
  Atom head;
  std::vector<Atom> body;  // empty for facts
  int line = 0;            // source line, 0 when synthesized

  bool is_fact() const noexcept { return body.empty(); }
};

/// Returns a variant of `c` whose variables are all fresh.
Clause rename_apart(const Clause& c, VarGen& gen);

/// Sufficient-condition expression of an evaluable assertion.
struct SCExpr {
  enum class Kind { And, Or, Check };

  Kind kind = Kind::Check;
  std::shared_ptr<const SCExpr> left;
  std::shared_ptr<const SCExpr> right;
  std::optional<Atom> check;  // set when kind == Check

  static SCExpr make_check(Atom a);
  static SCExpr make_and(SCExpr l, SCExpr r);
  static SCExpr make_or(SCExpr l, SCExpr r);
  static SCExpr always();  // the check `true`
  static SCExpr never();   // the check `fail`
};

/// `:- eval Head : SC.`
struct EvalAssertion {
  Atom head;
  SCExpr condition;
  int line = 0;
};

class Program {
 public:
  Program() = default;

  void add_clause(Clause c);
  void add_entry(Atom a) { entries_.push_back(std::move(a)); }
  /// Throws std::invalid_argument on a second assertion for the same predicate.
  void add_eval(EvalAssertion e);

  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  const std::vector<Atom>& entries() const noexcept { return entries_; }
  const std::map<PredKey, EvalAssertion>& evals() const noexcept { return evals_; }

  bool defines(const PredKey& p) const { return index_.contains(p); }
  /// Clause positions for `p` in source order (empty when undefined).
  std::span<const std::size_t> clauses_for(const PredKey& p) const;
  std::vector<PredKey> predicates() const;

  /// Largest variable id used anywhere in the program (0 when none).
  VarId max_var_id() const noexcept { return max_var_; }
  void note_var_id(VarId v) {
    if (v > max_var_) max_var_ = v;
  }

 private:
  std::vector<Clause> clauses_;
  std::vector<Atom> entries_;
  std::map<PredKey, EvalAssertion> evals_;
  std::map<PredKey, std::vector<std::size_t>> index_;
  VarId max_var_ = 0;
};

/// Clause-by-clause variant comparison, plus entries and assertions.
bool structurally_equal(const Program& a, const Program& b);

/// The clause as the single term `:-(Head, (B1, ..., Bn))` or `Head`.
Term clause_term(const Clause& c);

}  // namespace peval
