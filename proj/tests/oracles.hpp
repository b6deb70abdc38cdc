#pragma once

// Reference implementations the tests compare the library against.

#include <set>
#include <string>
#include <vector>

#include "peval/terms.hpp"

namespace testutil {

using namespace peval;

/// Term text with every variable written as `_`.
inline std::string skeleton(const Term& t) {
  if (t.is_var()) return "_";
  if (t.is_int()) return std::to_string(t.int_value());
  std::string out = t.name();
  if (t.arity() == 0) return out;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) out += (i ? "," : "") + skeleton(t.arg(i));
  return out + ')';
}

/// Every term reachable from `t` by repeatedly replacing a compound
/// subterm with one of its arguments, variables identified.
inline std::set<std::string> deletions(const Term& t) {
  std::set<std::string> out;
  if (t.arity() == 0 || t.is_var()) {
    out.insert(skeleton(t));
    return out;
  }
  std::vector<std::set<std::string>> args;
  for (const Term& a : t.args()) {
    args.push_back(deletions(a));
    out.insert(args.back().begin(), args.back().end());
  }
  // Cartesian product of argument deletions under the same functor.
  std::vector<std::string> partial{t.name() + "("};
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::vector<std::string> next;
    for (const auto& p : partial)
      for (const auto& a : args[i]) next.push_back(p + (i ? "," : "") + a);
    partial = std::move(next);
  }
  for (auto& p : partial) out.insert(p + ")");
  return out;
}

/// s embeds into t iff s is a deletion of t.
inline bool embeds_by_deletion(const Term& s, const Term& t) {
  return deletions(t).contains(skeleton(s));
}

/// All terms of depth at most `depth` over a, b, the variable `x`, g/1
/// and f/2.
inline std::vector<Term> all_terms(int depth, const Term& x) {
  std::vector<Term> out{Term::constant("a"), Term::constant("b"), x};
  if (depth <= 1) return out;
  std::vector<Term> sub = all_terms(depth - 1, x);
  for (const Term& s : sub) out.push_back(Term::compound("g", {s}));
  for (const Term& s : sub)
    for (const Term& t : sub) out.push_back(Term::compound("f", {s, t}));
  return out;
}

}  // namespace testutil
