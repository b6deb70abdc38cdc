#pragma once

#include <random>
#include <string>
#include <vector>

#include "peval/builtins.hpp"
#include "peval/embedding.hpp"
#include "peval/parser.hpp"

namespace testutil {

using namespace peval;

/// Parses several terms in one variable scope: the same name means the
/// same variable across all of them.
inline std::vector<Term> terms(const std::vector<std::string>& texts, VarGen& gen) {
  std::string joined = "'$t'(";
  for (std::size_t i = 0; i < texts.size(); ++i) joined += (i ? "," : "") + texts[i];
  Term t = parse_term(joined + ")", gen);
  return {t.args().begin(), t.args().end()};
}

inline std::vector<Atom> atoms(const std::vector<std::string>& texts, VarGen& gen) {
  std::vector<Atom> out;
  for (const Term& t : terms(texts, gen)) out.emplace_back(t);
  return out;
}

inline Term term(const std::string& text) {
  VarGen gen(1000);
  return parse_term(text, gen);
}

inline Atom atom(const std::string& text) { return Atom(term(text)); }

/// Random terms over f/2, g/1, a, b, small integers and a few variables.
class RandomTerms {
 public:
  explicit RandomTerms(unsigned seed, VarId first_var = 1, int nvars = 3)
      : rng_(seed), first_var_(first_var), nvars_(nvars) {}

  Term term(int depth) {
    int pick = std::uniform_int_distribution<int>(0, depth <= 1 ? 4 : 7)(rng_);
    switch (pick) {
      case 0:
        return Term::constant("a");
      case 1:
        return Term::constant("b");
      case 2:
        return Term::integer(std::uniform_int_distribution<int>(1, 2)(rng_));
      case 3:
      case 4:
        return Term::var(first_var_ + std::uniform_int_distribution<int>(0, nvars_ - 1)(rng_));
      case 5:
        return Term::compound("g", {term(depth - 1)});
      default:
        return Term::compound("f", {term(depth - 1), term(depth - 1)});
    }
  }

  Atom atom(const std::string& pred, std::size_t arity, int depth) {
    std::vector<Term> args;
    for (std::size_t i = 0; i < arity; ++i) args.push_back(term(depth));
    return Atom(pred, std::move(args));
  }

  Substitution subst(int depth, VarId exclude_above = 0) {
    Substitution s;
    for (int i = 0; i < nvars_; ++i) {
      if (std::uniform_int_distribution<int>(0, 2)(rng_) == 0) continue;
      VarId v = first_var_ + i;
      Term t = term(depth);
      if (exclude_above && !t.ground()) continue;
      s.bind(v, t);
    }
    return s;
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  VarId first_var_;
  int nvars_;
};

}  // namespace testutil
