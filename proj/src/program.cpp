#include "peval/program.hpp"

#include <stdexcept>

namespace peval {

Clause rename_apart(const Clause& c, VarGen& gen) {
  std::map<VarId, Term> mapping;
  Clause out{Atom(rename(c.head.term(), gen, mapping)), {}, c.line};
  out.body.reserve(c.body.size());
  for (const Atom& b : c.body) out.body.emplace_back(rename(b.term(), gen, mapping));
  return out;
}

SCExpr SCExpr::make_check(Atom a) {
  SCExpr e;
  e.kind = Kind::Check;
  e.check = std::move(a);
  return e;
}

SCExpr SCExpr::make_and(SCExpr l, SCExpr r) {
  SCExpr e;
  e.kind = Kind::And;
  e.left = std::make_shared<const SCExpr>(std::move(l));
  e.right = std::make_shared<const SCExpr>(std::move(r));
  return e;
}

SCExpr SCExpr::make_or(SCExpr l, SCExpr r) {
  SCExpr e = make_and(std::move(l), std::move(r));
  e.kind = Kind::Or;
  return e;
}

SCExpr SCExpr::always() { return make_check(Atom("true", {})); }
SCExpr SCExpr::never() { return make_check(Atom("fail", {})); }

void Program::add_clause(Clause c) {
  for (VarId v : vars_of(clause_term(c))) note_var_id(v);
  index_[c.head.pred()].push_back(clauses_.size());
  clauses_.push_back(std::move(c));
}

void Program::add_eval(EvalAssertion e) {
  PredKey key = e.head.pred();
  if (evals_.contains(key))
    throw std::invalid_argument("duplicate eval assertion for " + key.str());
  evals_.emplace(std::move(key), std::move(e));
}

std::span<const std::size_t> Program::clauses_for(const PredKey& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return {};
  return it->second;
}

std::vector<PredKey> Program::predicates() const {
  std::vector<PredKey> out;
  out.reserve(index_.size());
  for (const auto& [k, v] : index_) out.push_back(k);
  return out;
}

Term clause_term(const Clause& c) {
  if (c.body.empty()) return c.head.term();
  Term body = c.body.back().term();
  for (std::size_t i = c.body.size() - 1; i-- > 0;)
    body = Term::compound(",", {c.body[i].term(), body});
  return Term::compound(":-", {c.head.term(), body});
}

namespace {

Term sc_term(const SCExpr& e) {
  switch (e.kind) {
    case SCExpr::Kind::And:
      return Term::compound(",", {sc_term(*e.left), sc_term(*e.right)});
    case SCExpr::Kind::Or:
      return Term::compound(";", {sc_term(*e.left), sc_term(*e.right)});
    case SCExpr::Kind::Check:
      return e.check->term();
  }
  return Term::constant("true");
}

}  // namespace

bool structurally_equal(const Program& a, const Program& b) {
  if (a.clauses().size() != b.clauses().size() || a.entries().size() != b.entries().size() ||
      a.evals().size() != b.evals().size())
    return false;
  for (std::size_t i = 0; i < a.clauses().size(); ++i)
    if (!variant(clause_term(a.clauses()[i]), clause_term(b.clauses()[i]))) return false;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    if (!variant(a.entries()[i], b.entries()[i])) return false;
  auto ia = a.evals().begin();
  auto ib = b.evals().begin();
  for (; ia != a.evals().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    Term ta = Term::compound(":", {ia->second.head.term(), sc_term(ia->second.condition)});
    Term tb = Term::compound(":", {ib->second.head.term(), sc_term(ib->second.condition)});
    if (!variant(ta, tb)) return false;
  }
  return true;
}

}  // namespace peval
