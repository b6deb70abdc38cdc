#include "peval/sldrun.hpp"

#include "peval/parser.hpp"

namespace peval {

namespace {

struct Frame {
  std::vector<Atom> goal;  // reversed: back() is the leftmost atom
  Term answer;             // the query variables as one tuple
};

Frame child(const Frame& f, std::span<const Atom> body, const Substitution& theta) {
  Frame out{{}, apply(theta, f.answer)};
  out.goal.reserve(f.goal.size() - 1 + body.size());
  for (std::size_t i = 0; i + 1 < f.goal.size(); ++i) out.goal.push_back(apply(theta, f.goal[i]));
  for (auto it = body.rbegin(); it != body.rend(); ++it) out.goal.push_back(apply(theta, *it));
  return out;
}

}  // namespace

RunResult run(const Program& p, const Registry& reg, std::span<const Atom> query,
              std::uint64_t budget, VarGen& gen) {
  gen.reserve_above(p.max_var_id());
  std::vector<VarId> qvars;
  for (const Atom& a : query) collect_vars(a.term(), qvars);
  for (VarId v : qvars) gen.reserve_above(v);
  std::vector<Term> tuple;
  for (VarId v : qvars) tuple.push_back(Term::var(v));

  RunResult res;
  std::vector<Frame> stack;
  stack.push_back({{query.rbegin(), query.rend()}, Term::compound("ans", tuple)});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.goal.empty()) {
      Substitution s;
      for (std::size_t i = 0; i < qvars.size(); ++i) s.bind(qvars[i], f.answer.arg(i));
      res.answers.push_back(std::move(s));
      continue;
    }
    if (res.steps >= budget) {
      res.complete = false;
      break;
    }
    const Atom& a = f.goal.back();
    std::vector<Frame> kids;
    if (const BuiltinDef* b = reg.find(a.pred())) {
      if (!check_sc(*b, a))
        throw SldError("builtin called outside its evaluable condition: " + render_atom(a));
      for (const Substitution& theta : exec(*b, a).answers) {
        ++res.steps;
        kids.push_back(child(f, {}, theta));
      }
    } else {
      for (std::size_t idx : p.clauses_for(a.pred())) {
        Clause c = rename_apart(p.clauses()[idx], gen);
        auto theta = mgu(a, c.head);
        if (!theta) continue;
        ++res.steps;
        kids.push_back(child(f, c.body, *theta));
      }
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(std::move(*it));
  }
  return res;
}

RunResult run(const Program& p, std::span<const Atom> query, std::uint64_t budget, VarGen& gen) {
  return run(p, Registry::for_program(p), query, budget, gen);
}

}  // namespace peval
