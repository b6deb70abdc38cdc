#include "peval/builtins.hpp"

#include <cassert>
#include <stdexcept>

namespace peval {

namespace {

std::optional<std::int64_t> eval_checked(const Term& t) {
  if (t.is_int()) return t.int_value();
  if (!t.is_struct()) return std::nullopt;
  const std::string& f = t.name();
  if (t.arity() == 1 && f == "-") {
    auto v = eval_checked(t.arg(0));
    if (!v || *v == INT64_MIN) return std::nullopt;
    return -*v;
  }
  if (t.arity() != 2) return std::nullopt;
  auto l = eval_checked(t.arg(0));
  if (!l) return std::nullopt;
  auto r = eval_checked(t.arg(1));
  if (!r) return std::nullopt;
  std::int64_t out = 0;
  if (f == "+") {
    if (__builtin_add_overflow(*l, *r, &out)) return std::nullopt;
  } else if (f == "-") {
    if (__builtin_sub_overflow(*l, *r, &out)) return std::nullopt;
  } else if (f == "*") {
    if (__builtin_mul_overflow(*l, *r, &out)) return std::nullopt;
  } else if (f == "//") {
    if (*r == 0 || (*l == INT64_MIN && *r == -1)) return std::nullopt;
    out = *l / *r;
  } else if (f == "mod") {
    if (*r == 0 || (*l == INT64_MIN && *r == -1)) return std::nullopt;
    out = *l % *r;
    if (out != 0 && ((out < 0) != (*r < 0))) out += *r;
  } else {
    return std::nullopt;
  }
  return out;
}

bool eval_check(const Atom& c) {
  const std::string& n = c.name();
  if (c.arity() == 0) return n == "true";
  if (c.arity() != 1) return false;
  const Term& x = c.arg(0);
  if (n == "arithexpr") return is_arithexpr(x);
  if (n == "ground") return x.ground();
  if (n == "var") return x.is_var();
  if (n == "nonvar") return !x.is_var();
  if (n == "integer") return x.is_int();
  return false;
}

bool eval_sc(const SCExpr& e, const Substitution& s) {
  switch (e.kind) {
    case SCExpr::Kind::And:
      return eval_sc(*e.left, s) && eval_sc(*e.right, s);
    case SCExpr::Kind::Or:
      return eval_sc(*e.left, s) || eval_sc(*e.right, s);
    case SCExpr::Kind::Check:
      return eval_check(apply(s, *e.check));
  }
  return false;
}

Atom head2(const char* name) {
  return Atom(name, {Term::var(1, "A"), Term::var(2, "B")});
}

SCExpr both_arith() {
  return SCExpr::make_and(SCExpr::make_check(Atom("arithexpr", {Term::var(1, "A")})),
                          SCExpr::make_check(Atom("arithexpr", {Term::var(2, "B")})));
}

template <class Cmp>
BuiltinDef comparison(const char* name, Cmp cmp) {
  return {PredKey{name, 2}, head2(name), both_arith(), [cmp](const Atom& call) {
            auto l = eval_arith(call.arg(0));
            auto r = eval_arith(call.arg(1));
            assert(l && r);
            return cmp(*l, *r) ? SubstSeq::identity() : SubstSeq::none();
          }};
}

SubstSeq unify_answer(const Term& a, const Term& b) {
  auto s = mgu(a, b);
  if (!s) return SubstSeq::none();
  return {{std::move(*s)}, SubstSeq::Tail::Complete};
}

Registry make_defaults() {
  Registry r;
  r.add(comparison("=<", [](auto a, auto b) { return a <= b; }));
  r.add(comparison("<", [](auto a, auto b) { return a < b; }));
  r.add(comparison(">", [](auto a, auto b) { return a > b; }));
  r.add(comparison(">=", [](auto a, auto b) { return a >= b; }));
  r.add(comparison("=:=", [](auto a, auto b) { return a == b; }));
  r.add(comparison("=\\=", [](auto a, auto b) { return a != b; }));

  r.add({PredKey{"is", 2}, head2("is"),
         SCExpr::make_check(Atom("arithexpr", {Term::var(2, "B")})), [](const Atom& call) {
           auto v = eval_arith(call.arg(1));
           assert(v);
           return unify_answer(call.arg(0), Term::integer(*v));
         }});

  r.add({PredKey{"=", 2}, head2("="), SCExpr::always(),
         [](const Atom& call) { return unify_answer(call.arg(0), call.arg(1)); }});

  Atom g("ground", {Term::var(1, "X")});
  r.add({PredKey{"ground", 1}, g, SCExpr::make_check(Atom("ground", {Term::var(1, "X")})),
         [](const Atom& call) {
           return call.arg(0).ground() ? SubstSeq::identity() : SubstSeq::none();
         }});

  // between(L, H, X): enumerates L..H in order.
  Atom bh("between", {Term::var(1, "L"), Term::var(2, "H"), Term::var(3, "X")});
  SCExpr bsc = SCExpr::make_and(
      SCExpr::make_and(SCExpr::make_check(Atom("arithexpr", {Term::var(1, "L")})),
                       SCExpr::make_check(Atom("arithexpr", {Term::var(2, "H")}))),
      SCExpr::make_or(SCExpr::make_check(Atom("var", {Term::var(3, "X")})),
                      SCExpr::make_check(Atom("integer", {Term::var(3, "X")}))));
  r.add({PredKey{"between", 3}, bh, bsc, [](const Atom& call) {
           auto lo = eval_arith(call.arg(0));
           auto hi = eval_arith(call.arg(1));
           assert(lo && hi);
           SubstSeq out;
           for (std::int64_t i = *lo; i <= *hi; ++i) {
             auto s = mgu(call.arg(2), Term::integer(i));
             if (s) out.answers.push_back(std::move(*s));
             if (i == INT64_MAX) break;
           }
           return out;
         }});

  auto never = [](const Atom&) -> SubstSeq {
    throw std::logic_error("side-effecting builtin executed at specialization time");
  };
  r.add({PredKey{"write", 1}, Atom("write", {Term::var(1, "X")}), SCExpr::never(), never});
  r.add({PredKey{"nl", 0}, Atom("nl", {}), SCExpr::never(), never});
  return r;
}

}  // namespace

std::optional<std::int64_t> eval_arith(const Term& t) {
  if (!t.ground()) return std::nullopt;
  return eval_checked(t);
}

bool is_arithexpr(const Term& t) { return eval_arith(t).has_value(); }

const Registry& Registry::defaults() {
  static const Registry r = make_defaults();
  return r;
}

Registry Registry::for_program(const Program& p) {
  Registry r = defaults();
  for (const auto& [key, a] : p.evals()) r.override_assertion(a);
  return r;
}

void Registry::add(BuiltinDef def) {
  PredKey key = def.pred;
  defs_.insert_or_assign(std::move(key), std::move(def));
}

void Registry::override_assertion(const EvalAssertion& a) {
  auto it = defs_.find(a.head.pred());
  if (it == defs_.end())
    throw std::invalid_argument("eval assertion for non-builtin predicate " + a.head.pred().str());
  it->second.head = a.head;
  it->second.condition = a.condition;
}

const BuiltinDef* Registry::find(const PredKey& p) const {
  auto it = defs_.find(p);
  return it == defs_.end() ? nullptr : &it->second;
}

bool check_sc(const BuiltinDef& b, const Atom& call) {
  // Assertion heads may share variable ids with the call; the head is
  // matched one-way so its variables act as pattern variables only.
  auto s = match(b.head.term(), call.term());
  if (!s) return false;
  return eval_sc(b.condition, *s);
}

SubstSeq exec(const BuiltinDef& b, const Atom& call) { return b.exec(call); }

}  // namespace peval
