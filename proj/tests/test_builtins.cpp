#include "doctest.h"
#include "helpers.hpp"

using namespace peval;
using testutil::atom;
using testutil::term;

namespace {

const BuiltinDef& def(const char* name, std::size_t arity) {
  const BuiltinDef* d = Registry::defaults().find({name, arity});
  REQUIRE(d);
  return *d;
}

std::size_t answers(const char* call) {
  Atom a = atom(call);
  return exec(*Registry::defaults().find(a.pred()), a).answers.size();
}

}  // namespace

TEST_SUITE("builtins") {

TEST_CASE("arithmetic expressions") {
  CHECK(eval_arith(term("1 + 2 * 3")) == 7);
  CHECK(eval_arith(term("7 // 2")) == 3);
  CHECK(eval_arith(term("-7 mod 3")) == 2);
  CHECK(eval_arith(term("- (4)")) == -4);
  CHECK_FALSE(eval_arith(term("X + 1")));
  CHECK_FALSE(eval_arith(term("1 // 0")));
  CHECK_FALSE(eval_arith(term("1 // (2 - 2)")));
  CHECK_FALSE(eval_arith(term("a + 1")));
  CHECK_FALSE(eval_arith(term("9223372036854775807 + 1")));
  CHECK(is_arithexpr(term("2 * 2")));
}

TEST_CASE("sufficient conditions") {
  CHECK(check_sc(def("=<", 2), atom("1 =< 2")));
  CHECK_FALSE(check_sc(def("=<", 2), atom("X =< 2")));
  CHECK(check_sc(def("is", 2), atom("X is 1 + 2")));
  CHECK_FALSE(check_sc(def("is", 2), atom("X is Y + 2")));
  CHECK(check_sc(def("=", 2), atom("X = f(Y)")));
  CHECK(check_sc(def("between", 3), atom("between(1, 3, X)")));
  CHECK_FALSE(check_sc(def("between", 3), atom("between(1, 3, f(X))")));
  CHECK_FALSE(check_sc(def("write", 1), atom("write(a)")));
  CHECK_FALSE(check_sc(def("nl", 0), atom("nl")));
  CHECK(check_sc(def("ground", 1), atom("ground(f(a))")));
  CHECK_FALSE(check_sc(def("ground", 1), atom("ground(f(X))")));
}

TEST_CASE("executors") {
  CHECK(answers("1 =< 2") == 1);
  CHECK(answers("2 =< 1") == 0);
  CHECK(answers("2 > 1") == 1);
  CHECK(answers("1 >= 1") == 1);
  CHECK(answers("1 < 1") == 0);
  CHECK(answers("2 =:= 1 + 1") == 1);
  CHECK(answers("2 =\\= 1 + 1") == 0);
  CHECK(answers("3 is 1 + 2") == 1);
  CHECK(answers("4 is 1 + 2") == 0);
  CHECK(answers("f(a) = f(b)") == 0);
  CHECK(answers("between(1, 4, X)") == 4);
  CHECK(answers("between(1, 4, 7)") == 0);
  CHECK(answers("between(3, 1, X)") == 0);

  Atom is = atom("X is 2 * 3");
  SubstSeq s = exec(def("is", 2), is);
  REQUIRE(s.answers.size() == 1);
  CHECK(apply(s.answers[0], is.arg(0)) == Term::integer(6));
  CHECK(s.tail == SubstSeq::Tail::Complete);
}

TEST_CASE("executors are sound when the condition holds (random)") {
  // Whenever the sufficient condition holds the executor does not throw,
  // and every answer makes the call true when re-executed.
  std::mt19937 rng(31);
  auto small = [&] { return std::uniform_int_distribution<int>(-3, 3)(rng); };
  const char* ops[] = {"=<", "<", ">", ">=", "=:=", "=\\=", "is"};
  int executed = 0;
  for (int i = 0; i < 1000; ++i) {
    const char* op = ops[i % 7];
    std::string l = std::to_string(small()), r = std::to_string(small()) + " + " + std::to_string(small());
    if (i % 3 == 0) l = "X";
    if (i % 11 == 0) r = "Y";
    Atom call = atom(l + " " + op + " " + r);
    const BuiltinDef& b = def(op, 2);
    if (!check_sc(b, call)) continue;
    ++executed;
    SubstSeq seq;
    CHECK_NOTHROW(seq = exec(b, call));
    for (const Substitution& th : seq.answers) {
      Atom inst = apply(th, call);
      CHECK(check_sc(b, inst));
      CHECK(exec(b, inst).answers.size() == 1);
    }
  }
  CHECK(executed > 400);
}

TEST_CASE("eval assertions replace defaults") {
  Program p = parse_program(":- eval X > Y : ground(X), ground(Y).\np(a).");
  Registry r = Registry::for_program(p);
  CHECK(check_sc(*r.find({">", 2}), atom("a > b")));
  CHECK_FALSE(check_sc(*Registry::defaults().find({">", 2}), atom("a > b")));
  Registry copy = Registry::defaults();
  EvalAssertion bad{atom("foo(X)"), SCExpr::always(), 0};
  CHECK_THROWS_AS(copy.override_assertion(bad), std::invalid_argument);
}

}  // TEST_SUITE
