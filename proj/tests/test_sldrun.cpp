#include "doctest.h"
#include "helpers.hpp"
#include "peval/sldrun.hpp"

using namespace peval;

namespace {

struct Answers {
  std::vector<std::string> lines;
  bool complete;
};

Answers solve(const std::string& program, const std::string& query, std::uint64_t budget = 100000) {
  Program p = parse_program(program);
  VarGen gen(p.max_var_id() + 1);
  Query q = parse_query(query, gen);
  RunResult r = run(p, q.goals, budget, gen);
  Answers out{{}, r.complete};
  for (const Substitution& s : r.answers) {
    std::string line;
    for (const auto& [name, v] : q.names)
      line += (line.empty() ? "" : " ") + name + "=" + render_term(apply(s, Term::var(v)));
    out.lines.push_back(line);
  }
  return out;
}

const char* kApp = "app([],L,L).\napp([H|T],L,[H|R]) :- app(T,L,R).\n";

}  // namespace

TEST_SUITE("sldrun") {

TEST_CASE("answers in depth-first clause order") {
  Answers a = solve(kApp, "app(X,Y,[1,2])");
  CHECK(a.complete);
  CHECK(a.lines == std::vector<std::string>{"X=[] Y=[1,2]", "X=[1] Y=[2]", "X=[1,2] Y=[]"});
}

TEST_CASE("conjunctions and builtins") {
  Answers a = solve(kApp, "app(X,[3],[1,2,3]), Y is 2 * 2, between(1, Y, Z), Z > 2");
  CHECK(a.lines == std::vector<std::string>{"X=[1,2] Y=4 Z=3", "X=[1,2] Y=4 Z=4"});
}

TEST_CASE("failure and undefined predicates") {
  CHECK(solve(kApp, "app([1],[2],[3])").lines.empty());
  CHECK(solve(kApp, "nothere(X)").lines.empty());
  CHECK(solve(kApp, "X = f(X)").lines.empty());
}

TEST_CASE("ground success prints no bindings") {
  Answers a = solve(kApp, "app([1],[2],[1,2])");
  REQUIRE(a.lines.size() == 1);
  CHECK(a.lines[0].empty());
}

TEST_CASE("budget") {
  Answers a = solve("loop :- loop.\n", "loop", 500);
  CHECK_FALSE(a.complete);
  CHECK(a.lines.empty());
}

TEST_CASE("non-evaluable builtin raises") {
  Program p = parse_program(kApp);
  VarGen gen(p.max_var_id() + 1);
  Query q = parse_query("X =< 2", gen);
  CHECK_THROWS_AS(run(p, q.goals, 100, gen), SldError);
}

TEST_CASE("answers restrict to query variables") {
  Program p = parse_program(kApp);
  VarGen gen(p.max_var_id() + 1);
  Query q = parse_query("app([1],[2|T],R)", gen);
  RunResult r = run(p, q.goals, 100, gen);
  REQUIRE(r.answers.size() == 1);
  for (const auto& [v, t] : r.answers[0].bindings()) {
    bool known = false;
    for (const auto& [n, id] : q.names) known = known || id == v;
    CHECK(known);
  }
  CHECK(r.steps > 0);
}

}  // TEST_SUITE
