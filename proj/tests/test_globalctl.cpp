#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "peval/bench.hpp"
#include "peval/globalctl.hpp"
#include "peval/sldrun.hpp"

using namespace peval;
using testutil::atom;

namespace {

SpecSet set_of(const std::vector<std::string>& keys) {
  SpecSet s;
  for (std::size_t i = 0; i < keys.size(); ++i) s.add(atom(keys[i]), "k" + std::to_string(i));
  return s;
}

SpecializeConfig spec_config(BackendKind b, const std::string& wqo) {
  SpecializeConfig c;
  c.unfold.backend = b;
  c.unfold.wqo = make_wqo(wqo);
  if (wqo == "none") c.unfold.budget = 2000;
  return c;
}

/// Sorted rendered answers of `query` against `p`.
std::vector<std::string> answers(const Program& p, const std::string& query) {
  VarGen gen(p.max_var_id() + 1);
  Query q = parse_query(query, gen);
  RunResult r = run(p, q.goals, 1'000'000, gen);
  REQUIRE(r.complete);
  std::vector<std::string> out;
  for (const Substitution& s : r.answers) {
    std::string line;
    for (const auto& [name, v] : q.names) line += name + "=" + render_term(apply(s, Term::var(v))) + ";";
    out.push_back(line);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("globalctl") {

TEST_CASE("abstraction decisions") {
  VarGen gen(5000);
  SpecSet empty;
  CHECK(abstract(atom("p([1])"), empty, gen).kind == Abstraction::Kind::Add);

  SpecSet s = set_of({"q(X)", "p([1])"});
  Abstraction v = abstract(atom("p([1])"), s, gen);
  CHECK(v.kind == Abstraction::Kind::Reuse);
  CHECK(v.existing == 1);

  Abstraction inst = abstract(atom("q(f(a))"), s, gen);
  CHECK(inst.kind == Abstraction::Kind::Reuse);
  CHECK(inst.existing == 0);

  Abstraction g = abstract(atom("p([1,1])"), s, gen);
  REQUIRE(g.kind == Abstraction::Kind::Generalize);
  CHECK(g.existing == 1);
  CHECK(variant(g.atom, atom("p([1|T])")));

  CHECK(abstract(atom("p([2])"), s, gen).kind == Abstraction::Kind::Add);
  CHECK(abstract(atom("r(a)"), s, gen).kind == Abstraction::Kind::Add);
}

TEST_CASE("variant reuse is preferred over an earlier instance key") {
  VarGen gen(5000);
  SpecSet s = set_of({"p(X,Y)", "p(X,a)"});
  Abstraction r = abstract(atom("p(U,a)"), s, gen);
  CHECK(r.kind == Abstraction::Kind::Reuse);
  CHECK(r.existing == 1);
}

TEST_CASE("naive reverse append calls generalize") {
  VarGen gen(5000);
  SpecSet s = set_of({"app(A,[1],B)"});
  Abstraction g = abstract(atom("app(C,[2,1],D)"), s, gen);
  REQUIRE(g.kind == Abstraction::Kind::Generalize);
  CHECK(variant(g.atom, atom("app(X,[Y|Z],W)")));
}

TEST_CASE("quicksort on [1,1,1] specializes to one fact") {
  Program p = parse_program(":- entry qsort([1,1,1],R,[]).\n" + find_case("qsort")->source);
  ResidualProgram r = specialize(p, spec_config(BackendKind::Stacks, "hembed"));
  std::vector<Clause> reach = entry_reachable(r);
  REQUIRE(reach.size() == 1);
  CHECK(render_clause(reach[0]) == "qsort([1,1,1],[1,1,1],[]).\n");
  CHECK(r.versions.size() == 1);
  CHECK(r.versions[0].name == "qsort__1");
  CHECK_FALSE(r.budget_atom);
  CHECK(render_program(r.program) ==
        ":- entry qsort([1,1,1],A,[]).\n\nqsort([1,1,1],A,[]) :-\n    qsort__1([1,1,1],A,[]).\n"
        "qsort__1([1,1,1],[1,1,1],[]).\n");
}

TEST_CASE("version names avoid program predicates") {
  Program p = parse_program(":- entry p(a).\np(X) :- p__1(X).\np__1(a).\n");
  ResidualProgram r = specialize(p, spec_config(BackendKind::Stacks, "hembed"));
  for (const SpecVersion& v : r.versions) CHECK(v.name != "p__1");
}

TEST_CASE("builtin entries get no bridge") {
  Program p = parse_program(":- entry X is 1 + 2.\np(a).\n");
  ResidualProgram r = specialize(p, spec_config(BackendKind::Stacks, "hembed"));
  CHECK(r.program.clauses().empty());
  CHECK(r.versions.empty());
}

TEST_CASE("errors") {
  Program none = parse_program("p(a).");
  CHECK_THROWS_AS(specialize(none, spec_config(BackendKind::Stacks, "hembed")), std::invalid_argument);

  Program grow = parse_program(":- entry p(0).\np(X) :- Y is X + 1, p(Y).\n");
  SpecializeConfig cfg = spec_config(BackendKind::Stacks, "none");
  cfg.unfold.budget = 10;
  cfg.max_versions = 5;
  CHECK_THROWS_AS(specialize(grow, cfg), std::runtime_error);
}

TEST_CASE("budget is reported") {
  Program p = parse_program(":- entry loop(a).\nloop(X) :- loop(X).\n");
  SpecializeConfig cfg = spec_config(BackendKind::Stacks, "none");
  cfg.unfold.budget = 10;
  ResidualProgram r = specialize(p, cfg);
  REQUIRE(r.budget_atom);
  CHECK(*r.budget_atom == atom("loop(a)"));
}

TEST_CASE("residual programs are closed, backend independent and preserve answers") {
  for (const BenchCase& bc : corpus()) {
    std::size_t n = bc.sizes.front();
    Program p = bc.load(n);
    Registry reg = Registry::for_program(p);
    for (const std::string& wqo : {"hembed", "fullseq-hembed", "depth:8", "none"}) {
      CAPTURE(bc.name);
      CAPTURE(wqo);
      ResidualProgram ref = specialize(p, spec_config(BackendKind::Stacks, wqo));
      CHECK(closed(ref, reg));
      std::string text = render_program(ref.program);
      for (BackendKind b : {BackendKind::Trees, BackendKind::Relation})
        CHECK(render_program(specialize(p, spec_config(b, wqo)).program) == text);
      for (const std::string& q : bc.queries(n)) {
        CAPTURE(q);
        std::vector<std::string> expect = answers(p, q);
        CHECK(answers(ref.program, q) == expect);
        CHECK_FALSE(expect.empty());
      }
    }
  }
}

}  // TEST_SUITE
