#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace peval;
using testutil::atom;
using testutil::term;

TEST_SUITE("embedding") {

TEST_CASE("embedding examples") {
  CHECK(embeds_term(term("X"), term("Y")));
  CHECK(embeds_term(term("X"), term("f(Y)")));
  CHECK_FALSE(embeds_term(term("X"), term("f(a)")));
  CHECK(embeds_term(term("f(a)"), term("g(f(h(a)))")));
  CHECK(embeds_term(term("f(a,b)"), term("f(g(a),b)")));
  CHECK_FALSE(embeds_term(term("f(a,b)"), term("f(b,a)")));
  CHECK(embeds_term(term("[1]"), term("[2,1]")));
  CHECK_FALSE(embeds_term(term("1"), term("2")));
  CHECK_FALSE(embeds_term(term("f(a)"), term("a")));
  CHECK(embeds_atom(atom("p([1],1,A,B)"), atom("p([1],1,C,D)")));
  CHECK_FALSE(embeds_atom(atom("p(a)"), atom("q(a)")));
  CHECK_FALSE(embeds_atom(atom("p(a)"), atom("p(a,b)")));
}

TEST_CASE("quicksort ancestors") {
  // The second recursive call on the same list is embedded; the first,
  // shorter list is not.
  CHECK(embeds_atom(atom("qsort([1,1],R,[1])"), atom("qsort([1],R1,[1,1])")) == false);
  CHECK(embeds_atom(atom("partition([1,1],1,L1,L2)"), atom("partition([1],1,L3,L4)")) == false);
  CHECK(embeds_atom(atom("partition([1],1,L1,L2)"), atom("partition([1],1,L3,L4)")));
  CHECK(embeds_atom(atom("qsort([1],R,T)"), atom("qsort([1,1],R2,T2)")));
}

TEST_CASE("agrees with the deletion oracle (random)") {
  testutil::RandomTerms r(21, 1, 2);
  int yes = 0;
  for (int i = 0; i < 5000; ++i) {
    Term s = r.term(3), t = r.term(4);
    bool got = embeds_term(s, t);
    CHECK(got == testutil::embeds_by_deletion(s, t));
    yes += got;
  }
  CHECK(yes > 100);
}

TEST_CASE("memoized path on large terms") {
  // Sizes above the memo threshold.
  std::string a = "X", b = "Y";
  for (int i = 0; i < 40; ++i) {
    a = "f(" + a + ",g(" + std::to_string(i % 2 + 1) + "))";
    b = "f(g(" + b + "),g(" + std::to_string(i % 2 + 1) + "))";
  }
  std::string c = "f(a," + b + ")";
  Term s = term(a), t = term(c);
  REQUIRE(s.size() * t.size() > 4096);
  CHECK(embeds_term(s, t));
  CHECK_FALSE(embeds_term(t, s));
}

TEST_CASE("reflexive and closed under diving (random)") {
  testutil::RandomTerms r(22, 1, 3);
  for (int i = 0; i < 2000; ++i) {
    Term s = r.term(4), t = r.term(3);
    CHECK(embeds_term(s, s));
    if (embeds_term(s, t)) {
      CHECK(embeds_term(s, Term::compound("g", {t})));
      CHECK(embeds_term(s, Term::compound("f", {r.term(2), t})));
    }
  }
}

TEST_CASE("transitive (random)") {
  testutil::RandomTerms r(23, 1, 2);
  int chains = 0;
  for (int i = 0; i < 4000; ++i) {
    Term a = r.term(2), b = r.term(3), c = r.term(4);
    if (embeds_term(a, b) && embeds_term(b, c)) {
      ++chains;
      CHECK(embeds_term(a, c));
    }
  }
  CHECK(chains > 10);
}

TEST_CASE("admissibility is anti-monotone in the ancestor set (random)") {
  testutil::RandomTerms r(24, 1, 3);
  HEmbedWqo w;
  for (int i = 0; i < 1000; ++i) {
    std::vector<Atom> anc;
    for (int k = 0; k < 4; ++k) anc.push_back(r.atom("p", 2, 2));
    Atom a = r.atom("p", 2, 3);
    std::span<const Atom> all(anc);
    bool full = admissible(a, all, w);
    for (std::size_t n = 0; n <= anc.size(); ++n)
      if (full) CHECK(admissible(a, all.first(n), w));
    CHECK(admissible(a, {}, w));
  }
}

TEST_CASE("incomparable ancestors never block") {
  HEmbedWqo w;
  std::vector<Atom> anc{atom("q(X)"), atom("p(X,Y)")};
  CHECK(admissible(atom("p(a)"), anc, w));
}

TEST_CASE("wqo plug-ins") {
  auto h = make_wqo("hembed");
  auto n = make_wqo("none");
  auto d = make_wqo("depth:3");
  auto f = make_wqo("fullseq-hembed");
  CHECK(h->name() == "hembed");
  CHECK(n->name() == "none");
  CHECK(d->name() == "depth:3");
  CHECK(f->name() == "fullseq-hembed");
  CHECK(f->full_sequence());
  CHECK_FALSE(h->full_sequence());
  CHECK_THROWS_AS(make_wqo("depth:"), std::invalid_argument);
  CHECK_THROWS_AS(make_wqo("depth:x"), std::invalid_argument);
  CHECK_THROWS_AS(make_wqo("bogus"), std::invalid_argument);

  Atom p1 = atom("p(a)"), p2 = atom("p(f(a))"), p3 = atom("p(f(f(a)))");
  CHECK(h->leq(p1, p2));
  CHECK_FALSE(n->leq(p1, p1));
  CHECK_FALSE(d->leq(p1, p2));
  CHECK(d->leq(p1, p3));
  CHECK(d->leq(p1, atom("p(a)")));
}

}  // TEST_SUITE
