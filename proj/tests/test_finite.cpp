#include <catch2/catch_amalgamated.hpp>

#include "zigzag/finite_poset.hpp"

using namespace zigzag;

TEST_CASE("finite poset files parse, validate, and round-trip") {
  std::string text =
      "poset v1\n"
      "nodes a b c d\n"
      "leq a b\n"
      "leq c d\n"
      "invol a d\n"
      "invol b c\n";
  FinitePoset p = FinitePoset::parse(text);
  CHECK(p.size() == 4);
  CHECK(p.leq(p.index_of("a"), p.index_of("b")));
  CHECK_FALSE(p.leq(p.index_of("b"), p.index_of("a")));
  CHECK(p.involution(p.index_of("a")) == p.index_of("d"));
  FinitePoset again = FinitePoset::parse(p.serialize());
  CHECK(again.size() == p.size());
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) CHECK(p.leq(i, j) == again.leq(i, j));
}

TEST_CASE("broken poset files are rejected with load errors") {
  // non-involutive map: a -> b but b -> c
  CHECK_THROWS_AS(FinitePoset::parse("nodes a b c\ninvol a b\ninvol b c\ninvol c a\n"), ParseError);
  // order-reversal violated: a <= b but d <= c is missing
  CHECK_THROWS_AS(FinitePoset::parse("nodes a b c d\nleq a b\ninvol a c\ninvol b d\n"),
                  ParseError);
  // antisymmetry violated
  CHECK_THROWS_AS(FinitePoset::parse("nodes a b\nleq a b\nleq b a\ninvol a a\ninvol b b\n"),
                  ParseError);
  CHECK_THROWS_AS(FinitePoset::parse("nodes a b\nleq a c\ninvol a b\n"), ParseError);
  CHECK_THROWS_AS(FinitePoset::parse(""), ParseError);
}

TEST_CASE("discretized circle posets satisfy the backend laws") {
  for (int n : {3, 4, 5, 6}) {
    FinitePoset p = circle_poset(n);
    CHECK(p.size() == n * (n - 1));
    for (int i = 0; i < p.size(); ++i) {
      CHECK(p.involution(p.involution(i)) == i);
      for (int j = 0; j < p.size(); ++j)
        if (p.leq(i, j)) CHECK(p.leq(p.involution(j), p.involution(i)));
    }
    // GA0 on arcs
    for (int i = 0; i < p.size(); ++i) CHECK_FALSE(p.cap_witness(i, p.involution(i)).has_value());
  }
}

TEST_CASE("spread maps validate monotonicity") {
  // valid: chain a <= b <= c with spread pushing up one level
  std::string good =
      "nodes a b c ai bi ci\n"
      "leq a b\nleq b c\nleq ci bi\nleq bi ai\n"
      "invol a ai\ninvol b bi\ninvol c ci\n"
      "spread a b\nspread b c\nspread c c\n";
  CHECK_NOTHROW(FinitePoset::parse(good));
  // invalid: spread not increasing
  std::string bad =
      "nodes a b ai bi\n"
      "leq a b\nleq bi ai\n"
      "invol a ai\ninvol b bi\n"
      "spread b a\n";
  CHECK_THROWS_AS(FinitePoset::parse(bad), ParseError);
}
