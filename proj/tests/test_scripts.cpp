#include <catch2/catch_amalgamated.hpp>

#include "zigzag/prover.hpp"
#include "zigzag/script.hpp"

using namespace zigzag;

namespace {

// interval net with a localized sector pair, a unitary between them, and
// generators on both sides of r
NetSpec net() {
  return NetSpec::parse(
      "name testnet\n"
      "backend interval rational\n"
      "spread 0\n"
      "region p interval(0,180)\n"
      "region r interval(10,60)\n"
      "region xq interval(120,170)\n"
      "region zq interval(20,50)\n"
      "sector P localized r\n"
      "sector Q localized r\n"
      "sector Amb ambient\n"
      "sector One identity\n"
      "unitary u : P -> Q region r\n"
      "unitary v : P -> Amb region p\n"
      "gen x region xq\n"
      "gen z region zq\n");
}

Term tp(const std::string& s) { return parse_term(s); }

Verdict run(const NetSpec& ns, const ProofScript& sc) {
  auto ctx = make_region_ctx(ns);
  return run_script(ns, *ctx, sc);
}

}  // namespace

TEST_CASE("single rewrite steps do what the rules say") {
  NetSpec ns = net();
  auto ctx = make_region_ctx(ns);

  SECTION("loc-strip: application on a disjoint region is the identity") {
    Step st{"loc-strip", Pos{{}, 0}, {}, {}};
    auto r = apply_step(ns, *ctx, tp("(prod (ap P p (prod x)))"), st);
    CHECK(term_str(r.term) == "(prod x)");
    REQUIRE(r.needed.size() == 1);
    CHECK(r.needed[0].str() == "disjoint(xq,r)");
  }
  SECTION("iso lowers the outer region to the argument's region") {
    Step st{"iso", Pos{{}, 0}, {{"to", "xq"}}, {}};
    auto r = apply_step(ns, *ctx, tp("(prod (ap P p (prod x)))"), st);
    CHECK(term_str(r.term) == "(prod (ap P xq (prod x)))");
    CHECK(r.needed[0].str() == "leq(xq,xq)");
  }
  SECTION("comm swaps factors with disjoint memberships") {
    Step st{"comm", Pos{{}, 0}, {}, {}};
    auto r = apply_step(ns, *ctx, tp("(prod x z)"), st);
    CHECK(term_str(r.term) == "(prod z x)");
    // and refuses overlapping ones
    CHECK_THROWS_AS(apply_step(ns, *ctx, tp("(prod z (ap P r (prod z)))"), st), RuleFailure);
  }
  SECTION("int slides an intertwiner across an application") {
    Step st{"int", Pos{{}, 0}, {}, {}};
    auto r = apply_step(ns, *ctx, tp("(prod u (ap P p (prod z)))"), st);
    CHECK(term_str(r.term) == "(prod (ap Q p (prod z)) u)");
    auto r2 = apply_step(ns, *ctx, tp("(prod (ap Q p (prod z)) u)"), st);
    CHECK(term_str(r2.term) == "(prod u (ap P p (prod z)))");
    // starred symbol slides with the sectors exchanged
    auto r3 = apply_step(ns, *ctx, tp("(prod (* u) (ap Q p (prod z)))"), st);
    CHECK(term_str(r3.term) == "(prod (ap P p (prod z)) (* u))");
  }
  SECTION("unit-del and unit-ins cancel unitary pairs") {
    Step del{"unit-del", Pos{{}, 0}, {}, {}};
    auto r = apply_step(ns, *ctx, tp("(prod u (* u) x)"), del);
    CHECK(term_str(r.term) == "(prod x)");
    Step ins{"unit-ins", Pos{{}, 1}, {{"factor", "(* v)"}, {"order", "fs"}}, {}};
    auto r2 = apply_step(ns, *ctx, tp("(prod x)"), ins);
    CHECK(term_str(r2.term) == "(prod x (* v) v)");
  }
  SECTION("hom rules merge, split, and absorb units") {
    Step merge{"hom-merge", Pos{{}, 0}, {}, {}};
    auto r = apply_step(ns, *ctx, tp("(prod (ap P p (prod z)) (ap P p (prod x)))"), merge);
    CHECK(term_str(r.term) == "(prod (ap P p (prod z x)))");
    Step split{"hom-split", Pos{{}, 0}, {{"split", "1"}}, {}};
    auto r2 = apply_step(ns, *ctx, r.term, split);
    CHECK(term_str(r2.term) == "(prod (ap P p (prod z)) (ap P p (prod x)))");
    Step unit{"hom-unit", Pos{{}, 0}, {}, {}};
    auto r3 = apply_step(ns, *ctx, tp("(prod (ap P p (prod)) x)"), unit);
    CHECK(term_str(r3.term) == "(prod x)");
  }
  SECTION("star-push moves a star into the argument") {
    Step st{"star-push", Pos{{}, 0}, {}, {}};
    auto r = apply_step(ns, *ctx, tp("(prod (* (ap P p (prod z x))))"), st);
    CHECK(term_str(r.term) == "(prod (ap P p (prod (* x) (* z))))");
  }
  SECTION("rewrites apply at nested positions") {
    Step st{"comm", Pos{{0}, 0}, {}, {}};
    auto r = apply_step(ns, *ctx, tp("(prod (ap P p (prod x z)))"), st);
    CHECK(term_str(r.term) == "(prod (ap P p (prod z x)))");
  }
}

TEST_CASE("scripts replay, reject, and pinpoint the failing step") {
  NetSpec ns = net();
  ProofScript sc;
  sc.netspec_name = "testnet";
  sc.lhs = tp("(prod (ap P p (prod x)))");
  sc.rhs = tp("(prod x)");
  Step st{"loc-strip", Pos{{}, 0}, {}, {Fact::parse("disjoint(xq,r)")}};
  sc.steps.push_back(st);
  CHECK(run(ns, sc).accepted);

  // empty script with syntactically equal endpoints is accepted
  ProofScript eq;
  eq.lhs = eq.rhs = tp("(prod x)");
  CHECK(run(ns, eq).accepted);

  // missing declaration is rejected
  ProofScript missing = sc;
  missing.steps[0].requires_.clear();
  Verdict v = run(ns, missing);
  CHECK_FALSE(v.accepted);
  CHECK(v.failing_step == 1);
  CHECK(v.reason.find("undeclared") != std::string::npos);

  // wrong final term is rejected
  ProofScript wrong = sc;
  wrong.rhs = tp("(prod z)");
  v = run(ns, wrong);
  CHECK_FALSE(v.accepted);
  CHECK(v.reason.find("final term differs") != std::string::npos);

  // mutation: the negated side condition fails at the right step
  auto mutants = mutate_script(sc);
  REQUIRE(mutants.size() == 1);
  v = run(ns, mutants[0]);
  CHECK_FALSE(v.accepted);
  CHECK(v.failing_step == 1);
  CHECK(v.reason.find("does not hold") != std::string::npos);

  // scripts round-trip through their text form
  ProofScript parsed = ProofScript::parse(sc.serialize());
  CHECK(parsed.serialize() == sc.serialize());
  CHECK(run(ns, parsed).accepted);
}

TEST_CASE("a broken netspec makes the same script fail at the comm step") {
  NetSpec ns = net();
  ProofScript sc;
  sc.lhs = tp("(prod x z)");
  sc.rhs = tp("(prod z x)");
  sc.steps.push_back(Step{"comm", Pos{{}, 0}, {}, {Fact::parse("disjoint(zq,xq)")}});
  CHECK(run(ns, sc).accepted);
  // move z's region so it overlaps x's: the declared condition now fails
  NetSpec broken = ns;
  for (auto& [k, v] : broken.regions)
    if (k == "zq") v = "interval(100,160)";
  Verdict v = run(broken, sc);
  CHECK_FALSE(v.accepted);
  CHECK(v.failing_step == 1);
}

TEST_CASE("check_equal proves, refutes, and honestly gives up") {
  NetSpec ns = net();
  auto ctx = make_region_ctx(ns);

  // u u* = 1
  auto r = check_equal(ns, *ctx, tp("(prod u (* u))"), tp("(prod)"));
  CHECK(r.verdict == EqVerdict::Proved);
  REQUIRE(r.script);
  CHECK(run_script(ns, *ctx, *r.script).accepted);

  // x y with overlapping regions stays unknown
  NetSpec ns2 = net();
  for (auto& [k, v2] : ns2.regions)
    if (k == "zq") v2 = "interval(100,160)";
  auto ctx2 = make_region_ctx(ns2);
  auto r2 = check_equal(ns2, *ctx2, tp("(prod x z)"), tp("(prod z x)"));
  CHECK(r2.verdict == EqVerdict::Unknown);

  // different generator content is refuted by the invariant
  auto r3 = check_equal(ns, *ctx, tp("(prod x)"), tp("(prod x x)"));
  CHECK(r3.verdict == EqVerdict::RefutedByInvariant);

  // reflexivity always proves, with a replayable (possibly empty) script
  auto r4 = check_equal(ns, *ctx, tp("(prod x (ap P p (prod z)) u)"),
                        tp("(prod x (ap P p (prod z)) u)"));
  CHECK(r4.verdict == EqVerdict::Proved);
  CHECK(run_script(ns, *ctx, *r4.script).accepted);

  // symmetry of proved pairs
  auto r5 = check_equal(ns, *ctx, tp("(prod)"), tp("(prod u (* u))"));
  CHECK(r5.verdict == EqVerdict::Proved);
  CHECK(run_script(ns, *ctx, *r5.script).accepted);
}

TEST_CASE("check_equal proves the reverse-braiding cancellation") {
  // beta = v sigma^s_p(u) u* pi_p(v)*; the reverse formula composes to 1
  NetSpec ns = NetSpec::parse(
      "name braid\n"
      "backend interval rational\n"
      "spread 0\n"
      "region p interval(0,180)\n"
      "region r interval(10,60)\n"
      "region sreg interval(100,170)\n"
      "sector Pi ambient\n"
      "sector Sg ambient\n"
      "sector Pr localized r\n"
      "sector Ss localized sreg\n"
      "unitary ur : Pr -> Pi region p\n"
      "unitary vs : Ss -> Sg region p\n");
  auto ctx = make_region_ctx(ns);
  Term beta = tp("(prod vs (ap Ss p (prod ur)) (* ur) (* (ap Pi p (prod vs))))");
  Term betarev = tp("(prod ur (ap Pr p (prod vs)) (* vs) (* (ap Sg p (prod ur))))");
  Term prodterm;
  prodterm.factors = beta.factors;
  for (const auto& f : betarev.factors) prodterm.factors.push_back(f);
  auto r = check_equal(ns, *ctx, prodterm, tp("(prod)"), 4096);
  CHECK(r.verdict == EqVerdict::Proved);
  REQUIRE(r.script);
  CHECK(run_script(ns, *ctx, *r.script).accepted);
  CHECK(r.script->steps.size() > 4);
}
