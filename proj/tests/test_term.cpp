#include <catch2/catch_amalgamated.hpp>

#include "zigzag/netspec.hpp"
#include "zigzag/rules.hpp"
#include "zigzag/sampling.hpp"
#include "zigzag/term.hpp"

using namespace zigzag;

namespace {

NetSpec fixture() {
  NetSpec ns = NetSpec::parse(
      "netspec v1\n"
      "name fix\n"
      "backend interval rational\n"
      "spread 0\n"
      "region p interval(0,180)\n"
      "region r interval(10,60)\n"
      "region xq interval(120,170)\n"
      "region yq interval(10,60)\n"
      "sector P localized r\n"
      "sector Amb ambient\n"
      "sector One identity\n"
      "sector P2 localized r\n"
      "unitary u1 : P -> Amb region p\n"
      "morphism T : P -> P2 region r\n"
      "gen x region xq\n"
      "gen y region yq\n"
      "define w := (prod (* u1) u1) regions p\n");
  return ns;
}

Term tp(const std::string& s) { return parse_term(s); }

}  // namespace

TEST_CASE("terms round-trip byte-exactly through the prefix syntax") {
  const char* cases[] = {
      "(prod)",
      "(prod x)",
      "(prod (* x) y)",
      "(prod (ap P p (prod x (* y))))",
      "(prod u1 (* (ap P r+2s (prod (ap One p (prod))))))",
  };
  for (const char* c : cases) CHECK(term_str(tp(c)) == c);
  CHECK_THROWS_AS(tp("(prod (foo))"), ParseError);
  CHECK_THROWS_AS(tp("(prod x"), ParseError);
  CHECK(term_str(adjoint(tp("(prod x (* y) u1)"))) == "(prod (* u1) y (* x))");
  CHECK(term_equal(adjoint(adjoint(tp("(prod x (* y))"))), tp("(prod x (* y))")));
}

TEST_CASE("region tags parse and print") {
  CHECK(RegionTag::parse("q").str() == "q");
  CHECK(RegionTag::parse("q'").str() == "q'");
  CHECK(RegionTag::parse("q+2s").str() == "q+2s");
  CHECK(RegionTag::parse("q'+1s").str() == "q'+1s");
  CHECK_THROWS_AS(RegionTag::parse("q+xs"), ParseError);
}

TEST_CASE("netspecs round-trip and resolve against the backend") {
  NetSpec ns = fixture();
  NetSpec again = NetSpec::parse(ns.serialize());
  CHECK(again.serialize() == ns.serialize());
  auto ctx = make_region_ctx(ns);
  CHECK(ctx->leq(RegionTag::parse("r"), RegionTag::parse("p")));
  CHECK(ctx->disjoint(RegionTag::parse("xq"), RegionTag::parse("r")));
  CHECK(ctx->valid_region("p"));
  CHECK_FALSE(ctx->valid_region("nope"));
}

TEST_CASE("membership tags follow the localization rules") {
  NetSpec ns = fixture();
  auto ctx = make_region_ctx(ns);
  // x in A_xq, P localized at r <= p, s=0: the application lands in A_p
  Term t = tp("(prod (ap P p (prod x)))");
  auto ro = region_of(ns, *ctx, t);
  REQUIRE(ro.tag);
  // at spread 0 the bound resolves to p itself
  CHECK(ctx->leq(*ro.tag, RegionTag::parse("p")));
  CHECK(ctx->leq(RegionTag::parse("p"), *ro.tag));
  // the unitary: tagged with its declared region
  auto ro2 = region_of(ns, *ctx, tp("(prod u1)"));
  REQUIRE(ro2.tag);
  CHECK(ctx->leq(*ro2.tag, RegionTag::parse("p")));
  // no common region when generators sit on genuinely un-joinable arcs
  NetSpec ns2;
  ns2.backend_kind = "interval";
  ns2.regions.emplace_back("xq", "interval(10,170)");
  ns2.regions.emplace_back("yq", "interval(190,350)");
  ns2.generators.push_back({"x", "xq", true});
  ns2.generators.push_back({"y", "yq", true});
  auto ctx2 = make_region_ctx(ns2);
  auto ro3 = region_of(ns2, *ctx2, tp("(prod x y)"));
  CHECK_FALSE(ro3.tag.has_value());
  CHECK(ro3.note == "NoCommonRegion");
}

TEST_CASE("membership picks up the spread decoration") {
  NetSpec ns = NetSpec::parse(
      "backend cone rational\n"
      "spread 0.5\n"
      "region q cone(0,0,45,135)\n"
      "sector P localized q\n"
      "gen x region q\n");
  auto ctx = make_region_ctx(ns);
  auto ro = region_of(ns, *ctx, parse_term("(prod (ap P q (prod x)))"));
  REQUIRE(ro.tag);
  CHECK(ro.tag->str() == "q+1s");
  CHECK_FALSE(ctx->leq(RegionTag::parse("q+1s"), RegionTag::parse("q")));
  CHECK(ctx->leq(RegionTag::parse("q"), RegionTag::parse("q+1s")));
  CHECK(ctx->leq(RegionTag::parse("q+1s"), RegionTag::parse("q+2s")));
}

TEST_CASE("facts parse, print, and evaluate") {
  NetSpec ns = fixture();
  auto ctx = make_region_ctx(ns);
  Fact f = Fact::parse("leq(r,p)");
  CHECK(f.str() == "leq(r,p)");
  CHECK(eval_fact(ns, *ctx, f));
  Fact g = Fact::parse("!leq(r,p)");
  CHECK_FALSE(eval_fact(ns, *ctx, g));
  CHECK(eval_fact(ns, *ctx, Fact::parse("disjoint(xq,r)")));
  CHECK(eval_fact(ns, *ctx, Fact::parse("intertwines(u1,P,Amb)")));
  CHECK_FALSE(eval_fact(ns, *ctx, Fact::parse("intertwines(u1,Amb,P)")));
  CHECK(eval_fact(ns, *ctx, Fact::parse("unitary(u1)")));
  CHECK_FALSE(eval_fact(ns, *ctx, Fact::parse("unitary(T)")));
  // the defined word composes back to P and stays unitary
  CHECK(eval_fact(ns, *ctx, Fact::parse("intertwines(w,P,P)")));
  CHECK(eval_fact(ns, *ctx, Fact::parse("unitary(w)")));
}

TEST_CASE("term validation rejects undeclared symbols and region escapes") {
  NetSpec ns = fixture();
  auto ctx = make_region_ctx(ns);
  CHECK_NOTHROW(validate_term(ns, *ctx, tp("(prod x (ap P p (prod y)))"), "t"));
  CHECK_THROWS_AS(validate_term(ns, *ctx, tp("(prod zz)"), "t"), MalformedScript);
  // y lives in yq = (10,60) which is not inside xq
  CHECK_THROWS_AS(validate_term(ns, *ctx, tp("(prod (ap P xq (prod y)))"), "t"), MalformedScript);
}
