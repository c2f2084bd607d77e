#pragma once

// Bundled proof scripts: the equational derivations for fusion and braiding,
// replayed over concrete geometric nets. Each derivation is encoded once, by
// hand, through ScriptBuilder; the geometry witnesses come from the zig-zag
// engine and are checked while the corpus is assembled.

#include "zigzag/corpus.hpp"

namespace zigzag {

namespace corpus_detail {

inline Rat dg(std::int64_t n, std::int64_t d = 1) { return Rat(n, d) / Rat(180); }

struct BaseGeometry {
  ConeBackend<Rat> cb;
  NetSpec ns;
  std::map<std::string, Cone<Rat>> named;

  void region(const std::string& name, const Cone<Rat>& c) {
    named.emplace(name, c);
    ns.regions.emplace_back(name, cone_literal(cb, c));
  }
  const Cone<Rat>& at(const std::string& name) const { return named.at(name); }

  void check(bool ok, const std::string& what) {
    if (!ok) throw Error("corpus geometry: " + what);
  }
};

// the s = 0 cone net carrying most of the corpus
inline NetSpec base_net() {
  BaseGeometry g;
  auto& cb = g.cb;
  g.ns.name = "cone-base";
  g.ns.backend_kind = "cone";
  g.ns.rational = true;
  g.ns.spread = "0";

  auto p = cb.make(Vec2{0, 1}, dg(181), dg(359));
  auto q = cb.make(Vec2{0, 6}, dg(60), dg(120));
  auto z1 = cb.make(Vec2{-1, 0.25}, dg(190), dg(280));
  auto z2 = cb.make(Vec2{1, 0.25}, dg(260), dg(350));
  auto q2 = cb.make(Vec2{0, 0.5}, dg(210), dg(330));
  auto z1b = cb.make(Vec2{-0.3, 0.25}, dg(215), dg(260));
  auto z2b = cb.make(Vec2{0.3, 0.25}, dg(280), dg(322));
  auto yb = cb.make(Vec2{0, 0.6}, dg(212), dg(328));
  auto z2c = cb.make(Vec2{1.2, 0.3}, dg(335), dg(355));
  auto yc = cb.make(Vec2{0, 0.65}, dg(213), dg(357));
  auto D = cb.make(Vec2{0, 1.5}, dg(45), dg(135));
  auto pbig = cb.make(Vec2{0, 1.25}, dg(361, 2), dg(719, 2));

  auto rq2 = cb.join_witness(yb, q2);
  g.check(rq2.has_value(), "no join of yb and q2");
  auto rc3 = cb.join_witness(yc, q2);
  g.check(rc3.has_value(), "no join of yc and q2");

  Reflection<Cone<Rat>> refl = find_reflection(cb, p);
  g.check(validate_reflection(cb, refl).ok(), "reflection invalid");

  g.region("p", p);
  g.region("pc", cb.involution(p));
  g.region("q", q);
  g.region("qc", cb.involution(q));
  g.region("z1", z1);
  g.region("z2", z2);
  g.region("q2", q2);
  g.region("z1b", z1b);
  g.region("z1bc", cb.involution(z1b));
  g.region("z2b", z2b);
  g.region("yb", yb);
  g.region("rq2", *rq2);
  g.region("z2c", z2c);
  g.region("yc", yc);
  g.region("rc3", *rc3);
  g.region("D", D);
  g.region("Dc", cb.involution(D));
  g.region("pbig", pbig);
  g.region("rR", refl.base.r);
  g.region("sR", refl.base.s);
  g.region("aR", refl.a);
  g.region("bR", refl.b);
  g.region("cR", refl.c);
  g.region("bcR", cb.involution(refl.b));
  g.region("ccR", cb.involution(refl.c));
  g.region("acR", cb.involution(refl.a));

  // geometric sanity for the side conditions the scripts leanon
  for (const auto& zc : {z1, z2}) {
    g.check(cb.leq(zc, p), "case-1 indicator escapes p");
    g.check(cb.leq(zc, cb.involution(q)), "case-1 indicator not on the q' side");
  }
  for (const auto& zc : {z1b, z2b}) {
    g.check(cb.leq(zc, p) && cb.leq(zc, q2), "case-2 indicator misplaced");
    g.check(cb.leq(zc, yb), "case-2 indicator escapes its upper element");
  }
  g.check(cb.leq(z2c, cb.involution(q2)) && cb.leq(z2c, p), "case-3 indicator misplaced");
  g.check(cb.leq(z1b, yc) && cb.leq(z2c, yc), "case-3 upper element misses an indicator");
  g.check(cb.leq(yb, p) && cb.leq(yc, p), "upper elements escape p");
  g.check(is_q_small(cb, yb, q2).has_value(), "yb not q2-small");
  g.check(is_q_small(cb, yc, q2).has_value(), "yc not q2-small");
  g.check(cb.leq(D, cb.involution(p)), "D not below p'");
  g.check(cb.leq(p, pbig), "pbig does not contain p");

  auto& ns = g.ns;
  auto sector = [&](const std::string& n, const std::string& loc) {
    NetSpec::Sector s;
    s.name = n;
    if (loc == "identity")
      s.identity = true;
    else if (!loc.empty())
      s.localized = loc;
    ns.sectors.push_back(s);
  };
  auto unitary = [&](const std::string& n, const std::string& src, const std::string& tgt,
                     const std::string& r) {
    ns.intertwiners.push_back({n, src, tgt, r, true});
  };
  auto morphism = [&](const std::string& n, const std::string& src, const std::string& tgt,
                      const std::string& r) {
    ns.intertwiners.push_back({n, src, tgt, r, false});
  };
  auto gen = [&](const std::string& n, const std::string& r) {
    ns.generators.push_back({n, r, true});
  };
  auto define = [&](const std::string& n, const std::string& word,
                    std::vector<std::string> regs) {
    ns.definitions.push_back({n, tp(word), std::move(regs)});
  };

  sector("Pi", "p");
  sector("Sg", "p");
  sector("Tau", "p");
  sector("Ph", "p");
  sector("Sh", "p");
  sector("One", "identity");
  sector("P1", "z1");
  sector("P2", "z2");
  sector("S1", "z1");
  sector("S2", "z2");
  sector("P1b", "z1b");
  sector("P2b", "z2b");
  sector("S1b", "z1b");
  sector("S2b", "z2b");
  sector("T1b", "z1b");
  sector("P2c", "z2c");
  sector("S2c", "z2c");
  sector("Ph1b", "z1b");
  sector("Sh1b", "z1b");
  sector("Pr", "rR");
  sector("PrAlt", "rR");
  sector("Phr", "rR");
  sector("Sr", "rR");
  sector("Ss", "sR");
  sector("Ts", "sR");
  sector("Pa", "aR");
  sector("Tb", "bR");

  unitary("u1", "P1", "Pi", "p");
  unitary("u2", "P2", "Pi", "p");
  unitary("v1", "S1", "Sg", "p");
  unitary("v2", "S2", "Sg", "p");
  unitary("u1b", "P1b", "Pi", "p");
  unitary("u2b", "P2b", "Pi", "p");
  unitary("v1b", "S1b", "Sg", "p");
  unitary("v2b", "S2b", "Sg", "p");
  unitary("w1b", "T1b", "Tau", "p");
  unitary("u2c", "P2c", "Pi", "p");
  unitary("v2c", "S2c", "Sg", "p");
  unitary("vc", "Sh1b", "Sh", "p");
  unitary("ur", "Pr", "Pi", "p");
  unitary("ualt", "PrAlt", "Pi", "p");
  unitary("uhr", "Phr", "Ph", "p");
  unitary("vr", "Sr", "Sg", "p");
  unitary("vs", "Ss", "Sg", "p");
  unitary("ws", "Ts", "Tau", "p");
  unitary("uA", "Pa", "Pr", "cR");
  unitary("uB", "Tb", "Ts", "ccR");
  morphism("TT", "Pi", "Ph", "p");
  morphism("TT2", "Sg", "Sh", "p");

  gen("xq", "q");
  gen("x2", "q2");
  gen("xD", "D");
  gen("yD", "Dc");
  gen("xP", "p");
  gen("xz", "z1bc");

  define("d12", "(prod (* v2) v1)", {"qc", "p"});
  define("e12", "(prod (* u2) u1)", {"qc", "p"});
  define("d12b", "(prod (* v2b) v1b)", {"yb", "p"});
  define("e12b", "(prod (* u2b) u1b)", {"yb", "p"});
  define("dBA", "(prod (* v1b) v2b)", {"yb", "p"});
  define("eBA", "(prod (* u1b) u2b)", {"yb", "p"});
  define("dc3", "(prod (* v2c) v1b)", {"yc", "p"});
  define("ec3", "(prod (* u2c) u1b)", {"yc", "p"});
  define("gx", "(prod (* vc) TT2 v1b)", {"z1b"});
  define("gnat", "(prod (* uhr) TT ur)", {"rR"});
  define("eind", "(prod (* ualt) ur)", {"rR"});

  return ns;
}

// the bounded-spread cone net for the section-5 variants
inline NetSpec spread_net() {
  BaseGeometry g;
  auto& cb = g.cb;
  g.ns.name = "cone-spread";
  g.ns.backend_kind = "cone";
  g.ns.rational = true;
  g.ns.spread = "0.25";
  const Rat s(1, 4);

  auto L = cb.make(Vec2{0, 0}, dg(45), dg(135));
  auto Lt = cb.make(Vec2{0, 1}, dg(70), dg(110));
  auto D = cb.make(Vec2{0, -1}, dg(250), dg(290));
  auto LL = cb.make(Vec2{0, 0.5}, dg(60), dg(120));
  auto L1 = cb.make(Vec2{-2, 3}, dg(100), dg(120));
  auto L2 = cb.make(Vec2{2, 3}, dg(60), dg(80));

  g.check(cb.leq(Lt, L), "Lt not below L");
  g.check(cb.leq(D, cb.involution(L)), "D not below the complement of L");
  g.check(cb.leq(LL, L), "LL not below L");
  auto U0 = cb.join_witness(cb.enlarge(L, s + s), D);
  g.check(U0.has_value(), "no join above L and D");
  g.check(cb.leq(cb.enlarge(L, s), cb.enlarge(*U0, s)), "U0 too tight for the spread");
  g.check(cb.leq(L1, L) && cb.leq(L2, L), "splitting escapes L");
  g.check(cb.leq(cb.enlarge(L1, s), cb.involution(L2)), "enlarged L1 not disjoint from L2");

  g.region("L", L);
  g.region("Lc", cb.involution(L));
  g.region("Lt", Lt);
  g.region("D", D);
  g.region("U0", *U0);
  g.region("LL", LL);
  g.region("L1", L1);
  g.region("L2", L2);

  auto& ns = g.ns;
  ns.sectors.push_back({"Pi", std::optional<std::string>("L"), false});
  ns.sectors.push_back({"Sg", std::optional<std::string>("L"), false});
  ns.sectors.push_back({"Pt", std::optional<std::string>("Lt"), false});
  ns.sectors.push_back({"St", std::optional<std::string>("Lt"), false});
  ns.sectors.push_back({"PL1", std::optional<std::string>("L1"), false});
  ns.sectors.push_back({"SL2", std::optional<std::string>("L2"), false});
  ns.intertwiners.push_back({"u", "Pt", "Pi", "L", true});
  ns.intertwiners.push_back({"v", "St", "Sg", "L", true});
  ns.intertwiners.push_back({"uL1", "PL1", "Pi", "L", true});
  ns.intertwiners.push_back({"vL2", "SL2", "Sg", "L", true});
  ns.generators.push_back({"x", "D", true});
  ns.generators.push_back({"xL", "LL", true});
  return ns;
}

// the spherical-cap net realizing the symmetric braiding
inline NetSpec cap_net() {
  CapBackend capb;
  NetSpec ns;
  ns.name = "cap-sym";
  ns.backend_kind = "cap";
  ns.rational = false;
  ns.spread = "0";

  const double sigma = 0.5, rr = 0.05, rs = 0.34;
  Vec3 v1{0, 0, 1};
  Vec3 v2{std::sin(sigma), 0, std::cos(sigma)};
  double cphi = std::cos(sigma) / (1 + std::cos(sigma));
  double sphi = std::sqrt(std::max(0.0, 1 - cphi * cphi));
  Vec3 v3{std::sin(sigma) * cphi, std::sin(sigma) * sphi, std::cos(sigma)};
  auto mid = [&](Vec3 x, Vec3 y) { return unit(x + y); };
  Cap r1 = capb.make(v1, rr), r2 = capb.make(v2, rr), r3 = capb.make(v3, rr);
  Cap s1 = capb.make(mid(v2, v3), rs), s2 = capb.make(mid(v1, v3), rs),
      s3 = capb.make(mid(v1, v2), rs);
  Cap pcap = capb.make(unit(v1 + v2 + v3), 1.5);

  auto need = [&](bool ok, const char* what) {
    if (!ok) throw Error(std::string("cap corpus geometry: ") + what);
  };
  need(is_disjoint(capb, r1, s1) && is_disjoint(capb, r2, s2) && is_disjoint(capb, r3, s3),
       "r_i not disjoint from s_i");
  need(capb.leq(r2, s1) && capb.leq(r3, s1) && capb.leq(r1, s2) && capb.leq(r3, s2) &&
           capb.leq(r1, s3) && capb.leq(r2, s3),
       "s_k misses an r_i");
  need(is_disjoint(capb, r1, r2), "r1 and r2 are not disjoint");
  for (const Cap& c : {r1, r2, r3, s1, s2, s3}) need(capb.leq(c, pcap), "p misses a disk");

  ns.regions.emplace_back("R1", cap_literal(r1));
  ns.regions.emplace_back("R2", cap_literal(r2));
  ns.regions.emplace_back("R3", cap_literal(r3));
  ns.regions.emplace_back("S1", cap_literal(s1));
  ns.regions.emplace_back("S2", cap_literal(s2));
  ns.regions.emplace_back("S3", cap_literal(s3));
  ns.regions.emplace_back("pcap", cap_literal(pcap));

  ns.sectors.push_back({"Pi", std::optional<std::string>("pcap"), false});
  ns.sectors.push_back({"Sg", std::optional<std::string>("pcap"), false});
  ns.sectors.push_back({"PA1", std::optional<std::string>("R1"), false});
  ns.sectors.push_back({"PA2", std::optional<std::string>("R2"), false});
  ns.sectors.push_back({"PA3", std::optional<std::string>("R3"), false});
  ns.sectors.push_back({"SB1", std::optional<std::string>("R1"), false});
  ns.sectors.push_back({"SB2", std::optional<std::string>("R2"), false});
  ns.intertwiners.push_back({"uP1", "PA1", "Pi", "pcap", true});
  ns.intertwiners.push_back({"uP2", "PA2", "Pi", "pcap", true});
  ns.intertwiners.push_back({"uP3", "PA3", "Pi", "pcap", true});
  ns.intertwiners.push_back({"vS1", "SB1", "Sg", "pcap", true});
  ns.intertwiners.push_back({"vS2", "SB2", "Sg", "pcap", true});
  ns.definitions.push_back({"e13", tp("(prod (* uP3) uP1)"), {"S2"}});
  ns.definitions.push_back({"e32", tp("(prod (* uP2) uP3)"), {"S1"}});
  ns.definitions.push_back({"f21", tp("(prod (* vS1) vS2)"), {"S3"}});
  return ns;
}

}  // namespace corpus_detail

inline Corpus identity_corpus() {
  using namespace corpus_detail;
  Corpus corpus;
  corpus.nets.push_back(base_net());
  corpus.nets.push_back(spread_net());
  corpus.nets.push_back(cap_net());
  const NetSpec& base = corpus.net("cone-base");
  const NetSpec& bs = corpus.net("cone-spread");
  const NetSpec& caps = corpus.net("cap-sym");
  auto bctx = make_region_ctx(base);
  auto sctx = make_region_ctx(bs);
  auto cctx = make_region_ctx(caps);

  auto add = [&](const ProofScript& sc) { corpus.scripts.push_back(sc); };

  // --- fusion well-definedness, case 1 (both indicators on the q' side) ---
  {
    Term lhs = tp(
        "(prod u1 (ap P1 p (prod v1)) (ap P1 q (prod (ap S1 q (prod xq)))) "
        "(* (ap P1 p (prod v1))) (* u1))");
    Term rhs = tp(
        "(prod u2 (ap P2 p (prod v2)) (ap P2 q (prod (ap S2 q (prod xq)))) "
        "(* (ap P2 p (prod v2))) (* u2))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.strip({}, 2);  // the whole application acts as the identity here
    sb.strip({}, 2);
    FusionSwapNames n{"u1", "v1", "u2", "v2", "d12", "e12",
                      "(ap P2 p (prod v2))", "p", "", "qc", ""};
    fusion_swap(sb, 0, n, FusionCase::AcrossOne, 1);
    sb.wrap({}, 2, "S2", "q");
    sb.wrap({}, 2, "P2", "q");
    add(sb.finish("fusion-case1", "cone-base", rhs));
  }

  // --- fusion well-definedness, case 2 (both indicators inside q2) ---
  {
    Term lhs = tp(
        "(prod u1b (ap P1b p (prod v1b)) (ap P1b q2 (prod (ap S1b q2 (prod x2)))) "
        "(* (ap P1b p (prod v1b))) (* u1b))");
    Term rhs = tp(
        "(prod u2b (ap P2b p (prod v2b)) (ap P2b q2 (prod (ap S2b q2 (prod x2)))) "
        "(* (ap P2b p (prod v2b))) (* u2b))");
    ScriptBuilder sb(base, *bctx, lhs);
    FusionSwapNames n{"u1b", "v1b", "u2b", "v2b", "d12b", "e12b",
                      "(ap P2b p (prod v2b))", "p", "rq2", "", "q2"};
    fusion_swap(sb, 0, n, FusionCase::WithinTwo);
    add(sb.finish("fusion-case2", "cone-base", rhs));
  }

  // --- fusion well-definedness, case 3 (indicators on opposite sides) ---
  {
    Term lhs = tp(
        "(prod u1b (ap P1b p (prod v1b)) (ap P1b q2 (prod (ap S1b q2 (prod x2)))) "
        "(* (ap P1b p (prod v1b))) (* u1b))");
    Term rhs = tp(
        "(prod u2c (ap P2c p (prod v2c)) x2 (* (ap P2c p (prod v2c))) (* u2c))");
    ScriptBuilder sb(base, *bctx, lhs);
    FusionSwapNames n{"u1b", "v1b", "u2c", "v2c", "dc3", "ec3",
                      "(ap P2c p (prod v2c))", "p", "rc3", "", "q2"};
    fusion_swap(sb, 0, n, FusionCase::Mixed);
    add(sb.finish("fusion-case3", "cone-base", rhs));
  }

  // --- the composite is localized at p ---
  {
    Term lhs = tp(
        "(prod u1b (ap P1b p (prod v1b)) (ap P1b pc (prod (ap S1b pc (prod xD)))) "
        "(* (ap P1b p (prod v1b))) (* u1b))");
    Term rhs = tp("(prod xD)");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.strip({2}, 0);  // the inner application acts as the identity on A_D
    sb.strip({}, 2);
    sb.comm({}, 2);    // xD past the starred v-application
    sb.cancel({}, 1);  // the v-application pair
    sb.comm({}, 1);    // xD past u1b
    sb.cancel({}, 0);  // the u pair
    add(sb.finish("fusion-localized", "cone-base", rhs));
  }


  // --- locality of the composite: opposite regions commute -----------------
  {
    Term lhs = tp(
        "(prod u1b (ap P1b p (prod v1b)) xD (* (ap P1b p (prod v1b))) (* u1b) "
        "u1b (ap P1b p (prod v1b)) (ap P1b Dc (prod (ap S1b Dc (prod yD)))) "
        "(* (ap P1b p (prod v1b))) (* u1b))");
    Term rhs = tp(
        "(prod u1b (ap P1b p (prod v1b)) (ap P1b Dc (prod (ap S1b Dc (prod yD)))) "
        "(* (ap P1b p (prod v1b))) (* u1b) "
        "u1b (ap P1b p (prod v1b)) xD (* (ap P1b p (prod v1b))) (* u1b))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.cancel({}, 4);  // the inner unitary pair
    sb.cancel({}, 3);  // the inner application pair
    sb.comm({}, 2);    // x in A_D past the application on A_D'
    sb.insert({}, 3, "(ap P1b p (prod v1b))", true);
    sb.insert({}, 4, "u1b", true);
    add(sb.finish("fusion-local", "cone-base", rhs));
  }

  // --- strict unit: fusing with the identity sector -------------------------
  {
    Term lhs = tp(
        "(prod u1b (ap P1b p (prod)) (ap P1b q2 (prod (ap One q2 (prod x2)))) "
        "(* (ap P1b p (prod))) (* u1b))");
    Term rhs = tp("(prod (ap Pi q2 (prod x2)))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.unit({}, 1);
    sb.star({}, 2);
    sb.unit({}, 2);
    sb.strip({1}, 0);  // the identity sector acts trivially
    sb.slide({}, 0);
    sb.cancel({}, 1);
    add(sb.finish("fusion-unit", "cone-base", rhs));
  }

  // --- the inclusion into a larger localization region is strict -----------
  {
    Term lhs = tp(
        "(prod u1b (ap P1b p (prod v1b)) (ap P1b q2 (prod (ap S1b q2 (prod x2)))) "
        "(* (ap P1b p (prod v1b))) (* u1b))");
    Term rhs = tp(
        "(prod u1b (ap P1b pbig (prod v1b)) (ap P1b q2 (prod (ap S1b q2 (prod x2)))) "
        "(* (ap P1b pbig (prod v1b))) (* u1b))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.iso({}, 1, "pbig");
    sb.iso({}, 3, "pbig");
    add(sb.finish("inclusion-strict", "cone-base", rhs));
  }

  // --- the braiding does not depend on the localization choice -------------
  {
    Term lhs = tp("(prod vs (ap Ss p (prod ur)) (* ur) (* (ap Pi p (prod vs))))");
    Term rhs = tp("(prod vs (ap Ss p (prod ualt)) (* ualt) (* (ap Pi p (prod vs))))");
    ScriptBuilder sb(base, *bctx, lhs);
    beta_top_move(sb, 1, "ualt", "eind", "rR");
    add(sb.finish("braid-independence", "cone-base", rhs));
  }

  // --- reverse braiding: the two formulas compose to the identity ----------
  {
    Term lhs = tp(
        "(prod vs (ap Ss p (prod ur)) (* ur) (* (ap Pi p (prod vs))) "
        "ur (ap Pr p (prod vs)) (* vs) (* (ap Sg p (prod ur))))");
    Term rhs = tp("(prod)");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.slide({}, 0);
    sb.star({}, 3);
    sb.slide({}, 2);
    sb.cancel({}, 3);
    sb.merge({}, 2);
    sb.cancel({2}, 0);
    sb.unit({}, 2);
    sb.cancel({}, 1);
    sb.star({}, 1);
    sb.merge({}, 0);
    sb.cancel({0}, 0);
    sb.unit({}, 0);
    add(sb.finish("reverse-braiding", "cone-base", rhs));
  }

  // --- disjointly localized sectors commute, through the reflection --------
  {
    Term lhs = tp("(prod (ap Pr p (prod (ap Ss p (prod xP)))))");
    Term rhs = tp("(prod (ap Ss p (prod (ap Pr p (prod xP)))))");
    ScriptBuilder sb(base, *bctx, lhs);
    nested_swap(sb, 0, "uA", "Pa", "Ss", "p", "bcR", 1);
    add(sb.finish("disjoint-commute", "cone-base", rhs));
  }

  // --- naturality of the braiding -------------------------------------------
  {
    Term lhs = tp("(prod vs (ap Ss p (prod uhr)) (* uhr) (* (ap Ph p (prod vs))) TT)");
    Term rhs = tp("(prod (ap Sg p (prod TT)) vs (ap Ss p (prod ur)) (* ur) (* (ap Pi p (prod vs))))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.star({}, 3);
    sb.slide({}, 3);
    sb.insert({}, 4, "ur");
    sb.fold({}, 2, "gnat");
    sb.wrap({}, 2, "Ss", "rR");
    sb.iso({}, 2, "p");
    sb.merge({}, 1);
    sb.unfold({1}, 1, "gnat");
    sb.cancel({1}, 0);
    sb.split({}, 1, 1);
    sb.slide({}, 0);
    sb.star({}, 4);
    add(sb.finish("braid-naturality", "cone-base", rhs));
  }


  // --- associativity, step 1: the composite localizer works ----------------
  {
    Term tw = tp(
        "(prod (* v1b) v2b (* u1b) u2b (* (ap P2b p (prod v2b))) (* u2b))");
    Term rho = tp(
        "(prod u2b (ap P2b p (prod v2b)) (ap P2b z1bc (prod (ap S2b z1bc (prod xz)))) "
        "(* (ap P2b p (prod v2b))) (* u2b))");
    Term lhs = concat({tw, rho, adjoint(tw)});
    ScriptBuilder sb(base, *bctx, lhs);
    sb.cancel({}, 5);
    sb.cancel({}, 4);
    sb.cancel({}, 6);
    sb.cancel({}, 5);
    sb.slide({}, 3);
    sb.cancel({}, 4);
    sb.slide({}, 2);
    sb.cancel({}, 3);
    sb.strip({}, 2);
    sb.slide({}, 1);
    sb.cancel({}, 2);
    sb.slide({}, 1);
    sb.cancel({}, 0);
    sb.strip({}, 0);
    add(sb.finish("assoc-localize", "cone-base", tp("(prod xz)")));
  }

  // --- associativity, left association expands to the three-way form -------
  {
    Term tw = tp(
        "(prod (* v1b) v2b (* u1b) u2b (* (ap P2b p (prod v2b))) (* u2b))");
    Term rho_w = tp(
        "(prod u2b (ap P2b p (prod v2b)) (ap P2b p (prod (ap S2b p (prod w1b)))) "
        "(* (ap P2b p (prod v2b))) (* u2b))");
    Term rho_x = tp(
        "(prod u2b (ap P2b p (prod v2b)) "
        "(ap P2b q2 (prod (ap S2b q2 (prod (ap T1b q2 (prod x2)))))) "
        "(* (ap P2b p (prod v2b))) (* u2b))");
    Term lhs = concat({adjoint(tw), tw, rho_w, adjoint(tw), tw, rho_x, adjoint(tw), tw,
                       adjoint(rho_w), adjoint(tw), tw});
    Term rhs = tp(
        "(prod (ap Pi p (prod v1b (ap S1b p (prod w1b)))) "
        "(ap Pi q2 (prod (ap S1b q2 (prod (ap T1b q2 (prod x2)))))) "
        "(* (ap Pi p (prod v1b (ap S1b p (prod w1b))))))");
    ScriptBuilder sb(base, *bctx, lhs);
    // the four t* t junctions collapse
    for (int junction : {6, 11, 16, 21}) {
      int j = junction;
      for (int k = 0; k < 6; ++k) {
        sb.cancel({}, j - 1);
        j -= 1;
      }
    }
    // swap each sandwich from the z2b indicator to the z1b indicator
    FusionSwapNames n{"u2b", "v2b", "u1b", "v1b", "dBA", "eBA",
                      "(ap P1b p (prod v1b))", "p", "rq2", "", "q2"};
    FusionSwapNames np = n;
    np.R = "p";
    np.q2 = "p";
    fusion_swap(sb, 0, np, FusionCase::WithinTwo);
    fusion_swap(sb, 5, n, FusionCase::WithinTwo);
    fusion_swap(sb, 10, np, FusionCase::WithinTwo, 1, true);
    // collapse the two inner junctions
    sb.cancel({}, 4);
    sb.cancel({}, 3);
    sb.cancel({}, 5);
    sb.cancel({}, 4);
    // slide the remaining unitary through and regroup
    sb.slide({}, 0);
    sb.slide({}, 1);
    sb.slide({}, 2);
    sb.star({}, 4);
    sb.slide({}, 3);
    sb.star({}, 5);
    sb.slide({}, 4);
    sb.cancel({}, 5);
    sb.merge({}, 0);
    sb.merge({}, 2);
    sb.star({}, 2);
    add(sb.finish("assoc-left", "cone-base", rhs));
  }

  // --- associativity, step 2: the localized composite argument reduces -----
  {
    Term V = tp("(prod v1b (ap S1b p (prod w1b)))");
    Term mid = tp(
        "(prod v1b (ap S1b p (prod w1b)) (ap S1b q2 (prod (ap T1b q2 (prod x2)))) "
        "(* (ap S1b p (prod w1b))) (* v1b))");
    Term lhs = concat({adjoint(V), mid, V});
    Term rhs = tp("(prod (ap S1b q2 (prod (ap T1b q2 (prod x2)))))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.cancel({}, 1);
    sb.cancel({}, 0);
    sb.cancel({}, 2);
    sb.cancel({}, 1);
    add(sb.finish("assoc-right-localize", "cone-base", rhs));
  }

  // --- associativity, right association reaches the same three-way form ----
  {
    Term lhs = tp(
        "(prod u1b (ap P1b p (prod v1b (ap S1b p (prod w1b)))) "
        "(ap P1b q2 (prod (ap S1b q2 (prod (ap T1b q2 (prod x2)))))) "
        "(* (ap P1b p (prod v1b (ap S1b p (prod w1b))))) (* u1b))");
    Term rhs = tp(
        "(prod (ap Pi p (prod v1b (ap S1b p (prod w1b)))) "
        "(ap Pi q2 (prod (ap S1b q2 (prod (ap T1b q2 (prod x2)))))) "
        "(* (ap Pi p (prod v1b (ap S1b p (prod w1b))))))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.slide({}, 0);
    sb.slide({}, 1);
    sb.star({}, 3);
    sb.slide({}, 2);
    sb.cancel({}, 3);
    sb.star({}, 2);
    add(sb.finish("assoc-right", "cone-base", rhs));
  }

  // --- the braiding satisfies the hexagon against a composite ---------------
  {
    Term lhs = tp(
        "(prod ws (ap Ts p (prod ur (ap Pr p (prod vr)))) (* (ap Pr p (prod vr))) "
        "(* ur) (ap Pi p (prod (ap Sg p (prod (* ws))))))");
    Term rhs = tp(
        "(prod ws (ap Ts p (prod ur)) (* ur) (* (ap Pi p (prod ws))) "
        "(ap Pi p (prod ws (ap Ts p (prod vr)) (* vr) (* (ap Sg p (prod ws))))))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.split({}, 1, 1);
    nested_swap(sb, 2, "uB", "Tb", "Pr", "p", "acR", 1);
    sb.star({}, 3);
    sb.merge({}, 2);
    sb.slide({}, 2);
    sb.merge({}, 3);
    sb.insert({}, 3, "(ap Pi p (prod ws))", true);
    sb.merge({}, 4);
    sb.star({4}, 3);
    add(sb.finish("braid-monoidality", "cone-base", rhs));
  }

  // --- the braided structure passes to the larger region --------------------
  {
    Term lhs = tp("(prod vs (ap Ss p (prod ur)) (* ur) (* (ap Pi p (prod vs))))");
    Term rhs = tp("(prod vs (ap Ss pbig (prod ur)) (* ur) (* (ap Pi pbig (prod vs))))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.iso({}, 1, "pbig");
    sb.iso({}, 3, "pbig");
    add(sb.finish("braided-inclusion", "cone-base", rhs));
  }

  // --- bounded spread: the composite is localized at the cone ---------------
  {
    Term lhs = tp(
        "(prod u (ap Pt L+1s (prod v)) (ap Pt Lc+1s (prod (ap St Lc (prod x)))) "
        "(* (ap Pt L+1s (prod v))) (* u))");
    Term rhs = tp("(prod x)");
    ScriptBuilder sb(bs, *sctx, lhs);
    sb.strip({2}, 0);
    sb.strip({}, 2);
    sb.slide({}, 0);
    sb.comm({}, 1);
    sb.star({}, 3);
    sb.slide({}, 3);
    sb.cancel({}, 2);
    sb.wrap({}, 1, "Pi", "D");
    sb.iso({}, 1, "U0+1s");
    sb.iso({}, 0, "U0+1s");
    sb.merge({}, 0);
    sb.comm({0}, 0);
    sb.split({}, 0, 1);
    sb.iso({}, 2, "U0+1s");
    sb.merge({}, 1);
    sb.cancel({1}, 0);
    sb.unit({}, 1);
    sb.iso({}, 0, "D");
    sb.strip({}, 0);
    add(sb.finish("bs-localized", "cone-spread", rhs));
  }

  // --- bounded spread: transported sectors restrict back ---------------------
  {
    Term lhs = tp("(prod (ap Pi L+2s (prod xL)))");
    Term rhs = tp("(prod (ap Pi L (prod xL)))");
    ScriptBuilder sb(bs, *sctx, lhs);
    sb.iso({}, 0, "L+1s");
    sb.iso({}, 0, "L");
    add(sb.finish("bs-transport", "cone-spread", rhs));
  }

  // --- bounded spread: the braiding formulas still compose to one -----------
  {
    Term lhs = tp(
        "(prod vL2 (ap SL2 L+1s (prod uL1)) (* uL1) (* (ap Pi L+1s (prod vL2))) "
        "uL1 (ap PL1 L+1s (prod vL2)) (* vL2) (* (ap Sg L+1s (prod uL1))))");
    Term rhs = tp("(prod)");
    ScriptBuilder sb(bs, *sctx, lhs);
    sb.slide({}, 0);
    sb.star({}, 3);
    sb.slide({}, 2);
    sb.cancel({}, 3);
    sb.merge({}, 2);
    sb.cancel({2}, 0);
    sb.unit({}, 2);
    sb.cancel({}, 1);
    sb.star({}, 1);
    sb.merge({}, 0);
    sb.cancel({0}, 0);
    sb.unit({}, 0);
    add(sb.finish("bs-braiding", "cone-spread", rhs));
  }

  // --- caps: the walk over the disk configuration swaps the braiding legs ---
  {
    Term lhs = tp("(prod vS2 (ap SB2 pcap (prod uP1)) (* uP1) (* (ap Pi pcap (prod vS2))))");
    Term rhs = tp("(prod vS1 (ap SB1 pcap (prod uP2)) (* uP2) (* (ap Pi pcap (prod vS1))))");
    ScriptBuilder sb(caps, *cctx, lhs);
    beta_top_move(sb, 1, "uP3", "e13", "S2");
    beta_bottom_move(sb, 0, "vS1", "f21", "S3");
    beta_top_move(sb, 1, "uP2", "e32", "S1");
    add(sb.finish("symmetric-braiding-caps", "cap-sym", rhs));
  }


  // --- the morphism tensor exchange through a localized intertwiner ---------
  {
    Term lhs = tp(
        "(prod (ap Ph1b z1b (prod gx)) (ap Ph1b q2 (prod (ap S1b q2 (prod x2)))))");
    Term rhs = tp(
        "(prod (ap Ph1b q2 (prod (ap Sh1b q2 (prod x2)))) (ap Ph1b z1b (prod gx)))");
    ScriptBuilder sb(base, *bctx, lhs);
    sb.iso({}, 0, "q2");
    sb.merge({}, 0);
    sb.slide({0}, 0);
    sb.split({}, 0, 1);
    sb.iso({}, 1, "z1b");
    add(sb.finish("morphism-exchange", "cone-base", rhs));
  }

  return corpus;
}

}  // namespace zigzag
