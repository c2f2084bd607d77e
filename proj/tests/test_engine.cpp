#include <catch2/catch_amalgamated.hpp>

#include "zigzag/cap.hpp"
#include "zigzag/cone.hpp"
#include "zigzag/engine.hpp"
#include "zigzag/interval.hpp"
#include "zigzag/sampling.hpp"

using namespace zigzag;

namespace {
const IntervalBackend<Rat> ib;
const ConeBackend<Rat> cb;
const CapBackend capb;

Interval<Rat> deg(std::int64_t a, std::int64_t b) { return ib.make(Rat(a, 180), Rat(b, 180)); }
Cone<Rat> cone(double x, double y, std::int64_t d0, std::int64_t d1) {
  return cb.make(Vec2{x, y}, Rat(d0, 180), Rat(d1, 180));
}
}  // namespace

TEST_CASE("connect covers the lemma's three steps") {
  auto p = deg(10, 60);
  auto q = deg(0, 90);
  auto zz = connect(ib, p, q);  // p <= q: (p, q, q)
  CHECK(zz.hops() == 1);
  CHECK(validate_zigzag(ib, zz).ok());

  auto self = connect(ib, p, ib.involution(p));  // via a splitting of p'
  CHECK(validate_zigzag(ib, self).ok());
  CHECK(ib.equal(self.z.front(), p));
  CHECK(ib.equal(self.z.back(), ib.involution(p)));

  for (int t = 0; t < 300; ++t) {
    Rng r = Rng::stream(51, t);
    auto a = random_interval(ib, r);
    auto b = random_interval(ib, r);
    auto c = connect(ib, a, b);
    CHECK(validate_zigzag(ib, c).ok());
    CHECK(ib.equal(c.z.front(), a));
    CHECK(ib.equal(c.z.back(), b));
  }
}

TEST_CASE("validators report the violated clause and index") {
  auto p = deg(0, 120);
  ZigZag<Interval<Rat>> zz;
  zz.z = {deg(0, 30), deg(200, 230)};  // z_2 not below y_1
  zz.y = {deg(0, 60)};
  Report rep = validate_zigzag(ib, zz);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].clause == "chain.upper");
  CHECK(rep.violations[0].index == 0);

  ZigZagOpts<IntervalBackend<Rat>> opts;
  opts.contained_in = p;
  zz.z = {deg(0, 30), deg(60, 90)};
  zz.y = {deg(0, 130)};  // escapes p
  rep = validate_zigzag(ib, zz, opts);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].clause == "contained.y");

  // an MDZ with one w_i not disjoint from z_i
  Mdz<Interval<Rat>> m;
  m.top.z = {deg(0, 20), deg(10, 30)};
  m.top.y = {deg(0, 30)};
  m.bottom.z = {deg(40, 60), deg(50, 70)};
  m.bottom.y = {deg(20, 70)};  // meets the top upper element
  Report mrep = validate_mdz(ib, m);
  REQUIRE_FALSE(mrep.ok());
  bool found = false;
  for (auto& v : mrep.violations) found = found || v.clause == "pairs.w" || v.clause == "pairs.y";
  CHECK(found);
}

TEST_CASE("small indicators exist and validate on both geometric backends") {
  for (int t = 0; t < 400; ++t) {
    Rng r = Rng::stream(52, t);
    auto p = random_interval(ib, r);
    auto q = random_interval(ib, r);
    auto pt = small_indicator(ib, p, q);
    CHECK(ib.leq(pt, p));
    CHECK(is_q_indicator(ib, pt, p, q));
    CHECK(is_q_small(ib, pt, q).has_value());
  }
  for (int t = 0; t < 400; ++t) {
    Rng r = Rng::stream(53, t);
    auto p = random_cone(cb, r);
    auto q = random_cone(cb, r);
    auto pt = small_indicator(cb, p, q);
    CHECK(cb.leq(pt, p));
    CHECK(is_q_indicator(cb, pt, p, q));
    CHECK(is_q_small(cb, pt, q).has_value());
  }
}

TEST_CASE("interval GA3: same component and straddling constructions") {
  // straddle: q's boundary ends inside p
  auto p = deg(0, 180);
  auto q = deg(90, 270);  // boundary at 90 inside p
  auto pt = deg(10, 40);   // below q'
  auto ph = deg(120, 150); // below q
  ZigZagOpts<IntervalBackend<Rat>> opts;
  opts.contained_in = p;
  opts.ga3_for = q;
  auto zz = ib.ga3_zigzag(pt, ph, p, q);
  CHECK(validate_zigzag(ib, zz, opts).ok());
  CHECK(ib.equal(zz.z.front(), pt));
  CHECK(ib.equal(zz.z.back(), ph));

  // same component, overlapping indicators: the two-link chain
  auto a1 = deg(10, 50), a2 = deg(30, 70);
  auto zz2 = ib.ga3_zigzag(a1, a2, p, q);
  CHECK(validate_zigzag(ib, zz2, opts).ok());

  // trivial
  CHECK(ib.ga3_zigzag(a1, a1, p, q).hops() == 0);
}

TEST_CASE("cone GA3 reproduces the two-hop figure shape") {
  // wide low cone p, narrow cone q above it, indicators on both sides
  auto p = cone(0, 1, 181, 359);
  auto q = cone(0, 0, 45, 135);
  auto pt = cone(-1, 0.25, 190, 280);
  auto ph = cone(1, 0.25, 260, 350);
  REQUIRE(cb.leq(pt, p));
  REQUIRE(cb.leq(ph, p));
  REQUIRE(cb.leq(pt, cb.involution(q)));
  REQUIRE(cb.leq(ph, cb.involution(q)));
  auto zz = cb.ga3_zigzag(pt, ph, p, q);
  ZigZagOpts<ConeBackend<Rat>> opts;
  opts.contained_in = p;
  opts.ga3_for = q;
  CHECK(validate_zigzag(cb, zz, opts).ok());
  CHECK(zz.hops() >= 2);
  // implied property: every z_j is q-small too
  for (const auto& z : zz.z) CHECK(is_q_small(cb, z, q).has_value());
}

TEST_CASE("zig-zag facts on the interval backend") {
  auto p = deg(0, 270);
  auto a = deg(10, 40), b = deg(200, 240);
  auto zz = connect(ib, a, b);
  // ZZ1: a one-hop shortcut exists when an upper element meets b
  auto sh = zz_shorten(ib, zz, b);
  CHECK(validate_zigzag(ib, sh).ok());
  // ZZ3 with a far third
  auto c = deg(300, 330);
  ZigZag<Interval<Rat>> inP;
  inP.z = {a, deg(60, 90), b};
  inP.y = {deg(5, 95), deg(55, 245)};
  auto ct = zz_avoid_third(ib, inP, c);
  CHECK(ib.leq(ct, c));
  for (auto& y : inP.y) CHECK(ib.leq(y, ib.involution(ct)));
  // ZZ4
  auto d = zz_disjointify(ib, inP, a, b);
  CHECK(ib.leq(d.a_small, a));
  CHECK(ib.leq(d.b_small, b));
  CHECK(validate_zigzag(ib, d.zz).ok());
  (void)p;
}

TEST_CASE("triangle dance returns a validated pattern for disjoint triples") {
  auto p = deg(0, 300);
  struct Case {
    Interval<Rat> a, b, c;
  } cases[] = {
      {deg(10, 40), deg(120, 150), deg(220, 260)},
      {deg(10, 100), deg(140, 170), deg(200, 290)},
      {deg(5, 15), deg(20, 30), deg(280, 295)},
  };
  for (auto& cs : cases) {
    auto [pat, m] = triangle_dance(ib, cs.a, cs.b, cs.c, p);
    INFO("pattern " << static_cast<int>(pat));
    CHECK(validate_mdz(ib, m, std::optional<Interval<Rat>>(p)).ok());
  }
}

TEST_CASE("MDZ theorem on random splittings, both backends") {
  for (int t = 0; t < 150; ++t) {
    Rng r = Rng::stream(54, t);
    auto p = random_interval(ib, r);
    auto s1 = random_interval_splitting(ib, p, r);
    auto s2 = random_interval_splitting(ib, p, r);
    auto res = mdz_between_splittings(ib, p, s1, s2);
    CHECK(validate_mdz(ib, res.mdz, std::optional<Interval<Rat>>(p)).ok());
    CHECK(ib.equal(res.mdz.top.z.front(), s1.r));
    CHECK(ib.equal(res.mdz.bottom.z.front(), s1.s));
    CHECK(ib.equal(res.mdz.top.z.back(), res.swapped ? s2.s : s2.r));
    CHECK(ib.equal(res.mdz.bottom.z.back(), res.swapped ? s2.r : s2.s));
  }
  for (int t = 0; t < 80; ++t) {
    Rng r = Rng::stream(55, t);
    auto p = random_cone(cb, r);
    auto s1 = random_cone_splitting(cb, p, r);
    auto s2 = random_cone_splitting(cb, p, r);
    auto res = mdz_between_splittings(cb, p, s1, s2);
    CHECK(validate_mdz(cb, res.mdz, std::optional<Cone<Rat>>(p)).ok());
  }
  // s1 == s2 gives the trivial answer
  auto p0 = deg(0, 180);
  auto sp = ib.split(p0);
  auto res = mdz_between_splittings(ib, p0, sp, sp);
  CHECK_FALSE(res.swapped);
  CHECK(validate_mdz(ib, res.mdz).ok());
}

TEST_CASE("the quadrant reflection figure validates exactly") {
  auto p = cone(0, 0.05, 2, 178);
  auto r = cone(-0.2, 0.2, 95, 175);
  auto s = cone(0.2, 0.2, 5, 85);
  auto a = cone(-0.2, -0.2, 185, 265);
  auto b = cone(0.2, -0.2, 275, 355);
  auto c = cone(-0.05, 0, 92, 268);
  REQUIRE(validate_splitting(cb, Splitting<Cone<Rat>>{p, r, s}).ok());
  Reflection<Cone<Rat>> refl{Splitting<Cone<Rat>>{p, r, s}, a, b, c};
  CHECK(validate_reflection(cb, refl).ok());
}

TEST_CASE("reflections found constructively on both geometric backends") {
  for (int t = 0; t < 120; ++t) {
    Rng r = Rng::stream(56, t);
    auto p = random_interval(ib, r);
    auto refl = find_reflection(ib, p);
    CHECK(validate_reflection(ib, refl).ok());
  }
  for (int t = 0; t < 60; ++t) {
    Rng r = Rng::stream(57, t);
    auto p = random_cone(cb, r);
    auto refl = find_reflection(cb, p);
    CHECK(validate_reflection(cb, refl).ok());
  }
  // interval reflection per the appendix diagram: a, b outside p flanking
  // it, c a half circle
  auto p = deg(60, 120);
  auto refl = Reflection<Interval<Rat>>{
      Splitting<Interval<Rat>>{p, deg(70, 85), deg(95, 110)}, deg(40, 55), deg(125, 140),
      deg(330, 90)};
  CHECK(validate_reflection(ib, refl).ok());
}

TEST_CASE("the disk configuration realizes the symmetric-braiding MDZ") {
  // spherical triangle with side sigma, r_i at the vertices, s_k over the
  // opposite edges
  const double sigma = 0.5, rr = 0.05, rs = 0.34;
  Vec3 v1{0, 0, 1};
  Vec3 v2{std::sin(sigma), 0, std::cos(sigma)};
  // third vertex at angular distance sigma from both: longitude phi with
  // cos phi = cos sigma / (1 + cos sigma)
  double cphi = std::cos(sigma) / (1 + std::cos(sigma));
  double sphi = std::sqrt(std::max(0.0, 1 - cphi * cphi));
  Vec3 v3{std::sin(sigma) * cphi, std::sin(sigma) * sphi, std::cos(sigma)};
  // sanity: pairwise distances close to sigma
  REQUIRE(CapBackend::angdist(v1, v3) == Catch::Approx(sigma).margin(1e-9));
  REQUIRE(CapBackend::angdist(v2, v3) == Catch::Approx(sigma).margin(1e-9));
  auto mid = [&](Vec3 x, Vec3 y) { return unit(x + y); };
  Cap r1 = capb.make(v1, rr), r2 = capb.make(v2, rr), r3 = capb.make(v3, rr);
  Cap s1 = capb.make(mid(v2, v3), rs), s2 = capb.make(mid(v1, v3), rs), s3 = capb.make(mid(v1, v2), rs);
  // r_i <= s_i' and r_i, r_j <= s_k for distinct i,j,k
  CHECK(is_disjoint(capb, r1, s1));
  CHECK(is_disjoint(capb, r2, s2));
  CHECK(is_disjoint(capb, r3, s3));
  CHECK(capb.leq(r1, s2));
  CHECK(capb.leq(r3, s2));
  CHECK(capb.leq(r2, s1));
  CHECK(capb.leq(r3, s1));
  CHECK(capb.leq(r1, s3));
  CHECK(capb.leq(r2, s3));

  // the bracketed pair of zig-zags from the remark
  Mdz<Cap> m;
  m.top.z = {r1, r3, r2};
  m.top.y = {s2, s1};
  m.bottom.z = {r2, r1, r1};
  m.bottom.y = {s3, r1};
  Report rep = validate_mdz(capb, m);
  INFO(rep.str());
  CHECK(rep.ok());
}
