#include <catch2/catch_amalgamated.hpp>

#include "zigzag/interval.hpp"
#include "zigzag/poset.hpp"
#include "zigzag/sampling.hpp"

using namespace zigzag;

namespace {

const IntervalBackend<Rat> ib;
const IntervalBackend<double> ibd;

Interval<Rat> deg(std::int64_t a, std::int64_t b) { return ib.make(Rat(a, 180), Rat(b, 180)); }

// 1440-slot discretization oracle: slot k covered iff its midpoint angle lies
// in the open arc.
std::vector<bool> rasterize(const Interval<Rat>& i) {
  std::vector<bool> out(1440);
  for (int k = 0; k < 1440; ++k) {
    Rat mid(2 * k + 1, 1440);  // in pi units
    Rat off = scalar_ops<Rat>::normalize(mid - i.start);
    out[k] = off < ib.length(i);
  }
  return out;
}

}  // namespace

TEST_CASE("interval disjointness and overlap match the arc picture") {
  CHECK(is_disjoint(ib, deg(0, 90), deg(180, 270)));
  auto p = deg(37, 141);
  CHECK(is_disjoint(ib, p, ib.involution(p)));
  CHECK_FALSE(is_disjoint(ib, deg(0, 90), deg(45, 135)));
}

TEST_CASE("intersection components, counterclockwise from the first arc") {
  auto one = ib.intersection_components(deg(0, 90), deg(45, 135));
  REQUIRE(one.size() == 1);
  CHECK(ib.equal(one[0], deg(45, 90)));

  auto one2 = ib.intersection_components(deg(0, 180), deg(270, 90));
  REQUIRE(one2.size() == 1);
  CHECK(ib.equal(one2[0], deg(0, 90)));

  // a genuinely two-component intersection, ccw from the first arc's start
  auto two = ib.intersection_components(deg(45, 315), deg(270, 90));
  REQUIRE(two.size() == 2);
  CHECK(ib.equal(two[0], deg(45, 90)));
  CHECK(ib.equal(two[1], deg(270, 315)));

  CHECK(ib.intersection_components(deg(10, 70), ib.involution(deg(10, 70))).empty());
}

TEST_CASE("intersection components agree with a grid oracle") {
  Rng rng(21);
  for (int t = 0; t < 400; ++t) {
    Rng r = Rng::stream(21, t);
    auto a = random_interval(ib, r);
    auto b = random_interval(ib, r);
    auto comps = ib.intersection_components(a, b);
    std::vector<bool> got(1440, false);
    for (const auto& c : comps) {
      auto rc = rasterize(c);
      for (int k = 0; k < 1440; ++k) {
        CHECK_FALSE((got[k] && rc[k]));  // components do not overlap
        got[k] = got[k] || rc[k];
      }
    }
    auto ra = rasterize(a), rb = rasterize(b);
    for (int k = 0; k < 1440; ++k) CHECK(got[k] == (ra[k] && rb[k]));
  }
  (void)rng;
}

TEST_CASE("leq is containment of arcs") {
  CHECK(ib.leq(deg(10, 20), deg(0, 90)));
  CHECK(ib.leq(deg(0, 90), deg(0, 90)));
  CHECK(ib.leq(deg(0, 45), deg(0, 90)));   // shared start
  CHECK(ib.leq(deg(45, 90), deg(0, 90)));  // shared end
  CHECK_FALSE(ib.leq(deg(0, 91), deg(0, 90)));
  CHECK_FALSE(ib.leq(deg(350, 10), deg(0, 90)));
  CHECK(ib.leq(deg(350, 10), deg(340, 90)));  // wraparound containment
}

TEST_CASE("involution laws and order reversal on random samples") {
  for (int t = 0; t < 500; ++t) {
    Rng r = Rng::stream(22, t);
    auto a = random_interval(ib, r);
    auto b = random_interval(ib, r);
    CHECK(ib.equal(ib.involution(ib.involution(a)), a));
    if (ib.leq(a, b)) CHECK(ib.leq(ib.involution(b), ib.involution(a)));
  }
}

TEST_CASE("cap and join witnesses validate") {
  auto w = ib.cap_witness(deg(0, 90), deg(45, 135));
  REQUIRE(w);
  CHECK(ib.leq(*w, deg(45, 90)));
  CHECK(ib.leq(*w, deg(0, 90)));
  CHECK(ib.leq(*w, deg(45, 135)));

  auto self = ib.cap_witness(deg(0, 90), deg(0, 90));
  REQUIRE(self);
  CHECK(ib.equal(*self, deg(0, 90)));  // p is a valid witness for (p, p)

  CHECK_FALSE(ib.cap_witness(deg(0, 90), ib.involution(deg(0, 90))));

  for (int t = 0; t < 500; ++t) {
    Rng r = Rng::stream(23, t);
    auto a = random_interval(ib, r);
    auto b = random_interval(ib, r);
    if (auto j = ib.join_witness(a, b)) {
      CHECK(ib.leq(a, *j));
      CHECK(ib.leq(b, *j));
    } else {
      // no gap: every slot lies in a or b
      auto ra = rasterize(a), rb = rasterize(b);
      int uncovered = 0;
      for (int k = 0; k < 1440; ++k)
        if (!ra[k] && !rb[k]) ++uncovered;
      CHECK(uncovered == 0);
    }
  }
}

TEST_CASE("float mode mirrors the rational backend within tolerance") {
  for (int t = 0; t < 400; ++t) {
    Rng r1 = Rng::stream(24, t), r2 = Rng::stream(24, t);
    auto a = random_interval(ib, r1);
    auto b = random_interval(ib, r1);
    auto ad = random_interval(ibd, r2);
    auto bd = random_interval(ibd, r2);
    CHECK(ib.leq(a, b) == ibd.leq(ad, bd));
    CHECK(is_disjoint(ib, a, b) == is_disjoint(ibd, ad, bd));
  }
}

TEST_CASE("splitting produces disjoint pieces below the parent") {
  for (int t = 0; t < 300; ++t) {
    Rng r = Rng::stream(25, t);
    auto p = random_interval(ib, r);
    CHECK(validate_splitting(ib, ib.split(p)).ok());
  }
}
