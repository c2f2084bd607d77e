#include <catch2/catch_amalgamated.hpp>

#include "zigzag/cap.hpp"
#include "zigzag/poset.hpp"
#include "zigzag/sampling.hpp"

using namespace zigzag;

namespace {
const CapBackend capb;

Vec3 random_unit(Rng& r) {
  double z = 2.0 * r.unit() - 1.0;
  double phi = 2.0 * kPi * r.unit();
  double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3{rho * std::cos(phi), rho * std::sin(phi), z};
}

bool member(const Cap& c, Vec3 x) { return CapBackend::angdist(c.center, x) < c.radius; }
}  // namespace

TEST_CASE("cap involution laws") {
  for (int t = 0; t < 1000; ++t) {
    Rng r = Rng::stream(41, t);
    Cap a = random_cap(capb, r);
    Cap b = random_cap(capb, r);
    CHECK(capb.equal(capb.involution(capb.involution(a)), a));
    if (capb.leq(a, b)) CHECK(capb.leq(capb.involution(b), capb.involution(a)));
    CHECK(is_disjoint(capb, a, capb.involution(a)));
  }
}

TEST_CASE("cap leq and disjointness agree with sphere point sampling") {
  for (int t = 0; t < 200; ++t) {
    Rng r = Rng::stream(42, t);
    Cap a = random_cap(capb, r);
    Cap b = random_cap(capb, r);
    bool le = capb.leq(a, b);
    bool dis = is_disjoint(capb, a, b);
    int inside_a = 0, in_both = 0, a_not_b = 0;
    for (int s = 0; s < 400; ++s) {
      Rng rs = Rng::stream(4200 + t, s);
      Vec3 x = random_unit(rs);
      if (!member(a, x)) continue;
      ++inside_a;
      if (member(b, x))
        ++in_both;
      else
        ++a_not_b;
    }
    if (le) CHECK(a_not_b == 0);
    if (dis) CHECK(in_both == 0);
    (void)inside_a;
  }
}

TEST_CASE("cap witnesses and joins validate") {
  for (int t = 0; t < 500; ++t) {
    Rng r = Rng::stream(43, t);
    Cap a = random_cap(capb, r);
    Cap b = random_cap(capb, r);
    if (auto w = capb.cap_witness(a, b)) {
      CHECK(capb.leq(*w, a));
      CHECK(capb.leq(*w, b));
    }
    if (auto j = capb.join_witness(a, b)) {
      CHECK(capb.leq(a, *j));
      CHECK(capb.leq(b, *j));
    }
    CHECK(validate_splitting(capb, capb.split(a)).ok());
  }
}

TEST_CASE("GA0 and GA1 hold for caps on random samples") {
  for (int t = 0; t < 1000; ++t) {
    Rng r = Rng::stream(44, t);
    Cap a = random_cap(capb, r);
    Cap b = random_cap(capb, r);
    CHECK_FALSE(capb.cap_witness(a, capb.involution(a)).has_value());
    bool sat = capb.cap_witness(a, b).has_value() ||
               capb.cap_witness(a, capb.involution(b)).has_value();
    CHECK(sat);
  }
}
