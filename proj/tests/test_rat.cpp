#include <catch2/catch_amalgamated.hpp>

#include "zigzag/angle.hpp"
#include "zigzag/rat.hpp"
#include "zigzag/sampling.hpp"

using namespace zigzag;

TEST_CASE("rational arithmetic normalizes and compares exactly") {
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-3, -6) == Rat(1, 2));
  CHECK(Rat(1, 3) * Rat(3, 7) == Rat(1, 7));
  CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
  CHECK(Rat(7, 3).floor() == 2);
  CHECK(Rat(-7, 3).floor() == -3);
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic survives mixed random expressions") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    Rat a(static_cast<std::int64_t>(rng.below(2000)) - 1000, 1 + static_cast<std::int64_t>(rng.below(64)));
    Rat b(static_cast<std::int64_t>(rng.below(2000)) - 1000, 1 + static_cast<std::int64_t>(rng.below(64)));
    Rat sum = a + b;
    CHECK(sum - b == a);
    if (!(b == Rat(0))) CHECK((a / b) * b == a);
  }
}

TEST_CASE("quadrant trig is exactly symmetric in rational mode") {
  Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    Rat q(static_cast<std::int64_t>(rng.below(4 * kAngleGrid)), kAngleGrid);
    double s0, c0, s1, c1;
    sincos_pi(q, s0, c0);
    sincos_pi(q + Rat(1), s1, c1);  // shift by half a turn
    CHECK(s1 == -s0);
    CHECK(c1 == -c0);
    sincos_pi(Rat(2) - q, s1, c1);  // reflection
    CHECK(s1 == -s0);
    CHECK(c1 == c0);
  }
}

TEST_CASE("degree literals round-trip exactly in rational mode") {
  auto a = degrees_from_string<Rat>("45");
  CHECK(a == Rat(1, 4));
  auto b = degrees_from_string<Rat>("0.125");
  CHECK(degrees_to_string<Rat>(b) == "0.125");
  CHECK(degrees_to_string<Rat>(a) == "45");
  CHECK_THROWS_AS(degrees_from_string<Rat>("12x"), std::invalid_argument);
}
