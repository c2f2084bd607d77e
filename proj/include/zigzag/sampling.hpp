#pragma once

#include <cstdint>

#include "zigzag/cap.hpp"
#include "zigzag/cone.hpp"
#include "zigzag/finite_poset.hpp"
#include "zigzag/interval.hpp"

namespace zigzag {

// Deterministic splittable generator. Sample i of a suite seeded with s draws
// from stream mix(s, i), so results are independent of evaluation order.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    r.next();
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
};

// Angles are drawn from a fixed grid so the rational mode stays exact and
// denominators stay small.
inline constexpr std::int64_t kAngleGrid = 11520;  // 1/32 degree steps over a half turn

template <class S>
inline S grid_angle(Rng& rng) {
  return scalar_ops<S>::from_fraction(static_cast<std::int64_t>(rng.below(2 * kAngleGrid)),
                                      kAngleGrid);
}

template <class S>
inline S grid_fraction(Rng& rng, std::int64_t lo_steps, std::int64_t hi_steps) {
  std::int64_t k = lo_steps + static_cast<std::int64_t>(rng.below(hi_steps - lo_steps));
  return scalar_ops<S>::from_fraction(k, kAngleGrid);
}

template <class S>
inline Interval<S> random_interval(const IntervalBackend<S>& b, Rng& rng) {
  S start = grid_angle<S>(rng);
  // length between ~1 degree and ~358 degrees
  S len = grid_fraction<S>(rng, kAngleGrid / 180, 2 * kAngleGrid - 2 * kAngleGrid / 180);
  return b.make(start, start + len);
}

// a proper subinterval, at fractional position [lo,hi] of the parent
template <class S>
inline Interval<S> random_subinterval(const IntervalBackend<S>& b, const Interval<S>& p,
                                      Rng& rng) {
  using ops = scalar_ops<S>;
  S len = b.length(p);
  std::int64_t a = 1 + static_cast<std::int64_t>(rng.below(29));
  std::int64_t w = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(31 - a)));
  S lo = len * ops::from_fraction(a, 32);
  S hi = len * ops::from_fraction(a + w, 32);
  return b.make(p.start + lo, p.start + hi);
}

template <class S>
inline Splitting<Interval<S>> random_interval_splitting(const IntervalBackend<S>& b,
                                                        const Interval<S>& p, Rng& rng) {
  using ops = scalar_ops<S>;
  S len = b.length(p);
  // four fractions 0 < u1 < u2 < u3 < u4 < 1 on a 64 grid
  std::int64_t u1 = 1 + static_cast<std::int64_t>(rng.below(58));
  std::int64_t u2 = u1 + 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(61 - u1)));
  std::int64_t u3 = u2 + 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(62 - u2)));
  std::int64_t u4 = u3 + 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(63 - u3)));
  Interval<S> r = b.make(p.start + len * ops::from_fraction(u1, 64),
                         p.start + len * ops::from_fraction(u2, 64));
  Interval<S> s = b.make(p.start + len * ops::from_fraction(u3, 64),
                         p.start + len * ops::from_fraction(u4, 64));
  return Splitting<Interval<S>>{p, r, s};
}

inline Vec2 grid_point(Rng& rng, double extent = 8.0) {
  double x = (static_cast<double>(rng.below(512)) / 256.0 - 1.0) * extent;
  double y = (static_cast<double>(rng.below(512)) / 256.0 - 1.0) * extent;
  return Vec2{x, y};
}

template <class S>
inline Cone<S> random_cone(const ConeBackend<S>& b, Rng& rng) {
  Interval<S> d = random_interval(b.intervals(), rng);
  return Cone<S>{grid_point(rng), d, scalar_ops<S>::zero()};
}

template <class S>
inline Splitting<Cone<S>> random_cone_splitting(const ConeBackend<S>& b, const Cone<S>& p,
                                                Rng& rng) {
  auto ds = random_interval_splitting(b.intervals(), b.canonical_interval(p), rng);
  Vec2 e = b.effective_apex(p);
  // occasionally push the pieces deeper along their bisectors
  auto deepen = [&](const Interval<S>& d) {
    Cone<S> c{e, d, scalar_ops<S>::zero()};
    if (rng.below(2) == 0) return c;
    double s, co;
    S mid = scalar_ops<S>::normalize(d.start + b.intervals().length(d) / S(2));
    sincos_pi(mid, s, co);
    double push = 0.25 * static_cast<double>(rng.below(16));
    return Cone<S>{e + push * Vec2{co, s}, d, scalar_ops<S>::zero()};
  };
  return Splitting<Cone<S>>{p, deepen(ds.r), deepen(ds.s)};
}

inline Cap random_cap(const CapBackend& b, Rng& rng) {
  double z = 2.0 * rng.unit() - 1.0;
  double phi = 2.0 * kPi * rng.unit();
  double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  Vec3 c{rho * std::cos(phi), rho * std::sin(phi), z};
  double radius = 0.05 + rng.unit() * (kPi - 0.35);
  return b.make(c, radius);
}

}  // namespace zigzag
