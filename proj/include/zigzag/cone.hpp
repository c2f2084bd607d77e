#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zigzag/angle.hpp"
#include "zigzag/error.hpp"
#include "zigzag/interval.hpp"
#include "zigzag/poset.hpp"

namespace zigzag {

struct Vec2 {
  double x = 0, y = 0;
};
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

inline double scalar_value(const Rat& s) { return s.to_double(); }
inline double scalar_value(double s) { return s; }

// Open sector in the plane: an apex, an interval of boundary-ray directions,
// and an accumulated spread. The spread records how far both boundary lines
// have been moved perpendicularly outward; the realized apex shifts by
// spread/sin(half opening) against the bisector. Keeping the spread as a
// separate field makes ((Λ^{+s})ᶜ)^{+s} = Λᶜ an identity of representations.
template <class S>
struct Cone {
  Vec2 apex;
  Interval<S> dir;
  S spread = scalar_ops<S>::zero();
};

template <class S>
class ConeBackend {
 public:
  using element = Cone<S>;
  using ops = scalar_ops<S>;

  explicit ConeBackend(Tolerance tol = {}) : tol_(tol), iv_(tol) {}

  static std::string name() { return "cone"; }
  const Tolerance& tolerance() const { return tol_; }
  const IntervalBackend<S>& intervals() const { return iv_; }

  element make(Vec2 apex, const S& start, const S& end,
               const S& spread = scalar_ops<S>::zero()) const {
    Interval<S> d = iv_.make(start, end);  // rejects openings within eps of 0 or 2pi
    return element{apex, d, spread};
  }

  // I(Λ): the canonical interval, invariant under translation and spread.
  const Interval<S>& canonical_interval(const element& c) const { return c.dir; }

  Vec2 effective_apex(const element& c) const {
    if (c.spread == ops::zero()) return c.apex;
    S half = iv_.length(c.dir) / S(2);
    double sa, ca;
    sincos_pi(half, sa, ca);
    if (std::abs(sa) < 1e-12) throw DegenerateGeometry("cone opening too close to 0 or 2pi");
    Vec2 u = dir_vec(mid_angle(c.dir));
    double shift = scalar_value(c.spread) / sa;
    return c.apex - shift * u;
  }

  element involution(const element& c) const {
    return element{c.apex, iv_.involution(c.dir), ops::zero() - c.spread};
  }

  // Λ^{+t}: move both boundary lines outward by t.
  element enlarge(const element& c, const S& t) const { return element{c.apex, c.dir, c.spread + t}; }

  bool leq(const element& a, const element& b) const {
    return !sectors_intersect(a, involution(b));
  }

  bool equal(const element& a, const element& b) const {
    Vec2 ea = effective_apex(a), eb = effective_apex(b);
    double scale = 1.0 + std::max(norm(ea), norm(eb));
    return iv_.equal(a.dir, b.dir) && norm(ea - eb) <= tol_.eps * scale;
  }

  // structural comparison; exact in rational mode
  bool repr_equal(const element& a, const element& b) const {
    return a.apex.x == b.apex.x && a.apex.y == b.apex.y && a.dir.start == b.dir.start &&
           a.dir.end == b.dir.end && a.spread == b.spread;
  }

  bool boundary_close(const element& a, const element& b) const {
    if (iv_.boundary_close(a.dir, b.dir)) return true;
    double d = norm(effective_apex(a) - effective_apex(b));
    return d > 0 && d <= tol_.eps;
  }

  // ---------------------------------------------------------------------
  // Set-level intersection test for two open sectors. A sector pair meets
  // iff their direction arcs overlap (far field), or one effective apex is
  // strictly interior to the other, or a boundary ray passes strictly
  // through the other's interior.
  // ---------------------------------------------------------------------
  bool sectors_intersect(const element& a, const element& b) const {
    for (const auto& c : iv_.intersection_components(a.dir, b.dir)) {
      if constexpr (ops::exact) {
        (void)c;
        return true;
      } else {
        if (ops::to_radians(iv_.length(c)) > 2 * tol_.eps) return true;
      }
    }
    Vec2 ea = effective_apex(a), eb = effective_apex(b);
    if (point_in(b, ea) || point_in(a, eb)) return true;
    if (ray_hits(ea, dir_vec(a.dir.start), b) || ray_hits(ea, dir_vec(a.dir.end), b)) return true;
    if (ray_hits(eb, dir_vec(b.dir.start), a) || ray_hits(eb, dir_vec(b.dir.end), a)) return true;
    return false;
  }

  bool point_in(const element& c, Vec2 x) const {
    Vec2 v = x - effective_apex(c);
    double r = norm(v);
    if (r <= 4 * tol_.eps) return false;
    double phi = std::atan2(v.y, v.x);
    double o = std::fmod(phi - ops::to_radians(c.dir.start), 2 * kPi);
    if (o < 0) o += 2 * kPi;
    double len = ops::to_radians(iv_.length(c.dir));
    double margin = tol_.eps / std::max(r, tol_.eps);
    return o > margin && o < len - margin;
  }

  std::optional<element> cap_witness(const element& a, const element& b) const {
    auto comps = iv_.intersection_components(a.dir, b.dir);
    std::sort(comps.begin(), comps.end(), [&](const Interval<S>& x, const Interval<S>& y) {
      return ops::lt(iv_.length(y), iv_.length(x), 0);
    });
    for (const auto& comp : comps) {
      S w = iv_.length(comp);
      Interval<S> j{ops::normalize(comp.start + w / S(8)), ops::normalize(comp.end - w / S(8))};
      try {
        return cap_cone(a, b, j);
      } catch (const Error&) {
      }
    }
    return std::nullopt;
  }

  std::optional<element> join_witness(const element& a, const element& b) const {
    auto gaps = iv_.intersection_components(iv_.involution(a.dir), iv_.involution(b.dir));
    std::sort(gaps.begin(), gaps.end(), [&](const Interval<S>& x, const Interval<S>& y) {
      return ops::lt(iv_.length(y), iv_.length(x), 0);
    });
    for (const auto& gap : gaps) {
      S w = iv_.length(gap);
      Interval<S> j{ops::normalize(gap.start + w / S(8)), ops::normalize(gap.end - w / S(8))};
      try {
        return enclosing_cone(a, b, j);
      } catch (const Error&) {
      }
    }
    return std::nullopt;
  }

  // Fact Λ2: a cone Γ ⊆ Λ∩Δ with I(Γ) = J, built by pushing the apex along
  // J's bisector until containment validates.
  element cap_cone(const element& a, const element& b, const Interval<S>& j) const {
    if (!iv_.leq(j, a.dir) || !iv_.leq(j, b.dir))
      throw PreconditionViolated("cap_cone: J not inside both canonical intervals");
    Vec2 u = dir_vec(mid_angle(j));
    double base = 2 * (1 + std::max(norm(effective_apex(a)), norm(effective_apex(b))));
    for (int k = 0; k < 64; ++k) {
      element cand{base * u, j, ops::zero()};
      if (leq(cand, a) && leq(cand, b)) return cand;
      base *= 2;
      if (!std::isfinite(base)) break;
    }
    throw ConstructionFailed("cap_cone: apex push did not converge");
  }

  // Fact Λ4: a cone Σ ⊇ Λ∪Δ with I(Σᶜ) = J.
  element enclosing_cone(const element& a, const element& b, const Interval<S>& j) const {
    if (!iv_.leq(j, iv_.involution(a.dir)) || !iv_.leq(j, iv_.involution(b.dir)))
      throw PreconditionViolated("enclosing_cone: J overlaps a canonical interval");
    Vec2 u = dir_vec(mid_angle(j));
    double base = 2 * (1 + std::max(norm(effective_apex(a)), norm(effective_apex(b))));
    for (int k = 0; k < 64; ++k) {
      element cand{base * u, iv_.involution(j), ops::zero()};
      if (leq(a, cand) && leq(b, cand)) return cand;
      base *= 2;
      if (!std::isfinite(base)) break;
    }
    throw ConstructionFailed("enclosing_cone: apex push did not converge");
  }

  Splitting<element> split(const element& p) const {
    Vec2 e = effective_apex(p);
    S l3 = iv_.length(p.dir) / S(3);
    element r{e, iv_.make(p.dir.start, p.dir.start + l3), ops::zero()};
    element s{e, iv_.make(p.dir.start + l3 + l3, p.dir.end), ops::zero()};
    return Splitting<element>{p, r, s};
  }

  std::vector<element> lower_candidates(const element& p) const {
    std::vector<element> out;
    out.push_back(p);
    Vec2 e = effective_apex(p);
    Vec2 u = dir_vec(mid_angle(p.dir));
    double step = 1 + norm(e);
    S width = iv_.length(p.dir);
    for (int d = 1; d <= 5; ++d) {
      width = width / S(3);
      S off = (iv_.length(p.dir) - width) / S(2);
      Interval<S> dir{ops::normalize(p.dir.start + off), ops::normalize(p.dir.end - off)};
      out.push_back(element{e, dir, ops::zero()});
      out.push_back(element{e + (step * (1 << d)) * u, dir, ops::zero()});
    }
    return out;
  }

  std::string str(const element& c) const {
    Vec2 e = effective_apex(c);
    std::ostringstream os;
    os.precision(17);
    os << "cone(" << e.x << "," << e.y << "," << degrees_to_string<S>(c.dir.start) << ","
       << degrees_to_string<S>(c.dir.end) << ")";
    return os.str();
  }

  // I_r(Λ): the cone's trace on the circle of radius r about the origin,
  // rescaled to the unit circle. All apexes must lie inside that circle.
  Interval<S> radial_interval(const element& c, double r) const {
    Vec2 e = effective_apex(c);
    if (norm(e) >= r) throw PreconditionViolated("radial_interval: apex outside radius");
    if (norm(e) <= tol_.eps) return c.dir;  // translation-free: I_r = I exactly
    double s0 = ops::to_radians(c.dir.start);
    double s1 = s0 + ops::to_radians(iv_.length(c.dir));
    double a0 = ray_circle_angle(e, s0, r);
    double a1 = ray_circle_angle(e, s1, r);
    return Interval<S>{snap(a0 / kPi), snap(a1 / kPi)};
  }

  // R such that for every listed cone and every radius beyond R the radial
  // interval endpoints sit within eps of the canonical ones; r bounds the
  // apex norms and R = r/sin(eps) certifies the bound.
  double zoom_out_radius(double r, double eps, const std::vector<element>& cones) const {
    double m = r;
    for (const auto& c : cones) m = std::max(m, norm(effective_apex(c)));
    if (eps <= 0 || eps >= kPi / 2) throw PreconditionViolated("zoom_out_radius: bad eps");
    return m / std::sin(eps);
  }

  // -------------------------------------------------------------------------
  // Zig-zag axiom by the three-step lift: run the interval construction on
  // the canonical intervals, then re-apex. Interior lower elements go deep
  // along their bisectors, interior upper elements go shallow, and the upper
  // elements adjacent to the endpoints reuse the endpoint apexes.
  // -------------------------------------------------------------------------
  ZigZag<element> ga3_zigzag(const element& pt, const element& ph, const element& p,
                             const element& q) const {
    if (!leq(pt, p) || !leq(ph, p)) throw PreconditionViolated("ga3: endpoints not below p");
    if (!(leq(pt, q) || leq(pt, involution(q))) || !(leq(ph, q) || leq(ph, involution(q))))
      throw PreconditionViolated("ga3: endpoints are not q-indicators");
    if (equal(pt, ph) && iv_.equal(pt.dir, ph.dir)) return trivial_zigzag(pt);

    const S pad0 = min_endpoint_gap(pt, ph, p, q) / S(10);
    std::string last = "no attempt";
    for (int attempt = 0; attempt < 4; ++attempt) {
      S pad = pad0;
      for (int k = 0; k < attempt; ++k) pad = pad / S(2);
      try {
        return lift_attempt(pt, ph, p, q, pad, attempt);
      } catch (const Error& e) {
        last = e.what();
      }
    }
    throw ConstructionFailed(std::string("ga3 cone lift: ") + last);
  }

 private:
  Vec2 dir_vec(const S& ang) const {
    double s, c;
    sincos_pi(ang, s, c);
    return Vec2{c, s};
  }
  S mid_angle(const Interval<S>& i) const { return ops::normalize(i.start + iv_.length(i) / S(2)); }

  static double ray_circle_angle(Vec2 e, double theta, double r) {
    Vec2 u{std::cos(theta), std::sin(theta)};
    double b = dot(e, u);
    double t = -b + std::sqrt(std::max(0.0, b * b + r * r - dot(e, e)));
    Vec2 x = e + t * u;
    return std::atan2(x.y, x.x);
  }

  static S snap(double pi_units) {
    if constexpr (ops::exact) {
      const std::int64_t den = 184320;  // multiple of the degree grids in use
      double n = pi_units * den;
      return Rat(static_cast<std::int64_t>(std::llround(n)), den);
    } else {
      return pi_units;
    }
  }

  // Does the ray from `a` in direction `u` pass strictly inside c? "Strictly"
  // means the depth inside both half-planes exceeds eps*(1+t) at ray
  // parameter t, which absorbs sub-tolerance angular noise at any distance.
  bool ray_hits(Vec2 a, Vec2 u, const element& c) const {
    Vec2 e = effective_apex(c);
    S len = iv_.length(c.dir);
    bool reflex = ops::lt(ops::half_turn(), len, 0);
    S mid = ops::normalize(c.dir.start + len / S(2));
    const int pieces = reflex ? 2 : 1;
    for (int pc = 0; pc < pieces; ++pc) {
      Vec2 b0 = dir_vec(pc == 0 ? c.dir.start : mid);
      Vec2 b1 = dir_vec(reflex ? (pc == 0 ? mid : c.dir.end) : c.dir.end);
      // strict interior of the convex piece: cross(b0, w) > 0, cross(w, b1) > 0
      Vec2 w0 = a - e;
      double lo = tol_.eps, hi = 1e18;
      auto clipline = [&](double pp, double qq) {
        // pp + qq*t > eps*(1+t)
        pp -= tol_.eps;
        qq -= tol_.eps;
        if (std::abs(qq) < 1e-14) {
          if (pp <= 0) lo = 1, hi = 0;
          return;
        }
        double bound = -pp / qq;
        if (qq > 0)
          lo = std::max(lo, bound);
        else
          hi = std::min(hi, bound);
      };
      clipline(cross(b0, w0), cross(b0, u));
      clipline(cross(w0, b1), -cross(b1, u));
      if (lo < hi && hi - lo > tol_.eps) return true;
    }
    return false;
  }

  S min_endpoint_gap(const element& pt, const element& ph, const element& p,
                     const element& q) const {
    std::vector<S> angles = {pt.dir.start, pt.dir.end, ph.dir.start, ph.dir.end,
                             p.dir.start,  p.dir.end,  q.dir.start,  q.dir.end};
    S best = ops::from_fraction(1, 4);
    for (std::size_t i = 0; i < angles.size(); ++i)
      for (std::size_t j = i + 1; j < angles.size(); ++j) {
        S d = ops::normalize(angles[i] - angles[j]);
        if (ops::lt(ops::half_turn(), d, 0)) d = ops::full_turn() - d;
        if (ops::to_radians(d) <= 4 * tol_.eps) continue;  // coincident endpoints are fine
        if (ops::lt(d, best, 0)) best = d;
      }
    return best;
  }

  ZigZag<element> lift_attempt(const element& pt, const element& ph, const element& p,
                               const element& q, const S& pad, int attempt) const {
    ZigZag<Interval<S>> izz =
        iv_.ga3_zigzag(pt.dir, ph.dir, p.dir, q.dir, pad);
    if (izz.hops() == 0) {
      // endpoints share a canonical interval but differ as cones; bridge
      // through a deep lower element under a shared upper element
      izz.z = {pt.dir, pt.dir, ph.dir};
      izz.y = {pt.dir, ph.dir};
    }
    if (izz.hops() == 1) {
      // both neighbours of the single upper element are original endpoints;
      // refine so every upper element touches at most one of them
      Interval<S> k = izz.y[0];
      S w = iv_.length(k);
      Interval<S> mid{ops::normalize(k.start + w * ops::from_fraction(2, 5)),
                      ops::normalize(k.start + w * ops::from_fraction(3, 5))};
      izz.z = {izz.z[0], mid, izz.z[1]};
      izz.y = {k, k};
    }

    const std::size_t n = izz.hops();
    double r0 = 1;
    for (const element* c : {&pt, &ph, &p, &q}) r0 = std::max(r0, norm(effective_apex(*c)));
    double minhalf = kPi;
    for (const auto& a : izz.z) minhalf = std::min(minhalf, ops::to_radians(iv_.length(a)) / 2);
    for (const auto& a : izz.y) minhalf = std::min(minhalf, ops::to_radians(iv_.length(a)) / 2);
    double padr = std::max(ops::to_radians(pad), 16 * tol_.eps);
    double grow = std::pow(4.0, attempt);
    double h = grow * 8 * r0 / std::sin(std::min(padr, minhalf));
    double d = grow * 8 * h / std::sin(minhalf);

    ZigZag<element> out;
    out.z.push_back(pt);
    for (std::size_t j = 1; j < n; ++j)
      out.z.push_back(element{d * dir_vec(mid_angle(izz.z[j])), izz.z[j], ops::zero()});
    out.z.push_back(ph);
    for (std::size_t j = 0; j < n; ++j) {
      Vec2 apex;
      if (j == 0)
        apex = effective_apex(pt);
      else if (j + 1 == n)
        apex = effective_apex(ph);
      else
        apex = h * dir_vec(mid_angle(izz.y[j]));
      out.y.push_back(element{apex, izz.y[j], ops::zero()});
    }

    ZigZagOpts<ConeBackend<S>> opts;
    opts.contained_in = p;
    opts.ga3_for = q;
    Report rep = validate_zigzag(*this, out, opts);
    if (!rep.ok()) throw ConstructionFailed("ga3 lift validation: " + rep.str());
    return out;
  }

  Tolerance tol_;
  IntervalBackend<S> iv_;
};

}  // namespace zigzag
