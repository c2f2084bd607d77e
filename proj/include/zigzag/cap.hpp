#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zigzag/angle.hpp"
#include "zigzag/error.hpp"
#include "zigzag/poset.hpp"

namespace zigzag {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};
inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double k, Vec3 v) { return {k * v.x, k * v.y, k * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 crossv(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 unit(Vec3 a) {
  double n = norm(a);
  if (n == 0) throw DegenerateGeometry("zero vector");
  return (1.0 / n) * a;
}

// Open geodesic ball on the unit sphere. The complement of a cap is a cap,
// so the involution is internal: (c, rho) -> (-c, pi - rho).
struct Cap {
  Vec3 center;   // unit vector
  double radius; // angular, in (0, pi)
};

class CapBackend {
 public:
  using element = Cap;

  explicit CapBackend(Tolerance tol = {}) : tol_(tol) {}

  static std::string name() { return "cap"; }
  const Tolerance& tolerance() const { return tol_; }

  element make(Vec3 center, double radius) const {
    if (!(radius > tol_.eps && radius < kPi - tol_.eps))
      throw DegenerateGeometry("cap radius must lie strictly in (0, pi)");
    return element{unit(center), radius};
  }

  static double angdist(Vec3 a, Vec3 b) {
    // atan2 keeps the distance well-conditioned near 0 and pi
    return std::atan2(norm(crossv(a, b)), dot(a, b));
  }

  element involution(const element& c) const { return element{-1.0 * c.center, kPi - c.radius}; }

  bool leq(const element& a, const element& b) const {
    return angdist(a.center, b.center) <= b.radius - a.radius + tol_.eps;
  }

  bool equal(const element& a, const element& b) const {
    return angdist(a.center, b.center) <= tol_.eps && std::abs(a.radius - b.radius) <= tol_.eps;
  }

  bool boundary_close(const element& a, const element& b) const {
    double d = angdist(a.center, b.center);
    return std::abs(d - (b.radius - a.radius)) <= tol_.eps ||
           std::abs(d - (a.radius + b.radius)) <= tol_.eps;
  }

  std::optional<element> cap_witness(const element& a, const element& b) const {
    double d = angdist(a.center, b.center);
    double mu = (a.radius + b.radius - d) / 2;  // depth of the lens
    if (mu <= 8 * tol_.eps) return std::nullopt;
    double x = (a.radius - b.radius + d) / 2;  // lens midpoint, possibly beyond a center
    Vec3 m = toward(a.center, b.center, x);
    double r = std::min({mu / 2, a.radius, b.radius});
    element w{m, r};
    if (!leq(w, a) || !leq(w, b)) return std::nullopt;
    return w;
  }

  std::optional<element> join_witness(const element& a, const element& b) const {
    double d = angdist(a.center, b.center);
    double nu = (a.radius + b.radius + d) / 2 + 4 * tol_.eps;
    if (nu >= kPi - 8 * tol_.eps) return std::nullopt;
    double x = (b.radius - a.radius + d) / 2;  // may extend past either center
    Vec3 m = toward(a.center, b.center, x);
    element w{m, nu};
    if (!leq(a, w) || !leq(b, w)) return std::nullopt;
    return w;
  }

  Splitting<element> split(const element& p) const {
    Vec3 t = tangent(p.center);
    double off = p.radius / 2;
    double r = p.radius / 8;
    element a{rotate_toward(p.center, t, off), r};
    element b{rotate_toward(p.center, -1.0 * t, off), r};
    return Splitting<element>{p, a, b};
  }

  std::vector<element> lower_candidates(const element& p) const {
    std::vector<element> out{p};
    double r = p.radius;
    for (int d = 1; d <= 5; ++d) {
      r /= 2;
      out.push_back(element{p.center, r});
    }
    return out;
  }

  std::string str(const element& c) const {
    std::ostringstream os;
    os.precision(17);
    os << "cap(" << c.center.x << "," << c.center.y << "," << c.center.z << ","
       << c.radius * 180.0 / kPi << ")";
    return os.str();
  }

  // The zig-zag axiom is not claimed for caps; this attempts a short
  // construction and reports failure otherwise.
  ZigZag<element> ga3_zigzag(const element& pt, const element& ph, const element& p,
                             const element& q) const {
    if (!leq(pt, p) || !leq(ph, p)) throw PreconditionViolated("ga3: endpoints not below p");
    auto small = [&](const element& y) {
      return join_witness(y, q).has_value() && join_witness(y, involution(q)).has_value();
    };
    if (equal(pt, ph)) return trivial_zigzag(pt);
    auto attempt = [&](const ZigZag<element>& zz) -> bool {
      ZigZagOpts<CapBackend> opts;
      opts.contained_in = p;
      opts.ga3_for = q;
      return validate_zigzag(*this, zz, opts).ok();
    };
    if (auto y = join_witness(pt, ph)) {
      if (leq(*y, p) && small(*y)) {
        ZigZag<element> zz;
        zz.z = {pt, ph};
        zz.y = {*y};
        if (attempt(zz)) return zz;
      }
    }
    // two hops via a midpoint cap on the geodesic
    double d = angdist(pt.center, ph.center);
    Vec3 m = d < tol_.eps ? pt.center : toward(pt.center, ph.center, d / 2);
    double mr = std::min(pt.radius, ph.radius) / 2;
    element mid{m, mr};
    auto y1 = join_witness(pt, mid);
    auto y2 = join_witness(mid, ph);
    if (y1 && y2 && leq(*y1, p) && leq(*y2, p) && small(*y1) && small(*y2) &&
        (leq(mid, q) || leq(mid, involution(q)))) {
      ZigZag<element> zz;
      zz.z = {pt, mid, ph};
      zz.y = {*y1, *y2};
      if (attempt(zz)) return zz;
    }
    throw ConstructionFailed("ga3 for caps: attempted construction failed (axiom not claimed)");
  }

 private:
  static Vec3 tangent(Vec3 c) {
    Vec3 ref = std::abs(c.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    return unit(crossv(c, ref));
  }
  // point at angular distance t from a along the geodesic toward b
  static Vec3 toward(Vec3 a, Vec3 b, double t) {
    double d = angdist(a, b);
    if (d < 1e-12 || d > kPi - 1e-12) {
      Vec3 tg = tangent(a);
      return unit(std::cos(t) * a + std::sin(t) * tg);
    }
    Vec3 e = unit(b - dot(a, b) * a);
    return unit(std::cos(t) * a + std::sin(t) * e);
  }
  static Vec3 rotate_toward(Vec3 c, Vec3 t, double ang) {
    return unit(std::cos(ang) * c + std::sin(ang) * unit(t));
  }

  Tolerance tol_;
};

}  // namespace zigzag
