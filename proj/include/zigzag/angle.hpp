#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "zigzag/rat.hpp"

namespace zigzag {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Angles are kept in units of pi (a half turn is 1) for both scalar modes.
// The Rat scalar gives the strict-rational mode: normalization, complements
// and bisectors are exact, and trig goes through quadrant reduction so the
// usual symmetries hold bit-for-bit. The double scalar is the float-eps
// fallback with the same interface.
template <class S>
struct scalar_ops;

template <>
struct scalar_ops<Rat> {
  using value = Rat;
  static constexpr bool exact = true;

  static Rat zero() { return Rat(0); }
  static Rat full_turn() { return Rat(2); }
  static Rat half_turn() { return Rat(1); }
  static Rat from_fraction(std::int64_t n, std::int64_t d) { return Rat(n, d); }
  static Rat from_degrees_exact(std::int64_t n, std::int64_t d) { return Rat(n, d) / Rat(180); }

  // value modulo a full turn, in [0, 2)
  static Rat normalize(const Rat& a) {
    std::int64_t k = (a / Rat(2)).floor();
    return a - Rat(2) * Rat(k);
  }

  static double to_radians(const Rat& a) { return a.to_double() * kPi; }
  static double to_degrees(const Rat& a) { return a.to_double() * 180.0; }

  static bool eq(const Rat& a, const Rat& b, double) { return a == b; }
  static bool le(const Rat& a, const Rat& b, double) { return a <= b; }
  static bool lt(const Rat& a, const Rat& b, double) { return a < b; }
};

template <>
struct scalar_ops<double> {
  using value = double;
  static constexpr bool exact = false;

  static double zero() { return 0.0; }
  static double full_turn() { return 2.0; }
  static double half_turn() { return 1.0; }
  static double from_fraction(std::int64_t n, std::int64_t d) {
    return static_cast<double>(n) / static_cast<double>(d);
  }
  static double from_degrees_exact(std::int64_t n, std::int64_t d) {
    return static_cast<double>(n) / static_cast<double>(d) / 180.0;
  }

  static double normalize(double a) {
    double r = std::fmod(a, 2.0);
    if (r < 0) r += 2.0;
    return r;
  }

  static double to_radians(double a) { return a * kPi; }
  static double to_degrees(double a) { return a * 180.0; }

  // eps is in radians; angles are in pi units
  static bool eq(double a, double b, double eps) { return std::abs(a - b) * kPi <= eps; }
  static bool le(double a, double b, double eps) { return (a - b) * kPi <= eps; }
  static bool lt(double a, double b, double eps) { return (a - b) * kPi < -eps; }
};

// sin/cos of pi*a with exact quadrant symmetry: negating or shifting the
// argument by half turns produces exactly negated results.
template <class S>
inline void sincos_pi(const S& a, double& s, double& c) {
  using ops = scalar_ops<S>;
  S r = ops::normalize(a);  // [0,2)
  int quadrant;
  S b = r;
  const S half = ops::from_fraction(1, 2);
  const S one = ops::half_turn();
  const S threehalf = ops::from_fraction(3, 2);
  if (!ops::lt(half, r, 0)) {  // r <= 1/2
    quadrant = 0;
  } else if (!ops::lt(one, r, 0)) {  // r <= 1
    quadrant = 1;
    b = one - r;
  } else if (!ops::lt(threehalf, r, 0)) {  // r <= 3/2
    quadrant = 2;
    b = r - one;
  } else {
    quadrant = 3;
    b = ops::full_turn() - r;
  }
  double br = ops::to_radians(b);
  double sb = std::sin(br);
  double cb = std::cos(br);
  switch (quadrant) {
    case 0: s = sb; c = cb; break;
    case 1: s = sb; c = -cb; break;
    case 2: s = -sb; c = -cb; break;
    default: s = -sb; c = cb; break;
  }
}

struct Tolerance {
  double eps = 1e-9;  // radians
};

// Parses a degree literal into an angle in pi units, exactly in the rational
// mode. Accepts decimals ("45", "-12.5", "0.125") and rationals ("85/3").
template <class S>
inline S degrees_from_string(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw std::invalid_argument("bad angle literal: " + text);
    std::int64_t n = std::stoll(ns), d = std::stoll(ds);
    return scalar_ops<S>::from_degrees_exact(n, d);
  }
  std::string t = text;
  bool neg = false;
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
    neg = t[i] == '-';
    ++i;
  }
  std::int64_t intpart = 0, fracnum = 0, fracden = 1;
  bool any = false;
  for (; i < t.size() && t[i] >= '0' && t[i] <= '9'; ++i) {
    intpart = intpart * 10 + (t[i] - '0');
    any = true;
  }
  if (i < t.size() && t[i] == '.') {
    ++i;
    for (; i < t.size() && t[i] >= '0' && t[i] <= '9'; ++i) {
      if (fracden > 100000000000000LL) break;  // enough precision
      fracnum = fracnum * 10 + (t[i] - '0');
      fracden *= 10;
      any = true;
    }
  }
  if (!any || i != t.size()) throw std::invalid_argument("bad angle literal: " + text);
  S v = scalar_ops<S>::from_degrees_exact(intpart, 1) +
        scalar_ops<S>::from_degrees_exact(fracnum, fracden);
  return neg ? S(scalar_ops<S>::zero() - v) : v;
}

template <class S>
inline std::string degrees_to_string(const S& a);

template <>
inline std::string degrees_to_string<Rat>(const Rat& a) {
  Rat deg = a * Rat(180);
  if (deg.den() == 1) return std::to_string(deg.num());
  // decimal expansion when the denominator is 2^a*5^b, else an exact fraction
  std::int64_t d = deg.den();
  std::int64_t scale = 1;
  while (d % 2 == 0 && scale < 1000000000000LL) { d /= 2; scale *= 10; }
  while (d % 5 == 0 && scale < 1000000000000LL) { d /= 5; scale *= 10; }
  std::ostringstream os;
  if (d == 1) {
    Rat scaled = deg * Rat(scale);
    std::int64_t units = scaled.num() / scaled.den();
    std::string digits = std::to_string(units < 0 ? -units : units);
    std::string sdigits = std::to_string(scale);
    std::size_t places = sdigits.size() - 1;
    while (digits.size() <= places) digits = "0" + digits;
    std::string head = digits.substr(0, digits.size() - places);
    std::string tail = digits.substr(digits.size() - places);
    while (!tail.empty() && tail.back() == '0') tail.pop_back();
    os << (units < 0 ? "-" : "") << head;
    if (!tail.empty()) os << "." << tail;
  } else {
    os << deg.num() << "/" << deg.den();
  }
  return os.str();
}

template <>
inline std::string degrees_to_string<double>(const double& a) {
  std::ostringstream os;
  os.precision(17);
  os << a * 180.0;
  return os.str();
}

}  // namespace zigzag
