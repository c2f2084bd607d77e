#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "zigzag/netspec.hpp"
#include "zigzag/poset.hpp"

namespace zigzag {

// region literals in the file syntax; angles in degrees, lengths as given
template <class B>
struct RegionLiteral;

template <class S>
struct RegionLiteral<IntervalBackend<S>> {
  static Interval<S> parse(const IntervalBackend<S>& b, const std::string& lit) {
    return detail::parse_interval_literal(b, lit);
  }
  static std::string print(const IntervalBackend<S>& b, const Interval<S>& e) { return b.str(e); }
};

template <class S>
struct RegionLiteral<ConeBackend<S>> {
  static Cone<S> parse(const ConeBackend<S>& b, const std::string& lit) {
    return detail::parse_cone_literal(b, lit);
  }
  static std::string print(const ConeBackend<S>& b, const Cone<S>& e) { return b.str(e); }
};

template <>
struct RegionLiteral<CapBackend> {
  static Cap parse(const CapBackend& b, const std::string& lit) {
    return detail::parse_cap_literal(b, lit);
  }
  static std::string print(const CapBackend& b, const Cap& e) { return b.str(e); }
};

template <>
struct RegionLiteral<FinitePoset> {
  static int parse(const FinitePoset& b, const std::string& lit) { return b.index_of(lit); }
  static std::string print(const FinitePoset& b, int e) { return b.str(e); }
};

// ---------------------------------------------------------------------------
// witness files: zig-zags, mutually disjoint zig-zags, reflections
// ---------------------------------------------------------------------------

template <class B>
inline std::string witness_zigzag(const B& b, const ZigZag<typename B::element>& zz,
                                  const std::optional<typename B::element>& contained = {},
                                  const std::optional<typename B::element>& ga3_for = {}) {
  std::ostringstream os;
  os << "witness v1\nkind zigzag\nbackend " << B::name() << "\n";
  if (contained) os << "contained_in " << RegionLiteral<B>::print(b, *contained) << "\n";
  if (ga3_for) os << "ga3_for " << RegionLiteral<B>::print(b, *ga3_for) << "\n";
  for (const auto& z : zz.z) os << "z " << RegionLiteral<B>::print(b, z) << "\n";
  for (const auto& y : zz.y) os << "y " << RegionLiteral<B>::print(b, y) << "\n";
  return os.str();
}

template <class B>
inline std::string witness_mdz(const B& b, const Mdz<typename B::element>& m, bool swapped,
                               const std::optional<typename B::element>& contained = {}) {
  std::ostringstream os;
  os << "witness v1\nkind mdz\nbackend " << B::name() << "\nswapped " << (swapped ? 1 : 0) << "\n";
  if (contained) os << "contained_in " << RegionLiteral<B>::print(b, *contained) << "\n";
  for (const auto& z : m.top.z) os << "top-z " << RegionLiteral<B>::print(b, z) << "\n";
  for (const auto& y : m.top.y) os << "top-y " << RegionLiteral<B>::print(b, y) << "\n";
  for (const auto& z : m.bottom.z) os << "bottom-z " << RegionLiteral<B>::print(b, z) << "\n";
  for (const auto& y : m.bottom.y) os << "bottom-y " << RegionLiteral<B>::print(b, y) << "\n";
  return os.str();
}

template <class B>
inline std::string witness_reflection(const B& b, const Reflection<typename B::element>& r) {
  std::ostringstream os;
  os << "witness v1\nkind reflection\nbackend " << B::name() << "\n";
  os << "parent " << RegionLiteral<B>::print(b, r.base.parent) << "\n";
  os << "r " << RegionLiteral<B>::print(b, r.base.r) << "\n";
  os << "s " << RegionLiteral<B>::print(b, r.base.s) << "\n";
  os << "a " << RegionLiteral<B>::print(b, r.a) << "\n";
  os << "b " << RegionLiteral<B>::print(b, r.b) << "\n";
  os << "c " << RegionLiteral<B>::print(b, r.c) << "\n";
  return os.str();
}

// Reload a witness file and re-validate it against the backend; returns the
// validation report. Throws ParseError on malformed files.
template <class B>
inline Report revalidate_witness(const B& b, const std::string& text) {
  std::istringstream in(text);
  std::string line, kind;
  ZigZag<typename B::element> zz;
  Mdz<typename B::element> m;
  Reflection<typename B::element> refl{};
  std::optional<typename B::element> contained, ga3_for;
  std::map<std::string, typename B::element> fields;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "witness") continue;
    std::string rest;
    ls >> rest;
    if (kw == "kind") {
      kind = rest;
    } else if (kw == "backend") {
      if (rest != B::name()) throw BackendMismatch("witness backend " + rest);
    } else if (kw == "swapped") {
      continue;
    } else if (kw == "contained_in") {
      contained = RegionLiteral<B>::parse(b, rest);
    } else if (kw == "ga3_for") {
      ga3_for = RegionLiteral<B>::parse(b, rest);
    } else if (kw == "z") {
      zz.z.push_back(RegionLiteral<B>::parse(b, rest));
    } else if (kw == "y") {
      zz.y.push_back(RegionLiteral<B>::parse(b, rest));
    } else if (kw == "top-z") {
      m.top.z.push_back(RegionLiteral<B>::parse(b, rest));
    } else if (kw == "top-y") {
      m.top.y.push_back(RegionLiteral<B>::parse(b, rest));
    } else if (kw == "bottom-z") {
      m.bottom.z.push_back(RegionLiteral<B>::parse(b, rest));
    } else if (kw == "bottom-y") {
      m.bottom.y.push_back(RegionLiteral<B>::parse(b, rest));
    } else {
      fields[kw] = RegionLiteral<B>::parse(b, rest);
    }
  }
  if (kind == "zigzag") {
    ZigZagOpts<B> opts;
    opts.contained_in = contained;
    opts.ga3_for = ga3_for;
    return validate_zigzag(b, zz, opts);
  }
  if (kind == "mdz") return validate_mdz(b, m, contained);
  if (kind == "reflection") {
    refl.base = Splitting<typename B::element>{fields.at("parent"), fields.at("r"), fields.at("s")};
    refl.a = fields.at("a");
    refl.b = fields.at("b");
    refl.c = fields.at("c");
    return validate_reflection(b, refl);
  }
  throw ParseError("unknown witness kind: " + kind);
}

}  // namespace zigzag
