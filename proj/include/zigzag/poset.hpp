#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zigzag/error.hpp"

namespace zigzag {

// A zig-zag z_1 <= y_1 >= z_2 <= y_2 >= ... >= z_{n+1}. The degenerate
// single-element chain (n = 0) is allowed.
template <class E>
struct ZigZag {
  std::vector<E> z;  // n+1 elements
  std::vector<E> y;  // n upper elements

  std::size_t hops() const { return y.size(); }

  ZigZag reversed() const {
    ZigZag r;
    r.z.assign(z.rbegin(), z.rend());
    r.y.assign(y.rbegin(), y.rend());
    return r;
  }

  // Concatenation; requires this->z.back() == other.z.front() (not checked
  // here, the validators catch misuse).
  ZigZag spliced(const ZigZag& other) const {
    ZigZag r = *this;
    r.z.insert(r.z.end(), other.z.begin() + 1, other.z.end());
    r.y.insert(r.y.end(), other.y.begin(), other.y.end());
    return r;
  }
};

template <class E>
inline ZigZag<E> trivial_zigzag(const E& p) {
  ZigZag<E> zz;
  zz.z.push_back(p);
  return zz;
}

template <class E>
struct Splitting {
  E parent;
  E r;
  E s;
};

// Paired zig-zags transporting a disjoint pair; rows have equal length.
template <class E>
struct Mdz {
  ZigZag<E> top;     // x_1, w_1, ..., w_n, x_{n+1}
  ZigZag<E> bottom;  // z_1, y_1, ..., y_n, z_{n+1}

  Mdz reversed() const { return Mdz{top.reversed(), bottom.reversed()}; }
  Mdz swapped_rows() const { return Mdz{bottom, top}; }
  Mdz spliced(const Mdz& other) const {
    return Mdz{top.spliced(other.top), bottom.spliced(other.bottom)};
  }
};

template <class E>
inline Mdz<E> trivial_mdz(const E& r, const E& s) {
  return Mdz<E>{trivial_zigzag(r), trivial_zigzag(s)};
}

template <class E>
struct Reflection {
  Splitting<E> base;  // splitting (r,s) of p
  E a;
  E b;
  E c;
};

struct Violation {
  std::string clause;
  int index = -1;
  std::string detail;
};

// Validators return a structured report instead of a bare bool; an empty
// violation list means the object checks out. Notes carry non-fatal
// observations such as comparisons that sat within tolerance of a boundary.
struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  void fail(const std::string& clause, int index, const std::string& detail) {
    violations.push_back(Violation{clause, index, detail});
  }
  std::string str() const {
    std::ostringstream os;
    if (ok()) {
      os << "ok";
    } else {
      for (const auto& v : violations)
        os << v.clause << "[" << v.index << "]: " << v.detail << "\n";
    }
    for (const auto& n : notes) os << "note: " << n << "\n";
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Generic predicates over a poset backend.
//
// A backend B provides:
//   using element = ...;
//   bool leq(a, b)                 order with the backend's tolerance policy
//   element involution(a)
//   std::optional<element> cap_witness(a, b)    some lower bound of a and b
//   std::optional<element> join_witness(a, b)   some upper bound, if any
//   Splitting<element> split(a)
//   std::vector<element> lower_candidates(a)    deterministic shrink chain
//   std::string str(a)
// ---------------------------------------------------------------------------

template <class B>
using elem_t = typename B::element;

template <class B>
inline bool is_disjoint(const B& b, const elem_t<B>& p, const elem_t<B>& q) {
  return b.leq(p, b.involution(q));
}

template <class B>
inline bool is_q_indicator(const B& b, const elem_t<B>& pt, const elem_t<B>& p,
                           const elem_t<B>& q) {
  return b.leq(pt, p) && (b.leq(pt, q) || b.leq(pt, b.involution(q)));
}

// Witnesses (r, s) with p,q <= r and p,q' <= s, when they exist. Reported
// identically for q and q' (the witness pair swaps).
template <class B>
inline std::optional<std::pair<elem_t<B>, elem_t<B>>> is_q_small(const B& b, const elem_t<B>& p,
                                                                 const elem_t<B>& q) {
  auto r = b.join_witness(p, q);
  if (!r) return std::nullopt;
  auto s = b.join_witness(p, b.involution(q));
  if (!s) return std::nullopt;
  return std::make_pair(*r, *s);
}

template <class B>
struct ZigZagOpts {
  std::optional<elem_t<B>> contained_in;
  std::optional<elem_t<B>> ga3_for;
};

template <class B>
inline Report validate_zigzag(const B& b, const ZigZag<elem_t<B>>& zz,
                              const ZigZagOpts<B>& opts = {}) {
  Report rep;
  if (zz.z.empty()) {
    rep.fail("shape", -1, "empty zig-zag");
    return rep;
  }
  if (zz.z.size() != zz.y.size() + 1) {
    rep.fail("shape", -1, "z/y length mismatch");
    return rep;
  }
  for (std::size_t j = 0; j < zz.y.size(); ++j) {
    if (!b.leq(zz.z[j], zz.y[j]))
      rep.fail("chain.lower", static_cast<int>(j), "z_j not below y_j");
    if (!b.leq(zz.z[j + 1], zz.y[j]))
      rep.fail("chain.upper", static_cast<int>(j), "z_{j+1} not below y_j");
  }
  if (opts.contained_in) {
    for (std::size_t j = 0; j < zz.z.size(); ++j)
      if (!b.leq(zz.z[j], *opts.contained_in))
        rep.fail("contained.z", static_cast<int>(j), "z_j not below declared parent");
    for (std::size_t j = 0; j < zz.y.size(); ++j)
      if (!b.leq(zz.y[j], *opts.contained_in))
        rep.fail("contained.y", static_cast<int>(j), "y_j not below declared parent");
  }
  if (opts.ga3_for) {
    const auto& q = *opts.ga3_for;
    for (std::size_t j = 0; j < zz.z.size(); ++j)
      if (!(b.leq(zz.z[j], q) || b.leq(zz.z[j], b.involution(q))))
        rep.fail("ga3.indicator", static_cast<int>(j), "z_j is not a q-indicator");
    for (std::size_t j = 0; j < zz.y.size(); ++j)
      if (!is_q_small(b, zz.y[j], q))
        rep.fail("ga3.small", static_cast<int>(j), "y_j is not q-small");
  }
  return rep;
}

template <class B>
inline Report validate_splitting(const B& b, const Splitting<elem_t<B>>& sp) {
  Report rep;
  if (!b.leq(sp.r, sp.parent)) rep.fail("split.r", 0, "r not below parent");
  if (!b.leq(sp.s, sp.parent)) rep.fail("split.s", 0, "s not below parent");
  if (!b.leq(sp.r, b.involution(sp.s))) rep.fail("split.disjoint", 0, "r not disjoint from s");
  return rep;
}

template <class B>
inline Report validate_mdz(const B& b, const Mdz<elem_t<B>>& m,
                           const std::optional<elem_t<B>>& contained_in = {}) {
  Report rep;
  ZigZagOpts<B> opts;
  opts.contained_in = contained_in;
  Report top = validate_zigzag(b, m.top, opts);
  Report bot = validate_zigzag(b, m.bottom, opts);
  for (auto& v : top.violations) rep.fail("top." + v.clause, v.index, v.detail);
  for (auto& v : bot.violations) rep.fail("bottom." + v.clause, v.index, v.detail);
  if (m.top.z.size() != m.bottom.z.size()) {
    rep.fail("shape", -1, "rows have different lengths");
    return rep;
  }
  if (!rep.ok()) return rep;
  if (!b.leq(m.top.z.front(), b.involution(m.bottom.z.front())))
    rep.fail("ends.front", 0, "x_1 not disjoint from z_1");
  if (!b.leq(m.top.z.back(), b.involution(m.bottom.z.back())))
    rep.fail("ends.back", static_cast<int>(m.top.z.size()) - 1,
             "x_{n+1} not disjoint from z_{n+1}");
  for (std::size_t i = 0; i < m.top.y.size(); ++i) {
    if (!b.leq(m.top.y[i], b.involution(m.bottom.z[i])))
      rep.fail("pairs.w", static_cast<int>(i), "w_i not disjoint from z_i");
    if (!b.leq(m.bottom.y[i], b.involution(m.top.z[i + 1])))
      rep.fail("pairs.y", static_cast<int>(i), "y_i not disjoint from x_{i+1}");
  }
  return rep;
}

template <class B>
inline Report validate_reflection(const B& b, const Reflection<elem_t<B>>& r) {
  Report rep;
  Report base = validate_splitting(b, r.base);
  for (auto& v : base.violations) rep.fail("base." + v.clause, v.index, v.detail);
  const auto pprime = b.involution(r.base.parent);
  Splitting<elem_t<B>> ab{pprime, r.a, r.b};
  Report abrep = validate_splitting(b, ab);
  for (auto& v : abrep.violations) rep.fail("ab." + v.clause, v.index, v.detail);
  if (!b.leq(r.a, r.c)) rep.fail("c.a", 0, "a not below c");
  if (!b.leq(r.base.r, r.c)) rep.fail("c.r", 0, "r not below c");
  const auto cprime = b.involution(r.c);
  if (!b.leq(r.b, cprime)) rep.fail("c.b", 0, "b not below c'");
  if (!b.leq(r.base.s, cprime)) rep.fail("c.s", 0, "s not below c'");
  return rep;
}

// Connectivity by the three-step recipe: split p and route via p' or a cap
// witness. Output always validates.
template <class B>
inline ZigZag<elem_t<B>> connect(const B& b, const elem_t<B>& p, const elem_t<B>& q) {
  using E = elem_t<B>;
  auto direct = [&](const E& lo, const E& hi) {
    ZigZag<E> zz;
    zz.z = {lo, hi};
    zz.y = {hi};
    return zz;
  };
  auto to_involution = [&](const E& a) {
    // p <= p >= p1 <= p2' >= p'
    Splitting<E> sp = b.split(a);
    ZigZag<E> zz;
    zz.z = {a, sp.r, b.involution(a)};
    zz.y = {a, b.involution(sp.s)};
    return zz;
  };
  if (b.leq(p, q)) return direct(p, q);
  if (b.leq(q, p)) {
    ZigZag<E> zz;
    zz.z = {p, q};
    zz.y = {p};
    return zz;
  }
  if (auto r = b.cap_witness(p, q)) {
    ZigZag<E> zz;
    zz.z = {p, *r, q};
    zz.y = {p, q};
    return zz;
  }
  const E qp = b.involution(q);
  if (auto r = b.cap_witness(p, qp)) {
    ZigZag<E> head;
    head.z = {p, *r, qp};
    head.y = {p, qp};
    return head.spliced(to_involution(qp));
  }
  throw ConstructionFailed("connect: no cap witness with q or q' (GA1 violated?)");
}

}  // namespace zigzag
