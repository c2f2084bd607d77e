#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zigzag/error.hpp"
#include "zigzag/poset.hpp"

namespace zigzag {

// Backends with a finite carrier expose all_elements(); constructive
// operations fall back to complete search there, so success coincides with
// existence on the oracle backend.
template <class B>
concept EnumerableBackend = requires(const B& b) {
  { b.all_elements() } -> std::convertible_to<std::vector<typename B::element>>;
};

// GA1.5: a q-small q-indicator below p, found by capping p with q or q' and
// descending the backend's shrink chain until smallness validates.
template <class B>
inline elem_t<B> small_indicator(const B& b, const elem_t<B>& p, const elem_t<B>& q) {
  using E = elem_t<B>;
  std::vector<E> sources;
  if (auto a = b.cap_witness(p, q)) sources.push_back(*a);
  if (auto a = b.cap_witness(p, b.involution(q))) sources.push_back(*a);
  sources.push_back(p);
  for (const E& a : sources)
    for (const E& cand : b.lower_candidates(a)) {
      if (!b.leq(cand, p)) continue;
      if (!(b.leq(cand, q) || b.leq(cand, b.involution(q)))) continue;
      if (is_q_small(b, cand, q)) return cand;
    }
  throw ConstructionFailed("small_indicator: no q-small q-indicator found below p");
}

// ZZ1: cut the zig-zag short at the first upper element meeting `target`.
// Returns the shortened zig-zag ending at an element of y_j .cap. target.
template <class B>
inline ZigZag<elem_t<B>> zz_shorten(const B& b, const ZigZag<elem_t<B>>& zz,
                                    const elem_t<B>& target) {
  for (std::size_t j = 0; j + 1 < zz.hops(); ++j) {
    if (auto w = b.cap_witness(zz.y[j], target)) {
      ZigZag<elem_t<B>> out;
      out.z.assign(zz.z.begin(), zz.z.begin() + j + 1);
      out.y.assign(zz.y.begin(), zz.y.begin() + j + 1);
      out.z.push_back(*w);
      return out;
    }
  }
  return zz;
}

// ZZ2: split at an upper element meeting c.
template <class B>
inline std::pair<ZigZag<elem_t<B>>, ZigZag<elem_t<B>>> zz_concat_split(const B& b,
                                                                       const ZigZag<elem_t<B>>& zz,
                                                                       const elem_t<B>& c) {
  for (std::size_t j = 0; j < zz.hops(); ++j) {
    if (auto w = b.cap_witness(zz.y[j], c)) {
      ZigZag<elem_t<B>> front, back;
      front.z.assign(zz.z.begin(), zz.z.begin() + j + 1);
      front.y.assign(zz.y.begin(), zz.y.begin() + j + 1);
      front.z.push_back(*w);
      back.z.push_back(*w);
      back.y.assign(zz.y.begin() + j, zz.y.end());
      back.z.insert(back.z.end(), zz.z.begin() + j + 1, zz.z.end());
      return {front, back};
    }
  }
  throw PreconditionViolated("zz_concat_split: no upper element meets c");
}

// ZZ3: when no upper element meets c, shrink c to something the whole
// zig-zag is disjoint from, by the inductive cap with each y_j'.
template <class B>
inline elem_t<B> zz_avoid_third(const B& b, const ZigZag<elem_t<B>>& zz, const elem_t<B>& c) {
  elem_t<B> cur = c;
  for (std::size_t j = 0; j < zz.hops(); ++j) {
    if (b.cap_witness(zz.y[j], cur)) {
      if (b.leq(cur, b.involution(zz.y[j]))) continue;  // already disjoint
    }
    auto next = b.cap_witness(b.involution(zz.y[j]), cur);
    if (!next)
      throw ConstructionFailed("zz_avoid_third: saturation failed against an upper element");
    cur = *next;
  }
  // certify
  for (std::size_t j = 0; j < zz.hops(); ++j)
    if (!b.leq(zz.y[j], b.involution(cur)))
      throw ConstructionFailed("zz_avoid_third: certification failed");
  return cur;
}

// ZZ4: shrink disjoint endpoints so the inner upper elements avoid them.
template <class B>
struct DisjointifyResult {
  elem_t<B> a_small;
  elem_t<B> b_small;
  ZigZag<elem_t<B>> zz;
};

template <class B>
inline DisjointifyResult<B> zz_disjointify(const B& b, const ZigZag<elem_t<B>>& zz_in,
                                           const elem_t<B>& a, const elem_t<B>& bb) {
  ZigZag<elem_t<B>> zz = zz_shorten(b, zz_in, bb);
  zz = zz_shorten(b, zz.reversed(), a).reversed();
  const std::size_t n = zz.hops();
  elem_t<B> ahat = zz.z.front(), bhat = zz.z.back();
  if (!b.leq(ahat, a) || !b.leq(bhat, bb))
    throw ConstructionFailed("zz_disjointify: trimmed endpoints escaped a or b");
  elem_t<B> at = ahat, bt = bhat;
  if (n > 1) {
    ZigZag<elem_t<B>> tail;
    tail.z.assign(zz.z.begin() + 1, zz.z.end());
    tail.y.assign(zz.y.begin() + 1, zz.y.end());
    at = zz_avoid_third(b, tail, ahat);
    ZigZag<elem_t<B>> head;
    head.z.assign(zz.z.begin(), zz.z.end() - 1);
    head.y.assign(zz.y.begin(), zz.y.end() - 1);
    bt = zz_avoid_third(b, head, bhat);
  }
  ZigZag<elem_t<B>> out = zz;
  out.z.front() = at;
  out.z.back() = bt;
  return DisjointifyResult<B>{at, bt, out};
}

// ---------------------------------------------------------------------------
// Mutually disjoint zig-zags as certified move sequences: each hop moves the
// top within an upper element disjoint from the bottom, then the bottom
// within an upper element disjoint from the new top.
// ---------------------------------------------------------------------------
template <class B>
class MdzBuilder {
 public:
  using E = elem_t<B>;

  MdzBuilder(const B& b, const E& top0, const E& bottom0) : b_(b), t_(top0), z_(bottom0) {
    if (!is_disjoint(b_, top0, bottom0))
      throw ConstructionFailed("mdz: initial pair is not disjoint");
    m_.top.z.push_back(top0);
    m_.bottom.z.push_back(bottom0);
  }

  const E& top() const { return t_; }
  const E& bottom() const { return z_; }

  void hop(const E& w, const E& t2, const E& y, const E& b2) {
    auto need = [&](bool ok, const char* what) {
      if (!ok)
        throw ConstructionFailed(std::string("mdz hop: ") + what + " [t=" + b_.str(t_) +
                                 " w=" + b_.str(w) + " t2=" + b_.str(t2) + " z=" + b_.str(z_) +
                                 " y=" + b_.str(y) + " b2=" + b_.str(b2) + "]");
    };
    need(b_.leq(t_, w), "current top not below w");
    need(b_.leq(t2, w), "next top not below w");
    need(b_.leq(w, b_.involution(z_)), "w not disjoint from bottom");
    need(b_.leq(z_, y), "current bottom not below y");
    need(b_.leq(b2, y), "next bottom not below y");
    need(b_.leq(y, b_.involution(t2)), "y not disjoint from next top");
    m_.top.y.push_back(w);
    m_.top.z.push_back(t2);
    m_.bottom.y.push_back(y);
    m_.bottom.z.push_back(b2);
    t_ = t2;
    z_ = b2;
  }

  void move_top(const E& w, const E& t2) { hop(w, t2, z_, z_); }
  void move_bottom(const E& y, const E& b2) { hop(t_, t_, y, b2); }

  // walk the bottom along a zig-zag (whose elements stay disjoint from the top)
  void walk_bottom(const ZigZag<E>& zz) {
    for (std::size_t j = 0; j < zz.hops(); ++j) move_bottom(zz.y[j], zz.z[j + 1]);
  }
  void walk_top(const ZigZag<E>& zz) {
    for (std::size_t j = 0; j < zz.hops(); ++j) move_top(zz.y[j], zz.z[j + 1]);
  }

  Mdz<E> finish() const { return m_; }

 private:
  const B& b_;
  Mdz<E> m_;
  E t_, z_;
};

// Reverse an MDZ. The stagger (top moves first) flips, so one stationary hop
// is inserted at the junction; all disjointness conditions carry over.
template <class B>
inline Mdz<elem_t<B>> mdz_reverse(const B& b, const Mdz<elem_t<B>>& m) {
  MdzBuilder<B> out(b, m.top.z.back(), m.bottom.z.back());
  const std::size_t n = m.top.y.size();
  for (std::size_t i = n; i-- > 0;) {
    out.move_bottom(m.bottom.y[i], m.bottom.z[i]);
    out.move_top(m.top.y[i], m.top.z[i]);
  }
  return out.finish();
}

// Swap the two rows, again by re-staggering.
template <class B>
inline Mdz<elem_t<B>> mdz_row_swap(const B& b, const Mdz<elem_t<B>>& m) {
  MdzBuilder<B> out(b, m.bottom.z.front(), m.top.z.front());
  const std::size_t n = m.top.y.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.move_bottom(m.top.y[i], m.top.z[i + 1]);
    out.move_top(m.bottom.y[i], m.bottom.z[i + 1]);
  }
  return out.finish();
}

template <class B>
inline Mdz<elem_t<B>> mdz_splice(const B& b, const Mdz<elem_t<B>>& m1, const Mdz<elem_t<B>>& m2) {
  if (!b.equal(m1.top.z.back(), m2.top.z.front()) ||
      !b.equal(m1.bottom.z.back(), m2.bottom.z.front()))
    throw ConstructionFailed("mdz_splice: junction pairs differ");
  return m1.spliced(m2);
}

enum class DancePattern { ThroughThird, AroundCase1, AroundCase2 };

// Dances pass through a middle pair; both halves are kept so the theorem can
// compose chains at any visited pair.
template <class B>
struct DanceResult {
  DancePattern pattern;
  Mdz<elem_t<B>> left;
  Mdz<elem_t<B>> right;

  Mdz<elem_t<B>> full(const B& b) const { return mdz_splice(b, left, right); }
};

// ZZ5: the zig-zag meets c somewhere; (a,c) ~> (a,b) ~> (c,b).
template <class B>
inline DanceResult<B> mdz_through_parts(const B& b, const elem_t<B>& a, const elem_t<B>& bb,
                                        const elem_t<B>& c, const ZigZag<elem_t<B>>& zz_in) {
  using E = elem_t<B>;
  auto dres = zz_disjointify(b, zz_in, a, bb);
  const ZigZag<E>& zz = dres.zz;
  const E &at = dres.a_small, &bt = dres.b_small;
  const std::size_t n = zz.hops();
  std::size_t jmin = n, kmax = n;
  for (std::size_t j = 0; j < n; ++j)
    if (b.cap_witness(zz.y[j], c)) {
      if (jmin == n) jmin = j;
      kmax = j;
    }
  if (jmin == n) throw PreconditionViolated("mdz_through: no upper element meets c");
  E ct = *b.cap_witness(zz.y[jmin], c);
  E ch = *b.cap_witness(zz.y[kmax], c);

  // left half: (a,c) ~> (a,b), bottom traveling the tail of the zig-zag
  MdzBuilder<B> lb(b, a, c);
  lb.hop(a, at, c, ch);
  {
    ZigZag<E> tail;
    tail.z.push_back(ch);
    tail.y.push_back(zz.y[kmax]);
    tail.z.push_back(zz.z[kmax + 1]);
    for (std::size_t j = kmax + 1; j < n; ++j) {
      tail.y.push_back(zz.y[j]);
      tail.z.push_back(zz.z[j + 1]);
    }
    lb.walk_bottom(tail);
  }
  lb.hop(a, a, bb, bb);

  // right half: (a,b) ~> (c,b), top traveling the head
  MdzBuilder<B> rb(b, a, bb);
  rb.hop(a, at, bb, bt);
  {
    ZigZag<E> head;
    head.z.push_back(at);
    for (std::size_t j = 0; j < jmin; ++j) {
      head.y.push_back(zz.y[j]);
      head.z.push_back(zz.z[j + 1]);
    }
    head.y.push_back(zz.y[jmin]);
    head.z.push_back(ct);
    rb.walk_top(head);
  }
  rb.hop(c, c, bb, bb);
  return DanceResult<B>{DancePattern::ThroughThird, lb.finish(), rb.finish()};
}

template <class B>
inline Mdz<elem_t<B>> mdz_through(const B& b, const elem_t<B>& a, const elem_t<B>& bb,
                                  const elem_t<B>& c, const ZigZag<elem_t<B>>& zz_in) {
  return mdz_through_parts(b, a, bb, c, zz_in).full(b);
}

// ZZ6: no upper element meets c; route around it with a GA3 zig-zag.
// Case 1 gives (a,b) ~> (c,b) ~> (c,a); case 2 gives (a,b) ~> (a,c) ~> (b,c).
template <class B>
inline DanceResult<B> mdz_around_parts(const B& b, const elem_t<B>& a, const elem_t<B>& bb,
                                       const elem_t<B>& c, const elem_t<B>& p,
                                       const ZigZag<elem_t<B>>& zz_in) {
  using E = elem_t<B>;
  auto dres = zz_disjointify(b, zz_in, a, bb);
  const ZigZag<E>& zz = dres.zz;
  const E &at = dres.a_small, &bt = dres.b_small;
  for (std::size_t j = 0; j < zz.hops(); ++j)
    if (b.cap_witness(zz.y[j], c))
      throw PreconditionViolated("mdz_around: an upper element meets c");
  E ct = zz_avoid_third(b, zz, c);

  // GA3 walk from a piece of at to a piece of ct, with bt-tags
  E a2 = small_indicator(b, at, bt);
  E c2 = small_indicator(b, ct, bt);
  ZigZag<E> walk = b.ga3_zigzag(a2, c2, p, bt);
  const std::size_t m = walk.hops();
  std::size_t kmax = m;  // last upper element meeting at or bt
  bool meets_at = false;
  for (std::size_t k = 0; k < m; ++k) {
    bool ma = b.cap_witness(walk.y[k], at).has_value();
    bool mb2 = b.cap_witness(walk.y[k], bt).has_value();
    if (ma || mb2) {
      kmax = k;
      meets_at = ma;
    }
  }
  if (kmax == m) throw ConstructionFailed("mdz_around: GA3 walk never meets at");

  ZigZag<E> walk_tail;  // from z_{kmax} onward
  walk_tail.z.assign(walk.z.begin() + kmax, walk.z.end());
  walk_tail.y.assign(walk.y.begin() + kmax, walk.y.end());

  if (meets_at) {
    // Case 1: b-side retreats behind the walk
    auto sm = is_q_small(b, walk.y[kmax], bt);
    if (!sm) throw ConstructionFailed("mdz_around: w_k lost bt-smallness");
    E bhat = b.involution(sm->second);  // below bt and disjoint from w_k
    if (!b.leq(bhat, bt) || !b.leq(bhat, b.involution(walk.y[kmax])))
      throw ConstructionFailed("mdz_around: reflected witness invalid");
    {
      ZigZag<E> later;  // strictly after kmax
      later.z.assign(walk.z.begin() + kmax + 1, walk.z.end());
      later.y.assign(walk.y.begin() + kmax + 1, walk.y.end());
      if (later.hops() > 0) bhat = zz_avoid_third(b, later, bhat);
    }
    E ahat = *b.cap_witness(walk.y[kmax], at);

    // left half: (a,b) ~> (c,b), top traveling around along the GA3 walk
    MdzBuilder<B> lb(b, a, bb);
    lb.hop(a, ahat, bb, bhat);
    {
      ZigZag<E> tw;  // top: ahat -> c2 along the walk tail
      tw.z.push_back(ahat);
      tw.y.push_back(walk.y[kmax]);
      tw.z.push_back(walk.z[kmax + 1]);
      for (std::size_t k = kmax + 1; k < m; ++k) {
        tw.y.push_back(walk.y[k]);
        tw.z.push_back(walk.z[k + 1]);
      }
      lb.walk_top(tw);
    }
    lb.hop(c, c, bb, bb);

    // right half: (c,b) ~> (c,a), bottom traveling the zig-zag backwards
    MdzBuilder<B> rb(b, c, bb);
    rb.hop(c, c2, bb, bt);
    rb.walk_bottom(zz.reversed());  // bottom: bt -> at, all below ct'
    rb.hop(c, c, a, a);
    return DanceResult<B>{DancePattern::AroundCase1, lb.finish(), rb.finish()};
  }

  // Case 2: a-side retreats behind the walk
  E bhat = *b.cap_witness(walk.y[kmax], bt);
  E ahat = at;
  if (walk_tail.hops() > 0) ahat = zz_avoid_third(b, walk_tail, at);

  // left half: (a,b) ~> (a,c), bottom traveling around along the GA3 walk
  MdzBuilder<B> lb(b, a, bb);
  lb.hop(a, ahat, bb, bhat);
  {
    ZigZag<E> bw;  // bottom: bhat -> c2 along the walk tail
    bw.z.push_back(bhat);
    bw.y.push_back(walk.y[kmax]);
    bw.z.push_back(walk.z[kmax + 1]);
    for (std::size_t k = kmax + 1; k < m; ++k) {
      bw.y.push_back(walk.y[k]);
      bw.z.push_back(walk.z[k + 1]);
    }
    lb.walk_bottom(bw);
  }
  lb.hop(a, a, c, c);

  // right half: (a,c) ~> (b,c), top traveling the zig-zag forwards
  MdzBuilder<B> rb(b, a, c);
  rb.hop(a, at, c, c2);
  rb.walk_top(zz);  // top: at -> bt, all below ct'
  rb.hop(bb, bb, c, c);
  return DanceResult<B>{DancePattern::AroundCase2, lb.finish(), rb.finish()};
}

template <class B>
inline std::pair<DancePattern, Mdz<elem_t<B>>> mdz_around(const B& b, const elem_t<B>& a,
                                                          const elem_t<B>& bb, const elem_t<B>& c,
                                                          const elem_t<B>& p,
                                                          const ZigZag<elem_t<B>>& zz_in) {
  DanceResult<B> r = mdz_around_parts(b, a, bb, c, p, zz_in);
  return {r.pattern, r.full(b)};
}

// Triangle dance (ZZ7): three pairwise disjoint elements below p always
// participate in one of the three mutually disjoint zig-zag patterns.
template <class B>
inline DanceResult<B> triangle_dance_parts(const B& b, const elem_t<B>& a, const elem_t<B>& bb,
                                           const elem_t<B>& c, const elem_t<B>& p) {
  using E = elem_t<B>;
  if (!is_disjoint(b, a, bb) || !is_disjoint(b, a, c) || !is_disjoint(b, bb, c))
    throw PreconditionViolated("triangle_dance: elements are not pairwise disjoint");
  // a zig-zag a ~> b inside p, endpoints padded so the trims stay proper
  E as = small_indicator(b, a, bb);
  E bs = small_indicator(b, bb, bb);
  ZigZag<E> mid = b.ga3_zigzag(as, bs, p, bb);
  ZigZag<E> full;
  full.z.push_back(a);
  full.y.push_back(a);
  full.z.insert(full.z.end(), mid.z.begin(), mid.z.end());
  full.y.insert(full.y.end(), mid.y.begin(), mid.y.end());
  full.y.push_back(bb);
  full.z.push_back(bb);

  auto probe = zz_disjointify(b, full, a, bb);
  bool meets = false;
  for (std::size_t j = 0; j < probe.zz.hops(); ++j)
    if (b.cap_witness(probe.zz.y[j], c)) meets = true;
  if (meets) return mdz_through_parts(b, a, bb, c, full);
  return mdz_around_parts(b, a, bb, c, p, full);
}

template <class B>
inline std::pair<DancePattern, Mdz<elem_t<B>>> triangle_dance(const B& b, const elem_t<B>& a,
                                                              const elem_t<B>& bb,
                                                              const elem_t<B>& c,
                                                              const elem_t<B>& p) {
  DanceResult<B> r = triangle_dance_parts(b, a, bb, c, p);
  return {r.pattern, r.full(b)};
}

template <class B>
struct MdzBetween {
  bool swapped = false;
  Mdz<elem_t<B>> mdz;
};

// The mutually-disjoint-zig-zag theorem: any two splittings of p are linked
// by an MDZ, possibly up to swapping the second splitting. Implemented as a
// guided search over the paper's reduction pool (cap witnesses, saturation
// pieces) with triangle dances as long-range moves.
template <class B>
inline MdzBetween<B> mdz_between_splittings(const B& b, const elem_t<B>& p,
                                            const Splitting<elem_t<B>>& s1,
                                            const Splitting<elem_t<B>>& s2) {
  using E = elem_t<B>;
  {
    Report r1 = validate_splitting(b, s1), r2 = validate_splitting(b, s2);
    if (!r1.ok() || !r2.ok())
      throw PreconditionViolated("mdz_between_splittings: invalid splitting");
  }
  // Dance-eligible letters: the four splitting pieces plus the doubly
  // saturated pieces from the paper's case reductions. Cap witnesses and
  // single-step pieces only serve as glue stops.
  std::vector<E> pool = {s1.r, s1.s, s2.r, s2.s};
  const E rs[2] = {s1.r, s1.s};
  const E ab[2] = {s2.r, s2.s};
  for (int xi = 0; xi < 2; ++xi)
    for (int yi = 0; yi < 2; ++yi) {
      const E &x = rs[xi], &y = ab[yi];
      if (b.cap_witness(x, y)) continue;
      if (auto h = b.cap_witness(b.involution(x), y))
        if (auto t = b.cap_witness(*h, b.involution(rs[1 - xi]))) pool.push_back(*t);
    }
  const int num_dance = static_cast<int>(pool.size());
  auto add = [&](const std::optional<E>& e) {
    if (e) pool.push_back(*e);
  };
  for (int xi = 0; xi < 2; ++xi)
    for (int yi = 0; yi < 2; ++yi) {
      const E &x = rs[xi], &y = ab[yi];
      add(b.cap_witness(x, y));
      if (auto h = b.cap_witness(b.involution(x), y)) {
        pool.push_back(*h);
        add(b.cap_witness(*h, b.involution(rs[1 - xi])));
      }
      if (auto h = b.cap_witness(b.involution(y), x)) {
        pool.push_back(*h);
        add(b.cap_witness(*h, b.involution(ab[1 - yi])));
      }
    }
  if (pool.size() > 20) pool.resize(20);
  const int n = static_cast<int>(pool.size());

  auto pair_id = [&](int i, int j) { return i * n + j; };
  struct Arrival {
    int from = -1;
    int kind = 0;  // 0 none, 1 glue, 2 dance
    int glue_w = -1, glue_to = -1, glue_side = 0;
    std::shared_ptr<Mdz<E>> dance;
  };
  std::vector<Arrival> seen(n * n);
  std::vector<int> queue;
  auto find_idx = [&](const E& e) {
    for (int i = 0; i < n; ++i)
      if (b.equal(pool[i], e)) return i;
    return -1;
  };
  int start = -1, goal0 = -1, goal1 = -1;
  {
    int ir = find_idx(s1.r), is = find_idx(s1.s), ia = find_idx(s2.r), ib = find_idx(s2.s);
    start = pair_id(ir, is);
    goal0 = pair_id(ia, ib);
    goal1 = pair_id(ib, ia);
  }
  seen[start].from = start;
  queue.push_back(start);

  int dance_budget = 240;
  std::map<std::array<int, 3>, std::optional<DanceResult<B>>> dance_memo;
  auto run_dance = [&](int A, int BB, int C) -> const std::optional<DanceResult<B>>& {
    std::array<int, 3> key{A, BB, C};
    auto it = dance_memo.find(key);
    if (it != dance_memo.end()) return it->second;
    std::optional<DanceResult<B>> res;
    if (dance_budget > 0) {
      --dance_budget;
      try {
        res = triangle_dance_parts(b, pool[A], pool[BB], pool[C], p);
      } catch (const Error&) {
      }
    }
    return dance_memo.emplace(key, std::move(res)).first->second;
  };

  auto disjoint_ids = [&](int i, int j) { return is_disjoint(b, pool[i], pool[j]); };

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int cur = queue[qi];
    if (cur == goal0 || cur == goal1) break;
    int u = cur / n, v = cur % n;
    // glue moves: swap one component for a comparable pool element
    for (int x = 0; x < n; ++x) {
      for (int side = 0; side < 2; ++side) {
        int comp = side == 0 ? u : v;
        int other = side == 0 ? v : u;
        if (x == comp) continue;
        int w = -1;
        if (b.leq(pool[x], pool[comp]))
          w = comp;
        else if (b.leq(pool[comp], pool[x]))
          w = x;
        else
          continue;
        if (!disjoint_ids(w, other) || !disjoint_ids(x, other)) continue;
        int next = side == 0 ? pair_id(x, v) : pair_id(u, x);
        if (seen[next].from != -1) continue;
        seen[next] = Arrival{cur, 1, w, x, side, nullptr};
        queue.push_back(next);
      }
    }
    // dance moves from this pair, over the dance-eligible letters only
    if (u < num_dance && v < num_dance && disjoint_ids(u, v)) {
      for (int c = 0; c < num_dance; ++c) {
        if (c == u || c == v) continue;
        if (!disjoint_ids(c, u) || !disjoint_ids(c, v)) continue;
        // dance(u, B=c, v): Through gives (u,v) ~> (v,c); dance(u, v, c):
        // Around gives (u,v) ~> (c,u) or (u,v) ~> (v,c).
        for (int variant = 0; variant < 2; ++variant) {
          int A = u, BB = variant == 0 ? c : v, C = variant == 0 ? v : c;
          const auto& res = run_dance(A, BB, C);
          if (!res) continue;
          for (const Mdz<E>* m : {&res->left, &res->right}) {
            int su = find_idx(m->top.z.front()), sv = find_idx(m->bottom.z.front());
            int eu = find_idx(m->top.z.back()), ev = find_idx(m->bottom.z.back());
            if (su < 0 || sv < 0 || eu < 0 || ev < 0) continue;
            struct Orient {
              int s, e;
              int mode;  // 0 as-is, 1 reversed, 2 rowswap, 3 reversed+rowswap
            } orients[4] = {{pair_id(su, sv), pair_id(eu, ev), 0},
                            {pair_id(eu, ev), pair_id(su, sv), 1},
                            {pair_id(sv, su), pair_id(ev, eu), 2},
                            {pair_id(ev, eu), pair_id(sv, su), 3}};
            for (const auto& o : orients) {
              if (o.s != cur || seen[o.e].from != -1) continue;
              try {
                Mdz<E> oriented = *m;
                if (o.mode == 1) oriented = mdz_reverse(b, oriented);
                if (o.mode == 2) oriented = mdz_row_swap(b, oriented);
                if (o.mode == 3) oriented = mdz_row_swap(b, mdz_reverse(b, oriented));
                seen[o.e] = Arrival{cur, 2, -1, -1, 0,
                                    std::make_shared<Mdz<E>>(std::move(oriented))};
                queue.push_back(o.e);
              } catch (const Error&) {
              }
            }
          }
        }
      }
    }
  }

  int goal = seen[goal0].from != -1 ? goal0 : (seen[goal1].from != -1 ? goal1 : -1);
  if (goal == -1) {
    if constexpr (EnumerableBackend<B>) return mdz_pair_search(b, s1, s2);
    throw ConstructionFailed("mdz_between_splittings: search exhausted (case trace: pool " +
                             std::to_string(n) + ", dances left " + std::to_string(dance_budget) + ")");
  }

  // rebuild the chain of moves from start to goal
  std::vector<int> path;
  for (int at = goal; at != start; at = seen[at].from) path.push_back(at);
  std::reverse(path.begin(), path.end());
  MdzBuilder<B> mb(b, s1.r, s1.s);
  Mdz<E> acc = mb.finish();
  int cur = start;
  for (int step : path) {
    const Arrival& ar = seen[step];
    if (ar.kind == 1) {
      int u = cur / n, v = cur % n;
      MdzBuilder<B> g(b, pool[u], pool[v]);
      if (ar.glue_side == 0)
        g.move_top(pool[ar.glue_w], pool[ar.glue_to]);
      else
        g.move_bottom(pool[ar.glue_w], pool[ar.glue_to]);
      acc = mdz_splice(b, acc, g.finish());
    } else {
      acc = mdz_splice(b, acc, *ar.dance);
    }
    cur = step;
  }
  return MdzBetween<B>{goal == goal1, acc};
}

// complete hop-graph search for zig-zags, used as the enumerable fallback
template <class B>
  requires EnumerableBackend<B>
inline ZigZag<elem_t<B>> connect_search(const B& b, const elem_t<B>& p, const elem_t<B>& q) {
  using E = elem_t<B>;
  std::vector<E> elems = b.all_elements();
  const int n = static_cast<int>(elems.size());
  auto idx = [&](const E& e) {
    for (int i = 0; i < n; ++i)
      if (b.equal(elems[i], e)) return i;
    return -1;
  };
  int src = idx(p), dst = idx(q);
  if (src < 0 || dst < 0) throw ConstructionFailed("connect: element not in carrier");
  std::vector<int> prev(n, -1), via(n, -1), queue{src};
  prev[src] = src;
  for (std::size_t qi = 0; qi < queue.size() && prev[dst] == -1; ++qi)
    for (int y = 0; y < n; ++y) {
      if (!b.leq(elems[queue[qi]], elems[y])) continue;
      for (int z = 0; z < n; ++z)
        if (prev[z] == -1 && b.leq(elems[z], elems[y])) {
          prev[z] = queue[qi];
          via[z] = y;
          queue.push_back(z);
        }
    }
  if (prev[dst] == -1) throw ConstructionFailed("connect: no zig-zag exists");
  ZigZag<E> zz;
  std::vector<int> rz, ry;
  for (int at = dst; at != src; at = prev[at]) {
    rz.push_back(at);
    ry.push_back(via[at]);
  }
  rz.push_back(src);
  for (auto it = rz.rbegin(); it != rz.rend(); ++it) zz.z.push_back(elems[*it]);
  for (auto it = ry.rbegin(); it != ry.rend(); ++it) zz.y.push_back(elems[*it]);
  return zz;
}

template <class B>
inline ZigZag<elem_t<B>> connect_or_search(const B& b, const elem_t<B>& p, const elem_t<B>& q) {
  if constexpr (EnumerableBackend<B>) {
    try {
      return connect(b, p, q);
    } catch (const Error&) {
      return connect_search(b, p, q);
    }
  } else {
    return connect(b, p, q);
  }
}

// complete pair-graph search for mutually disjoint zig-zags
template <class B>
  requires EnumerableBackend<B>
inline MdzBetween<B> mdz_pair_search(const B& b, const Splitting<elem_t<B>>& s1,
                                     const Splitting<elem_t<B>>& s2) {
  using E = elem_t<B>;
  std::vector<E> elems = b.all_elements();
  const int n = static_cast<int>(elems.size());
  auto idx = [&](const E& e) {
    for (int i = 0; i < n; ++i)
      if (b.equal(elems[i], e)) return i;
    throw ConstructionFailed("mdz search: element not in carrier");
  };
  int r1 = idx(s1.r), z1 = idx(s1.s), r2 = idx(s2.r), z2 = idx(s2.s);
  int start = r1 * n + z1, goalA = r2 * n + z2, goalB = z2 * n + r2;
  struct Move {
    int from;
    int w, to;
    bool top;
  };
  std::vector<Move> prev(n * n, Move{-1, -1, -1, false});
  std::vector<int> queue{start};
  prev[start] = Move{start, -1, -1, false};
  auto disj = [&](int i, int j) { return b.leq(elems[i], b.involution(elems[j])); };
  if (!disj(r1, z1) || !disj(r2, z2)) throw PreconditionViolated("mdz search: pairs not disjoint");
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int cur = queue[qi];
    if (cur == goalA || cur == goalB) break;
    int u = cur / n, v = cur % n;
    for (int w = 0; w < n; ++w) {
      // top move within w, keeping w disjoint from the bottom
      if (b.leq(elems[u], elems[w]) && disj(w, v)) {
        for (int u2 = 0; u2 < n; ++u2)
          if (b.leq(elems[u2], elems[w]) && prev[u2 * n + v].from == -1) {
            prev[u2 * n + v] = Move{cur, w, u2, true};
            queue.push_back(u2 * n + v);
          }
      }
      if (b.leq(elems[v], elems[w]) && disj(w, u)) {
        for (int v2 = 0; v2 < n; ++v2)
          if (b.leq(elems[v2], elems[w]) && prev[u * n + v2].from == -1) {
            prev[u * n + v2] = Move{cur, w, v2, false};
            queue.push_back(u * n + v2);
          }
      }
    }
  }
  int goal = prev[goalA].from != -1 ? goalA : (prev[goalB].from != -1 ? goalB : -1);
  if (goal == -1) throw ConstructionFailed("mdz search: pair graph exhausted");
  std::vector<Move> path;
  for (int at = goal; at != start; at = prev[at].from) path.push_back(prev[at]);
  std::reverse(path.begin(), path.end());
  MdzBuilder<B> mb(b, s1.r, s1.s);
  for (const Move& m : path) {
    if (m.top)
      mb.move_top(elems[m.w], elems[m.to]);
    else
      mb.move_bottom(elems[m.w], elems[m.to]);
  }
  return MdzBetween<B>{goal == goalB, mb.finish()};
}

// Reflection existence (the proposition): a splitting of p admitting a
// reflection, found by walking a GA3 zig-zag from a piece of p to a piece of
// p' and cutting at the first sign change.
template <class B>
  requires EnumerableBackend<B>
inline Reflection<elem_t<B>> reflection_search(const B& b, const elem_t<B>& p) {
  using E = elem_t<B>;
  std::vector<E> elems = b.all_elements();
  const E pp = b.involution(p);
  std::vector<E> below_p, below_pp;
  for (const E& e : elems) {
    if (b.leq(e, p)) below_p.push_back(e);
    if (b.leq(e, pp)) below_pp.push_back(e);
  }
  for (const E& c : elems) {
    const E cp = b.involution(c);
    for (const E& r : below_p) {
      if (!b.leq(r, c)) continue;
      for (const E& s : below_p) {
        if (!b.leq(s, cp) || !b.leq(r, b.involution(s))) continue;
        for (const E& a : below_pp) {
          if (!b.leq(a, c)) continue;
          for (const E& bb : below_pp) {
            if (!b.leq(bb, cp) || !b.leq(a, b.involution(bb))) continue;
            return Reflection<E>{Splitting<E>{p, r, s}, a, bb, c};
          }
        }
      }
    }
  }
  throw ConstructionFailed("reflection search: none exists");
}

template <class B>
inline Reflection<elem_t<B>> find_reflection_impl(const B& b, const elem_t<B>& p) {
  using E = elem_t<B>;
  const E pp = b.involution(p);
  E r0 = small_indicator(b, p, pp);
  auto sm0 = is_q_small(b, r0, pp);
  if (!sm0) throw ConstructionFailed("find_reflection: r0 lost smallness");
  // sm0: r0,p' <= first, r0,p <= second (q = p' here)
  E s0 = b.involution(sm0->first);
  if (!b.leq(s0, p) || !b.leq(r0, b.involution(s0)))
    throw ConstructionFailed("find_reflection: derived splitting invalid");
  E a0 = small_indicator(b, pp, p);
  const E s0p = b.involution(s0);
  ZigZag<E> walk = b.ga3_zigzag(r0, a0, s0p, p);
  for (std::size_t j = 0; j < walk.hops(); ++j) {
    if (b.leq(walk.z[j], p) && b.leq(walk.z[j + 1], pp)) {
      const E &r = walk.z[j], &a = walk.z[j + 1], &c = walk.y[j];
      auto smc = is_q_small(b, c, p);
      if (!smc) continue;
      E bb = b.involution(smc->first);  // first contains c and p
      Reflection<E> refl{Splitting<E>{p, r, s0}, a, bb, c};
      if (validate_reflection(b, refl).ok()) return refl;
    }
  }
  throw ConstructionFailed("find_reflection: no sign change with a valid witness");
}

template <class B>
inline Reflection<elem_t<B>> find_reflection(const B& b, const elem_t<B>& p) {
  if constexpr (EnumerableBackend<B>) {
    try {
      return find_reflection_impl(b, p);
    } catch (const Error&) {
      return reflection_search(b, p);
    }
  } else {
    return find_reflection_impl(b, p);
  }
}

}  // namespace zigzag
