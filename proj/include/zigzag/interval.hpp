#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "zigzag/angle.hpp"
#include "zigzag/error.hpp"
#include "zigzag/poset.hpp"

namespace zigzag {

// Open arc on the circle, counterclockwise from start to end, angles in pi
// units. Arc length is strictly between 0 and a full turn.
template <class S>
struct Interval {
  S start;
  S end;
};

template <class S>
class IntervalBackend {
 public:
  using element = Interval<S>;
  using ops = scalar_ops<S>;

  explicit IntervalBackend(Tolerance tol = {}) : tol_(tol) {}

  static std::string name() { return "interval"; }
  const Tolerance& tolerance() const { return tol_; }

  element make(const S& start, const S& end) const {
    element i{ops::normalize(start), ops::normalize(end)};
    S len = length(i);
    if (!ops::lt(ops::zero(), len, tol_.eps) || !ops::lt(len, ops::full_turn(), tol_.eps))
      throw DegenerateGeometry("interval arc length must lie strictly in (0, 2pi)");
    return i;
  }

  S length(const element& i) const { return ops::normalize(i.end - i.start); }

  element involution(const element& i) const { return element{i.end, i.start}; }

  bool leq(const element& a, const element& b) const {
    S o = ops::normalize(a.start - b.start);
    if constexpr (!ops::exact) {
      if (ops::to_radians(ops::full_turn() - o) <= tol_.eps) o = o - ops::full_turn();
    }
    return ops::le(o + length(a), length(b), tol_.eps);
  }

  bool equal(const element& a, const element& b) const {
    return circ_eq(a.start, b.start) && circ_eq(a.end, b.end);
  }

  bool boundary_close(const element& a, const element& b) const {
    return circ_near(a.start, b.start) || circ_near(a.start, b.end) ||
           circ_near(a.end, b.start) || circ_near(a.end, b.end);
  }

  // angle strictly inside the arc, at arc distance > pad from both endpoints
  bool contains_angle(const element& i, const S& a, const S& pad = scalar_ops<S>::zero()) const {
    S o = ops::normalize(a - i.start);
    return ops::lt(pad, o, tol_.eps) && ops::lt(o, length(i) - pad, tol_.eps);
  }

  // Components of a ∩ b as open arcs, in ccw order from a.start. At most two.
  std::vector<element> intersection_components(const element& a, const element& b) const {
    std::vector<element> out;
    const S la = length(a), lb = length(b);
    const S o = ops::normalize(b.start - a.start);
    const S starts[2] = {o - ops::full_turn(), o};
    for (const S& s : starts) {
      S lo = std::max(ops::zero(), s, [&](const S& x, const S& y) { return ops::lt(x, y, 0); });
      S hi = std::min(la, s + lb, [&](const S& x, const S& y) { return ops::lt(x, y, 0); });
      bool keep = ops::lt(lo, hi, 0);
      if constexpr (!ops::exact) keep = keep && ops::to_radians(hi - lo) > 2 * tol_.eps;
      if (keep)
        out.push_back(element{ops::normalize(a.start + lo), ops::normalize(a.start + hi)});
    }
    return out;
  }

  std::optional<element> cap_witness(const element& a, const element& b) const {
    auto comps = intersection_components(a, b);
    if (comps.empty()) return std::nullopt;
    return comps.front();
  }

  // Some interval containing both, when the union is not the whole circle.
  // The largest gap of the union is used, so the witness has maximal slack.
  std::optional<element> join_witness(const element& a, const element& b) const {
    auto gaps = intersection_components(involution(a), involution(b));
    if (gaps.empty()) return std::nullopt;
    const element* best = &gaps.front();
    for (const auto& g : gaps)
      if (ops::lt(length(*best), length(g), 0)) best = &g;
    return involution(*best);
  }

  Splitting<element> split(const element& p) const {
    const S l3 = length(p) / S(3);
    element r{p.start, ops::normalize(p.start + l3)};
    element s{ops::normalize(p.start + l3 + l3), p.end};
    return Splitting<element>{p, r, s};
  }

  // Deterministic descending chain used when hunting for small indicators.
  std::vector<element> lower_candidates(const element& p) const {
    std::vector<element> out;
    out.push_back(p);
    element cur = p;
    for (int d = 0; d < 6; ++d) {
      const S l3 = length(cur) / S(3);
      cur = element{ops::normalize(cur.start + l3), ops::normalize(cur.start + l3 + l3)};
      out.push_back(cur);
    }
    return out;
  }

  std::string str(const element& i) const {
    return "interval(" + degrees_to_string<S>(i.start) + "," + degrees_to_string<S>(i.end) + ")";
  }

  // -------------------------------------------------------------------------
  // Zig-zag axiom, two-case construction: within one component of p∩q or
  // p∩q', hop through a common subinterval; across a boundary of q ending in
  // the interior of p, hop through an interval straddling that boundary.
  // `pad` keeps every constructed arc this far away from p/q boundaries so
  // the cone backend can lift the result.
  // -------------------------------------------------------------------------
  ZigZag<element> ga3_zigzag(const element& pt, const element& ph, const element& p,
                             const element& q, const S& pad = scalar_ops<S>::zero()) const {
    if (!leq(pt, p) || !leq(ph, p)) throw PreconditionViolated("ga3: endpoints not below p");
    const element qp = involution(q);
    const int side_t = side_of(pt, q), side_h = side_of(ph, q);
    if (side_t < 0 || side_h < 0) throw PreconditionViolated("ga3: endpoints are not q-indicators");
    if (equal(pt, ph)) return trivial_zigzag(pt);

    // component lists per side
    std::vector<element> comps[2] = {intersection_components(p, q),
                                     intersection_components(p, qp)};
    const int ct = locate(comps[side_t], pt);
    const int ch = locate(comps[side_h], ph);
    if (ct < 0 || ch < 0) throw ConstructionFailed("ga3: endpoint does not fit one component");

    struct Node {
      int side;
      int idx;
    };
    auto node_id = [&](int side, int idx) { return side * 16 + idx; };

    // crossing edges at boundaries of q interior to p
    struct Edge {
      Node from, to;
      S beta;
    };
    std::vector<Edge> edges;
    const S qb[2] = {q.start, q.end};
    for (const S& beta : qb) {
      if (!contains_angle(p, beta, pad + pad)) continue;
      // side before (cw of) beta and after (ccw of) beta
      int before = circ_eq(beta, q.start) ? 1 : 0;
      int after = 1 - before;
      int cb = comp_ending_at(comps[before], beta);
      int ca = comp_starting_at(comps[after], beta);
      if (cb < 0 || ca < 0) continue;
      edges.push_back(Edge{Node{before, cb}, Node{after, ca}, beta});
      edges.push_back(Edge{Node{after, ca}, Node{before, cb}, beta});
    }

    // BFS over the component graph
    std::vector<int> prev(64, -1), via(64, -1);
    std::vector<int> queue;
    int start = node_id(side_t, ct), goal = node_id(side_h, ch);
    queue.push_back(start);
    prev[start] = start;
    for (std::size_t qi = 0; qi < queue.size() && prev[goal] == -1; ++qi) {
      for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        int f = node_id(edges[ei].from.side, edges[ei].from.idx);
        int t = node_id(edges[ei].to.side, edges[ei].to.idx);
        if (f == queue[qi] && prev[t] == -1) {
          prev[t] = f;
          via[t] = static_cast<int>(ei);
          queue.push_back(t);
        }
      }
    }
    if (prev[goal] == -1) throw ConstructionFailed("ga3: no route between q-indicator components");

    std::vector<int> path_edges;
    for (int at = goal; at != start; at = prev[at]) path_edges.push_back(via[at]);
    std::reverse(path_edges.begin(), path_edges.end());

    // walk the route, stitching same-component links and straddle hops
    ZigZag<element> chain = trivial_zigzag(pt);
    element cur = pt;
    Node curnode{side_t, ct};
    for (int ei : path_edges) {
      const Edge& e = edges[ei];
      const element& comp_in = comps[e.from.side][e.from.idx];
      const element& comp_out = comps[e.to.side][e.to.idx];
      bool forward = circ_eq(comp_in.end, e.beta);  // crossing at the ccw end of comp_in
      auto smin = [&](const S& x, const S& y) { return ops::lt(y, x, 0) ? y : x; };
      S delta = smin(length(comp_in), length(comp_out)) / S(2);
      S lq = ops::normalize(q.end - q.start);
      delta = smin(delta, smin(lq, ops::full_turn() - lq) / S(2));
      // stay clear of p's own endpoints
      S offp = ops::normalize(e.beta - p.start);
      delta = smin(delta, smin(offp, length(p) - offp));
      if (!ops::lt(pad * S(4), delta, tol_.eps))
        throw ConstructionFailed("ga3: no room to straddle the boundary of q");
      const S q4 = delta / S(4);
      element straddle = make(e.beta - delta + pad, e.beta + delta - pad);
      element zin = forward ? make(e.beta - q4 - q4 - q4, e.beta - q4)
                            : make(e.beta + q4, e.beta + q4 + q4 + q4);
      element zout = forward ? make(e.beta + q4, e.beta + q4 + q4 + q4)
                             : make(e.beta - q4 - q4 - q4, e.beta - q4);
      chain = chain.spliced(link_in_component(cur, zin, comp_in, q, 0));
      ZigZag<element> hop;
      hop.z = {zin, zout};
      hop.y = {straddle};
      chain = chain.spliced(hop);
      cur = zout;
      curnode = e.to;
    }
    chain = chain.spliced(link_in_component(cur, ph, comps[curnode.side][curnode.idx], q, 0));
    return chain;
  }

 private:
  bool circ_eq(const S& a, const S& b) const {
    S d = ops::normalize(a - b);
    return ops::eq(d, ops::zero(), tol_.eps) || ops::eq(d, ops::full_turn(), tol_.eps);
  }
  bool circ_near(const S& a, const S& b) const {
    S d = ops::normalize(a - b);
    double dr = ops::to_radians(d);
    double full = ops::to_radians(ops::full_turn());
    double m = std::min(dr, full - dr);
    return m > 0 && m <= tol_.eps;
  }

  int side_of(const element& i, const element& q) const {
    if (leq(i, q)) return 0;
    if (leq(i, involution(q))) return 1;
    return -1;
  }

  int locate(const std::vector<element>& comps, const element& i) const {
    for (std::size_t k = 0; k < comps.size(); ++k)
      if (leq(i, comps[k])) return static_cast<int>(k);
    return -1;
  }

  int comp_ending_at(const std::vector<element>& comps, const S& beta) const {
    for (std::size_t k = 0; k < comps.size(); ++k)
      if (circ_eq(comps[k].end, beta)) return static_cast<int>(k);
    return -1;
  }
  int comp_starting_at(const std::vector<element>& comps, const S& beta) const {
    for (std::size_t k = 0; k < comps.size(); ++k)
      if (circ_eq(comps[k].start, beta)) return static_cast<int>(k);
    return -1;
  }

  // hull of two arcs lying in one component, as an arc inside the component
  element hull_in(const element& a, const element& b, const element& comp) const {
    S oa = ops::normalize(a.start - comp.start);
    S ob = ops::normalize(b.start - comp.start);
    auto smin = [&](const S& x, const S& y) { return ops::lt(y, x, 0) ? y : x; };
    auto smax = [&](const S& x, const S& y) { return ops::lt(x, y, 0) ? y : x; };
    S lo = smin(oa, ob);
    S hi = smax(oa + length(a), ob + length(b));
    return element{ops::normalize(comp.start + lo), ops::normalize(comp.start + hi)};
  }

  // Zig-zag between two q-small arcs lying in one component. If the spanning
  // arc is q-small we hop once; otherwise bisect toward the endpoints
  // (smallness is inherited downward, so bisection terminates).
  ZigZag<element> link_in_component(const element& a, const element& b, const element& comp,
                                    const element& q, int depth) const {
    if (equal(a, b)) return trivial_zigzag(a);
    if (depth > 24) throw ConstructionFailed("ga3: component link did not converge");
    element span = hull_in(a, b, comp);
    if (small_wrt(span, q)) {
      ZigZag<element> zz;
      zz.z = {a, b};
      zz.y = {span};
      return zz;
    }
    if (auto w = cap_witness(a, b)) {
      ZigZag<element> zz;
      zz.z = {a, *w, b};
      zz.y = {a, b};
      return zz;
    }
    // order along the component, then bisect through the middle of the gap
    S oa = ops::normalize(a.start - comp.start);
    S ob = ops::normalize(b.start - comp.start);
    if (ops::lt(ob, oa, 0)) return link_in_component(b, a, comp, q, depth).reversed();
    auto smin = [&](const S& x, const S& y) { return ops::lt(y, x, 0) ? y : x; };
    S gl = ops::normalize(b.start - a.end);
    element mid;
    if (ops::to_radians(gl) <= 8 * tol_.eps || !ops::lt(gl, length(comp), 0)) {
      // arcs touch (or nearly); straddle the touch point instead
      S w = smin(length(a), length(b)) / S(4);
      mid = make(a.end - w, a.end + w);
    } else {
      mid = make(a.end + gl / S(3), b.start - gl / S(3));
    }
    return link_in_component(a, mid, comp, q, depth + 1)
        .spliced(link_in_component(mid, b, comp, q, depth + 1));
  }

  bool small_wrt(const element& i, const element& q) const {
    return join_witness(i, q).has_value() && join_witness(i, involution(q)).has_value();
  }

  Tolerance tol_;
};

}  // namespace zigzag
