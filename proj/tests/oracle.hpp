#pragma once

// Test-only brute-force oracle over finite posets. Everything here is
// formulated as plain existence over the order matrix, independent of the
// constructive code paths it checks.

#include <optional>
#include <vector>

#include "zigzag/finite_poset.hpp"
#include "zigzag/sampling.hpp"

namespace oracle {

using zigzag::FinitePoset;

inline bool bf_disjoint(const FinitePoset& p, int a, int b) { return p.leq(a, p.involution(b)); }

inline bool bf_q_small(const FinitePoset& p, int x, int q) {
  bool up = false, down = false;
  for (int r = 0; r < p.size() && !(up && down); ++r) {
    if (p.leq(x, r) && p.leq(q, r)) up = true;
    if (p.leq(x, r) && p.leq(p.involution(q), r)) down = true;
  }
  return up && down;
}

inline bool bf_indicator(const FinitePoset& p, int x, int parent, int q) {
  return p.leq(x, parent) && (p.leq(x, q) || p.leq(x, p.involution(q)));
}

inline bool bf_small_indicator_exists(const FinitePoset& p, int parent, int q) {
  for (int x = 0; x < p.size(); ++x)
    if (bf_indicator(p, x, parent, q) && bf_q_small(p, x, q)) return true;
  return false;
}

inline bool bf_split_exists(const FinitePoset& p, int parent) {
  for (int r = 0; r < p.size(); ++r)
    for (int s = 0; s < p.size(); ++s)
      if (p.leq(r, parent) && p.leq(s, parent) && bf_disjoint(p, r, s)) return true;
  return false;
}

// zig-zag existence as a closure of the hop relation
inline std::vector<std::vector<bool>> bf_hop_closure(const FinitePoset& p) {
  int n = p.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    reach[i][i] = true;
    for (int j = 0; j < n; ++j)
      for (int y = 0; y < n; ++y)
        if (p.leq(i, y) && p.leq(j, y)) reach[i][j] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  return reach;
}

// GA3-tagged zig-zag existence between q-small q-indicators under parent
inline bool bf_ga3_exists(const FinitePoset& p, int pt, int ph, int parent, int q) {
  int n = p.size();
  std::vector<int> nodes;
  for (int z = 0; z < n; ++z)
    if (bf_indicator(p, z, parent, q)) nodes.push_back(z);
  auto node_ok = [&](int z) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == z) return static_cast<int>(i);
    return -1;
  };
  int a = node_ok(pt), b = node_ok(ph);
  if (a < 0 || b < 0) return false;
  int m = static_cast<int>(nodes.size());
  std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int y = 0; y < n; ++y)
        if (p.leq(nodes[i], y) && p.leq(nodes[j], y) && p.leq(y, parent) && bf_q_small(p, y, q))
          adj[i][j] = true;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      if (adj[i][k] || i == k)
        for (int j = 0; j < m; ++j)
          if (adj[k][j]) adj[i][j] = true;
  return a == b || adj[a][b];
}

inline bool bf_reflection_exists(const FinitePoset& p, int parent) {
  int n = p.size();
  int pp = p.involution(parent);
  for (int c = 0; c < n; ++c) {
    int cp = p.involution(c);
    for (int r = 0; r < n; ++r) {
      if (!p.leq(r, parent) || !p.leq(r, c)) continue;
      for (int s = 0; s < n; ++s) {
        if (!p.leq(s, parent) || !p.leq(s, cp) || !bf_disjoint(p, r, s)) continue;
        for (int a = 0; a < n; ++a) {
          if (!p.leq(a, pp) || !p.leq(a, c)) continue;
          for (int b = 0; b < n; ++b)
            if (p.leq(b, pp) && p.leq(b, cp) && bf_disjoint(p, a, b)) return true;
        }
      }
    }
  }
  return false;
}

// reachability in the mutually-disjoint pair graph
inline bool bf_mdz_exists(const FinitePoset& p, int r1, int s1, int r2, int s2) {
  int n = p.size();
  std::vector<bool> seen(n * n, false);
  std::vector<int> queue{r1 * n + s1};
  seen[r1 * n + s1] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi] / n, v = queue[qi] % n;
    if ((u == r2 && v == s2) || (u == s2 && v == r2)) return true;
    for (int w = 0; w < n; ++w) {
      bool w_top = p.leq(u, w) && bf_disjoint(p, w, v);
      bool w_bot = p.leq(v, w) && bf_disjoint(p, w, u);
      for (int t = 0; t < n; ++t) {
        if (w_top && p.leq(t, w) && !seen[t * n + v]) {
          seen[t * n + v] = true;
          queue.push_back(t * n + v);
        }
        if (w_bot && p.leq(t, w) && !seen[u * n + t]) {
          seen[u * n + t] = true;
          queue.push_back(u * n + t);
        }
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Poset family: discretized circles plus induced involution-closed subposets.
// ---------------------------------------------------------------------------
inline FinitePoset induced_subposet(const FinitePoset& p, const std::vector<int>& keep) {
  std::vector<std::string> names;
  std::vector<int> back(p.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    names.push_back(p.str(keep[i]));
    back[keep[i]] = static_cast<int>(i);
  }
  std::vector<std::vector<bool>> le(keep.size(), std::vector<bool>(keep.size(), false));
  std::vector<int> inv(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    inv[i] = back[p.involution(keep[i])];
    for (std::size_t j = 0; j < keep.size(); ++j) le[i][j] = p.leq(keep[i], keep[j]);
  }
  return FinitePoset(names, le, inv);
}

inline std::vector<FinitePoset> poset_family(std::uint64_t seed, int random_count) {
  std::vector<FinitePoset> out;
  for (int n : {3, 4, 5}) out.push_back(zigzag::circle_poset(n));
  // a two-chain with its dual: a <= b, b' <= a'
  out.push_back(FinitePoset::parse(
      "nodes a b ai bi\nleq a b\nleq bi ai\ninvol a ai\ninvol b bi\n"));
  // antichain of two self-paired orbits
  out.push_back(FinitePoset::parse("nodes a b\ninvol a b\n"));
  FinitePoset big = zigzag::circle_poset(6);
  for (int t = 0; t < random_count; ++t) {
    zigzag::Rng rng = zigzag::Rng::stream(seed, t);
    std::vector<bool> chosen(big.size(), false);
    int orbits = 2 + static_cast<int>(rng.below(6));
    for (int k = 0; k < orbits; ++k) {
      int e = static_cast<int>(rng.below(big.size()));
      chosen[e] = true;
      chosen[big.involution(e)] = true;
    }
    std::vector<int> keep;
    for (int i = 0; i < big.size(); ++i)
      if (chosen[i]) keep.push_back(i);
    out.push_back(induced_subposet(big, keep));
  }
  return out;
}

}  // namespace oracle
