#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zigzag/error.hpp"
#include "zigzag/poset.hpp"

namespace zigzag {

// Explicit-matrix poset with involution; the brute-forceable oracle backend.
// Elements are node indices.
class FinitePoset {
 public:
  using element = int;

  FinitePoset(std::vector<std::string> names, std::vector<std::vector<bool>> le,
              std::vector<int> invol, std::vector<int> spread_map = {})
      : names_(std::move(names)), le_(std::move(le)), inv_(std::move(invol)),
        spread_(std::move(spread_map)) {
    if (spread_.empty()) {
      spread_.resize(names_.size());
      for (std::size_t i = 0; i < spread_.size(); ++i) spread_[i] = static_cast<int>(i);
    }
    validate();
  }

  static std::string name() { return "finite"; }
  int size() const { return static_cast<int>(names_.size()); }

  bool leq(element a, element b) const { return le_[a][b]; }
  element involution(element a) const { return inv_[a]; }
  bool equal(element a, element b) const { return a == b; }

  std::optional<element> cap_witness(element a, element b) const {
    for (int r = 0; r < size(); ++r)
      if (le_[r][a] && le_[r][b]) return r;
    return std::nullopt;
  }

  std::optional<element> join_witness(element a, element b) const {
    for (int r = 0; r < size(); ++r)
      if (le_[a][r] && le_[b][r]) return r;
    return std::nullopt;
  }

  Splitting<element> split(element p) const {
    for (int r = 0; r < size(); ++r)
      for (int s = 0; s < size(); ++s)
        if (le_[r][p] && le_[s][p] && le_[r][inv_[s]]) return Splitting<element>{p, r, s};
    throw ConstructionFailed("finite poset: " + names_[p] + " does not split");
  }

  std::vector<element> lower_candidates(element p) const {
    std::vector<element> out{p};
    for (int r = 0; r < size(); ++r)
      if (r != p && le_[r][p]) out.push_back(r);
    return out;
  }

  std::vector<element> all_elements() const {
    std::vector<element> out(names_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    return out;
  }

  element enlarge(element p, int k) const {
    element e = p;
    for (int i = 0; i < k; ++i) e = spread_[e];
    if (k < 0) throw PreconditionViolated("finite poset: negative spread");
    return e;
  }

  const std::string& str(element e) const { return names_[e]; }

  int index_of(const std::string& n) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == n) return i;
    throw ParseError("unknown node: " + n);
  }

  // Search-backed zig-zag: breadth-first over q-indicators below p, linked
  // through q-small upper bounds. On this backend construction and
  // exhaustive existence coincide by design.
  ZigZag<element> ga3_zigzag(element pt, element ph, element p, element q) const {
    auto small = [&](element y) {
      return join_witness(y, q).has_value() && join_witness(y, inv_[q]).has_value();
    };
    auto indicator = [&](element z) {
      return le_[z][p] && (le_[z][q] || le_[z][inv_[q]]);
    };
    if (!indicator(pt) || !small(pt) || !indicator(ph) || !small(ph))
      throw PreconditionViolated("ga3: endpoints must be q-small q-indicators below p");
    if (pt == ph) return trivial_zigzag(pt);
    std::vector<int> prev(size(), -1), via(size(), -1);
    std::vector<int> queue{pt};
    prev[pt] = pt;
    for (std::size_t qi = 0; qi < queue.size() && prev[ph] == -1; ++qi) {
      int z = queue[qi];
      for (int y = 0; y < size(); ++y) {
        if (!le_[z][y] || !le_[y][p] || !small(y)) continue;
        for (int z2 = 0; z2 < size(); ++z2) {
          if (prev[z2] != -1 || !le_[z2][y] || !indicator(z2)) continue;
          prev[z2] = z;
          via[z2] = y;
          queue.push_back(z2);
        }
      }
    }
    if (prev[ph] == -1) throw ConstructionFailed("ga3: no zig-zag found by search");
    ZigZag<element> zz;
    std::vector<element> rz, ry;
    for (int at = ph; at != pt; at = prev[at]) {
      rz.push_back(at);
      ry.push_back(via[at]);
    }
    rz.push_back(pt);
    zz.z.assign(rz.rbegin(), rz.rend());
    zz.y.assign(ry.rbegin(), ry.rend());
    return zz;
  }

  // --- structured-text format: node/leq/invol/spread lines -----------------
  static FinitePoset parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> leq_pairs, inv_pairs, spread_pairs;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::string kw;
      if (!(ls >> kw) || kw[0] == '#') continue;
      if (kw == "poset") continue;  // header
      if (kw == "node" || kw == "nodes") {
        std::string n;
        while (ls >> n) names.push_back(n);
      } else if (kw == "leq" || kw == "invol" || kw == "spread") {
        std::string a, b;
        if (!(ls >> a >> b)) throw ParseError("line " + std::to_string(lineno) + ": expected two nodes");
        if (kw == "leq") leq_pairs.emplace_back(a, b);
        if (kw == "invol") inv_pairs.emplace_back(a, b);
        if (kw == "spread") spread_pairs.emplace_back(a, b);
      } else {
        throw ParseError("line " + std::to_string(lineno) + ": unknown keyword " + kw);
      }
    }
    if (names.empty()) throw ParseError("poset file declares no nodes");
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (idx.count(names[i])) throw ParseError("duplicate node " + names[i]);
      idx[names[i]] = static_cast<int>(i);
    }
    auto at = [&](const std::string& n) {
      auto it = idx.find(n);
      if (it == idx.end()) throw ParseError("unknown node " + n);
      return it->second;
    };
    int n = static_cast<int>(names.size());
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) le[i][i] = true;
    for (auto& [a, b] : leq_pairs) le[at(a)][at(b)] = true;
    // transitive closure
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (le[i][k])
          for (int j = 0; j < n; ++j)
            if (le[k][j]) le[i][j] = true;
    std::vector<int> inv(n, -1);
    for (auto& [a, b] : inv_pairs) {
      inv[at(a)] = at(b);
      inv[at(b)] = at(a);
    }
    for (int i = 0; i < n; ++i)
      if (inv[i] == -1) throw ParseError("involution undefined on node " + names[i]);
    std::vector<int> spread;
    if (!spread_pairs.empty()) {
      spread.assign(n, -1);
      for (auto& [a, b] : spread_pairs) spread[at(a)] = at(b);
      for (int i = 0; i < n; ++i)
        if (spread[i] == -1) spread[i] = i;
    }
    return FinitePoset(names, le, inv, spread);
  }

  std::string serialize() const {
    std::ostringstream os;
    os << "poset v1\n";
    os << "nodes";
    for (const auto& n : names_) os << " " << n;
    os << "\n";
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (i != j && le_[i][j]) os << "leq " << names_[i] << " " << names_[j] << "\n";
    for (int i = 0; i < size(); ++i)
      if (i <= inv_[i]) os << "invol " << names_[i] << " " << names_[inv_[i]] << "\n";
    for (int i = 0; i < size(); ++i)
      if (spread_[i] != i) os << "spread " << names_[i] << " " << names_[spread_[i]] << "\n";
    return os.str();
  }

 private:
  void validate() const {
    int n = size();
    if (static_cast<int>(le_.size()) != n || static_cast<int>(inv_.size()) != n ||
        static_cast<int>(spread_.size()) != n)
      throw ParseError("poset tables have inconsistent sizes");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(le_[i].size()) != n) throw ParseError("ragged order matrix");
      if (!le_[i][i]) throw ParseError("order not reflexive at " + names_[i]);
      if (inv_[i] < 0 || inv_[i] >= n || inv_[inv_[i]] != i)
        throw ParseError("involution is not an involutive permutation at " + names_[i]);
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (le_[i][j] && le_[j][i] && i != j)
          throw ParseError("order not antisymmetric: " + names_[i] + " ~ " + names_[j]);
        if (le_[i][j] && !le_[inv_[j]][inv_[i]])
          throw ParseError("involution not order-reversing on (" + names_[i] + "," + names_[j] + ")");
        for (int k = 0; k < n; ++k)
          if (le_[i][j] && le_[j][k] && !le_[i][k])
            throw ParseError("order not transitive via " + names_[j]);
      }
    for (int i = 0; i < n; ++i) {
      if (spread_[i] < 0 || spread_[i] >= n) throw ParseError("spread map out of range");
      if (!le_[i][spread_[i]]) throw ParseError("spread map not increasing at " + names_[i]);
      for (int j = 0; j < n; ++j)
        if (le_[i][j] && !le_[spread_[i]][spread_[j]])
          throw ParseError("spread map not monotone on (" + names_[i] + "," + names_[j] + ")");
    }
  }

  std::vector<std::string> names_;
  std::vector<std::vector<bool>> le_;
  std::vector<int> inv_;
  std::vector<int> spread_;
};

// Discretized circle: open arcs with endpoints on an n-point grid, ordered by
// inclusion, involution by complement. Arc (i, l) covers grid slots
// i, i+1, ..., i+l-1 (mod n), 1 <= l <= n-1.
inline FinitePoset circle_poset(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i)
    for (int l = 1; l <= n - 1; ++l) {
      arcs.emplace_back(i, l);
      names.push_back("a" + std::to_string(i) + "_" + std::to_string(l));
    }
  auto covers = [&](int i, int l, int slot) {
    int d = (slot - i + n) % n;
    return d < l;
  };
  int m = static_cast<int>(arcs.size());
  std::vector<std::vector<bool>> le(m, std::vector<bool>(m, false));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      bool sub = true;
      for (int s = 0; s < n && sub; ++s)
        if (covers(arcs[x].first, arcs[x].second, s) && !covers(arcs[y].first, arcs[y].second, s))
          sub = false;
      le[x][y] = sub;
    }
  std::vector<int> inv(m, -1);
  for (int x = 0; x < m; ++x) {
    int ci = (arcs[x].first + arcs[x].second) % n;
    int cl = n - arcs[x].second;
    for (int y = 0; y < m; ++y)
      if (arcs[y].first == ci && arcs[y].second == cl) inv[x] = y;
  }
  return FinitePoset(names, le, inv);
}

}  // namespace zigzag
