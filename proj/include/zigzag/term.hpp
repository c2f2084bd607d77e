#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "zigzag/error.hpp"

namespace zigzag {

// A region reference: a named region constant, optionally complemented and
// then enlarged by a multiple of the net's spread. q'+2s reads as
// (q')^{+2s}.
struct RegionTag {
  std::string name;
  bool primed = false;
  int spread = 0;

  friend bool operator==(const RegionTag& a, const RegionTag& b) {
    return a.name == b.name && a.primed == b.primed && a.spread == b.spread;
  }
  std::string str() const {
    std::string s = name;
    if (primed) s += "'";
    if (spread != 0) s += "+" + std::to_string(spread) + "s";
    return s;
  }
  static RegionTag parse(const std::string& text) {
    RegionTag t;
    std::size_t i = 0;
    while (i < text.size() && text[i] != '\'' && text[i] != '+') ++i;
    t.name = text.substr(0, i);
    if (t.name.empty()) throw ParseError("empty region reference");
    if (i < text.size() && text[i] == '\'') {
      t.primed = true;
      ++i;
    }
    if (i < text.size() && text[i] == '+') {
      std::size_t j = ++i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == i || j + 1 != text.size() || text[j] != 's')
        throw ParseError("bad spread suffix in region reference: " + text);
      t.spread = std::stoi(text.substr(i, j - i));
    } else if (i != text.size()) {
      throw ParseError("bad region reference: " + text);
    }
    return t;
  }
};

// Terms are words in a free *-monoid over symbol atoms and sector
// applications App(pi, Q, t), denoting pi_Q(t). The empty word is 1.
struct Term;
struct AppNode;

struct Factor {
  bool starred = false;
  std::string atom;                    // nonempty for symbol atoms
  std::shared_ptr<const AppNode> app;  // non-null for applications

  bool is_app() const { return app != nullptr; }
};

struct Term {
  std::vector<Factor> factors;

  bool is_one() const { return factors.empty(); }
  std::size_t size() const { return factors.size(); }
};

struct AppNode {
  std::string sector;
  RegionTag region;
  Term arg;
};

inline Factor make_atom(const std::string& name, bool starred = false) {
  Factor f;
  f.atom = name;
  f.starred = starred;
  return f;
}

inline Factor make_app(const std::string& sector, const RegionTag& region, Term arg,
                       bool starred = false) {
  Factor f;
  f.starred = starred;
  f.app = std::make_shared<AppNode>(AppNode{sector, region, std::move(arg)});
  return f;
}

inline Term make_term(std::vector<Factor> fs) { return Term{std::move(fs)}; }

inline Factor adjoint_factor(const Factor& f) {
  Factor g = f;
  g.starred = !g.starred;
  return g;
}

// star of a word: reverse order, star each factor
inline Term adjoint(const Term& t) {
  Term out;
  out.factors.reserve(t.size());
  for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
    out.factors.push_back(adjoint_factor(*it));
  return out;
}

// ---------------------------------------------------------------------------
// canonical parenthesized prefix serialization
// ---------------------------------------------------------------------------
inline void serialize_term(const Term& t, std::ostream& os);

inline void serialize_factor(const Factor& f, std::ostream& os) {
  if (f.starred) os << "(* ";
  if (f.is_app()) {
    os << "(ap " << f.app->sector << " " << f.app->region.str() << " ";
    serialize_term(f.app->arg, os);
    os << ")";
  } else {
    os << f.atom;
  }
  if (f.starred) os << ")";
}

inline void serialize_term(const Term& t, std::ostream& os) {
  os << "(prod";
  for (const Factor& f : t.factors) {
    os << " ";
    serialize_factor(f, os);
  }
  os << ")";
}

inline std::string term_str(const Term& t) {
  std::ostringstream os;
  serialize_term(t, os);
  return os.str();
}

inline bool term_equal(const Term& a, const Term& b) { return term_str(a) == term_str(b); }

namespace detail {

struct TokenStream {
  std::string text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }
  bool peek_open() {
    skip();
    return pos < text.size() && text[pos] == '(';
  }
  bool peek_close() {
    skip();
    return pos < text.size() && text[pos] == ')';
  }
  void expect(char c) {
    skip();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError("expected '" + std::string(1, c) + "' at offset " + std::to_string(pos) +
                       " in term");
    ++pos;
  }
  std::string word() {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '(' && text[pos] != ')') ++pos;
    if (start == pos) throw ParseError("expected a token at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  }
  bool done() {
    skip();
    return pos >= text.size();
  }
};

Term parse_term(TokenStream& ts);

inline Factor parse_factor(TokenStream& ts) {
  if (!ts.peek_open()) return make_atom(ts.word());
  ts.expect('(');
  std::string head = ts.word();
  if (head == "*") {
    Factor inner = parse_factor(ts);
    ts.expect(')');
    if (inner.starred) throw ParseError("double star in term");
    inner.starred = true;
    return inner;
  }
  if (head == "ap") {
    std::string sector = ts.word();
    RegionTag region = RegionTag::parse(ts.word());
    Term arg = parse_term(ts);
    ts.expect(')');
    return make_app(sector, region, std::move(arg));
  }
  throw ParseError("unknown term head: " + head);
}

inline Term parse_term(TokenStream& ts) {
  ts.expect('(');
  std::string head = ts.word();
  if (head != "prod") throw ParseError("expected (prod ...), got head " + head);
  Term t;
  while (!ts.peek_close()) t.factors.push_back(parse_factor(ts));
  ts.expect(')');
  return t;
}

}  // namespace detail

inline Term parse_term(const std::string& text) {
  detail::TokenStream ts{text, 0};
  Term t = detail::parse_term(ts);
  if (!ts.done()) throw ParseError("trailing input after term");
  return t;
}

// ---------------------------------------------------------------------------
// positions: a path of factor indices descending through applications,
// ending at a factor index in the target product
// ---------------------------------------------------------------------------
struct Pos {
  std::vector<int> path;  // descents through app factors
  int at = 0;             // index within the target product

  std::string str() const {
    std::string s;
    for (int p : path) s += std::to_string(p) + ".";
    return s + std::to_string(at);
  }
  static Pos parse(const std::string& text) {
    Pos p;
    std::size_t start = 0;
    std::vector<int> parts;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == '.') {
        if (i == start) throw ParseError("bad position: " + text);
        parts.push_back(std::stoi(text.substr(start, i - start)));
        start = i + 1;
      }
    }
    if (parts.empty()) throw ParseError("empty position");
    p.at = parts.back();
    parts.pop_back();
    p.path = std::move(parts);
    return p;
  }
};

// fetch the product a path points into; throws on bad paths
inline const Term& subterm_at(const Term& t, const std::vector<int>& path) {
  const Term* cur = &t;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->factors.size())
      throw MalformedScript("path index out of range");
    const Factor& f = cur->factors[i];
    if (!f.is_app()) throw MalformedScript("path descends into a non-application factor");
    cur = &f.app->arg;
  }
  return *cur;
}

// rebuild the term with the product at `path` replaced by `repl`
inline Term replace_at(const Term& t, const std::vector<int>& path, std::size_t depth,
                       const Term& repl) {
  if (depth == path.size()) return repl;
  Term out = t;
  int i = path[depth];
  if (i < 0 || static_cast<std::size_t>(i) >= out.factors.size())
    throw MalformedScript("path index out of range");
  Factor& f = out.factors[i];
  if (!f.is_app()) throw MalformedScript("path descends into a non-application factor");
  Term newarg = replace_at(f.app->arg, path, depth + 1, repl);
  f.app = std::make_shared<AppNode>(AppNode{f.app->sector, f.app->region, std::move(newarg)});
  return out;
}

}  // namespace zigzag
