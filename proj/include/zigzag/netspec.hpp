#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zigzag/cap.hpp"
#include "zigzag/cone.hpp"
#include "zigzag/error.hpp"
#include "zigzag/finite_poset.hpp"
#include "zigzag/interval.hpp"
#include "zigzag/term.hpp"

namespace zigzag {

// Declarative description of the net feeding the calculus: a backend with
// named region constants, sector symbols with localizations, intertwiner
// symbols, algebra generators, and defined intertwiner words.
struct NetSpec {
  struct Sector {
    std::string name;
    std::optional<std::string> localized;  // region name
    bool identity = false;
  };
  struct Intertwiner {
    std::string name;
    std::string source, target;  // sector names
    std::string region;          // smallest declared region per the tagging rule
    bool unitary = true;
  };
  struct Generator {
    std::string name;
    std::string region;
    bool adjointable = true;
  };
  struct Definition {
    std::string name;
    Term word;
    std::vector<std::string> regions;
  };

  std::string name = "net";
  std::string backend_kind = "cone";  // interval | cone | cap | finite
  bool rational = true;
  std::string spread = "0";
  std::string finite_text;  // inline poset for the finite backend
  std::vector<std::pair<std::string, std::string>> regions;  // name -> literal
  std::vector<Sector> sectors;
  std::vector<Intertwiner> intertwiners;
  std::vector<Generator> generators;
  std::vector<Definition> definitions;

  const Sector* sector(const std::string& n) const {
    for (const auto& s : sectors)
      if (s.name == n) return &s;
    return nullptr;
  }
  const Intertwiner* intertwiner(const std::string& n) const {
    for (const auto& s : intertwiners)
      if (s.name == n) return &s;
    return nullptr;
  }
  const Generator* generator(const std::string& n) const {
    for (const auto& s : generators)
      if (s.name == n) return &s;
    return nullptr;
  }
  const Definition* definition(const std::string& n) const {
    for (const auto& s : definitions)
      if (s.name == n) return &s;
    return nullptr;
  }
  bool has_region(const std::string& n) const {
    for (const auto& [k, v] : regions)
      if (k == n) return true;
    return false;
  }

  std::string serialize() const {
    std::ostringstream os;
    os << "netspec v1\n";
    os << "name " << name << "\n";
    os << "backend " << backend_kind << (rational ? " rational" : " float") << "\n";
    os << "spread " << spread << "\n";
    if (!finite_text.empty()) {
      os << "poset begin\n" << finite_text;
      if (finite_text.back() != '\n') os << "\n";
      os << "poset end\n";
    }
    for (const auto& [k, v] : regions) os << "region " << k << " " << v << "\n";
    for (const auto& s : sectors) {
      os << "sector " << s.name;
      if (s.identity)
        os << " identity";
      else if (s.localized)
        os << " localized " << *s.localized;
      else
        os << " ambient";
      os << "\n";
    }
    for (const auto& u : intertwiners)
      os << (u.unitary ? "unitary " : "morphism ") << u.name << " : " << u.source << " -> "
         << u.target << " region " << u.region << "\n";
    for (const auto& g : generators) {
      os << "gen " << g.name << " region " << g.region;
      if (!g.adjointable) os << " noadj";
      os << "\n";
    }
    for (const auto& d : definitions) {
      os << "define " << d.name << " := ";
      serialize_term(d.word, os);
      os << " regions";
      for (const auto& r : d.regions) os << " " << r;
      os << "\n";
    }
    return os.str();
  }

  static NetSpec parse(const std::string& text) {
    NetSpec ns;
    ns.regions.clear();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool in_poset = false;
    while (std::getline(in, line)) {
      ++lineno;
      if (in_poset) {
        if (line == "poset end") {
          in_poset = false;
        } else {
          ns.finite_text += line + "\n";
        }
        continue;
      }
      std::istringstream ls(line);
      std::string kw;
      if (!(ls >> kw) || kw[0] == '#') continue;
      auto fail = [&](const std::string& msg) {
        throw ParseError("netspec line " + std::to_string(lineno) + ": " + msg);
      };
      if (kw == "netspec") continue;
      if (kw == "name") {
        ls >> ns.name;
      } else if (kw == "backend") {
        std::string kind, mode;
        ls >> kind >> mode;
        ns.backend_kind = kind;
        ns.rational = mode != "float";
      } else if (kw == "spread") {
        ls >> ns.spread;
      } else if (kw == "poset") {
        in_poset = true;
      } else if (kw == "region") {
        std::string n, lit;
        if (!(ls >> n >> lit)) fail("region needs a name and a literal");
        ns.regions.emplace_back(n, lit);
      } else if (kw == "sector") {
        Sector s;
        std::string mode;
        if (!(ls >> s.name >> mode)) fail("sector needs a name and a mode");
        if (mode == "identity")
          s.identity = true;
        else if (mode == "localized") {
          std::string r;
          if (!(ls >> r)) fail("localized sector needs a region");
          s.localized = r;
        } else if (mode != "ambient")
          fail("unknown sector mode " + mode);
        ns.sectors.push_back(s);
      } else if (kw == "unitary" || kw == "morphism") {
        Intertwiner u;
        u.unitary = kw == "unitary";
        std::string colon, arrow, regionkw;
        if (!(ls >> u.name >> colon >> u.source >> arrow >> u.target >> regionkw >> u.region) ||
            colon != ":" || arrow != "->" || regionkw != "region")
          fail("expected: " + kw + " name : src -> tgt region r");
        ns.intertwiners.push_back(u);
      } else if (kw == "gen") {
        Generator g;
        std::string regionkw;
        if (!(ls >> g.name >> regionkw >> g.region) || regionkw != "region")
          fail("expected: gen name region r");
        std::string flag;
        if (ls >> flag) g.adjointable = flag != "noadj";
        ns.generators.push_back(g);
      } else if (kw == "define") {
        Definition d;
        std::string assign;
        if (!(ls >> d.name >> assign) || assign != ":=") fail("expected: define name := (prod ...)");
        std::string rest;
        std::getline(ls, rest);
        std::size_t rpos = rest.rfind(" regions");
        if (rpos == std::string::npos) fail("definition needs a regions list");
        d.word = parse_term(rest.substr(0, rpos));
        std::istringstream rs(rest.substr(rpos + 8));
        std::string r;
        while (rs >> r) d.regions.push_back(r);
        if (d.regions.empty()) fail("definition needs at least one region");
        ns.definitions.push_back(d);
      } else {
        fail("unknown keyword " + kw);
      }
    }
    return ns;
  }
};

// ---------------------------------------------------------------------------
// Region context: a NetSpec bound to a live backend; answers the poset facts
// the rewrite rules depend on. Spread decorations resolve through enlarge on
// the cone backend and through the declared endomap on the finite backend.
// ---------------------------------------------------------------------------
class RegionCtx {
 public:
  virtual ~RegionCtx() = default;
  virtual bool leq(const RegionTag& a, const RegionTag& b) const = 0;
  virtual bool valid_region(const std::string& name) const = 0;
  virtual std::string backend_name() const = 0;

  bool disjoint(const RegionTag& a, const RegionTag& b) const {
    RegionTag bp = b;
    bp.primed = !bp.primed;
    // a <= (b^{+ks})' is resolved as disjointness of the enlarged regions
    return leq_vs_complement(a, b);
  }

 protected:
  virtual bool leq_vs_complement(const RegionTag& a, const RegionTag& b) const = 0;
};

template <class B>
class BackendRegionCtx final : public RegionCtx {
 public:
  using E = typename B::element;

  BackendRegionCtx(B backend, std::map<std::string, E> consts, typename B::element (*enl)(const B&, const E&, int, const std::string&), std::string spread_text)
      : backend_(std::move(backend)), consts_(std::move(consts)), enlarge_(enl),
        spread_text_(std::move(spread_text)) {}

  bool leq(const RegionTag& a, const RegionTag& b) const override {
    return backend_.leq(resolve(a), resolve(b));
  }
  bool valid_region(const std::string& name) const override { return consts_.count(name) > 0; }
  std::string backend_name() const override { return B::name(); }

  const B& backend() const { return backend_; }
  E resolve(const RegionTag& t) const {
    auto it = consts_.find(t.name);
    if (it == consts_.end()) throw MalformedScript("unknown region: " + t.name);
    E e = it->second;
    if (t.primed) e = backend_.involution(e);
    // at zero spread the decorations are vacuous on every backend
    if (t.spread != 0 && !spread_is_zero()) e = enlarge_(backend_, e, t.spread, spread_text_);
    return e;
  }

  bool spread_is_zero() const {
    for (char c : spread_text_)
      if (c != '0' && c != '.' && c != '+') return false;
    return true;
  }

 protected:
  bool leq_vs_complement(const RegionTag& a, const RegionTag& b) const override {
    return backend_.leq(resolve(a), backend_.involution(resolve(b)));
  }

 private:
  B backend_;
  std::map<std::string, E> consts_;
  typename B::element (*enlarge_)(const B&, const E&, int, const std::string&);
  std::string spread_text_;
};

namespace detail {

template <class S>
inline S parse_length(const std::string& text) {
  // decimal literal as an exact scalar
  return degrees_from_string<S>(text) * scalar_ops<S>::from_fraction(180, 1);
}

template <class S>
inline Interval<S> parse_interval_literal(const IntervalBackend<S>& b, const std::string& lit) {
  if (lit.rfind("interval(", 0) != 0 || lit.back() != ')')
    throw ParseError("bad interval literal: " + lit);
  std::string body = lit.substr(9, lit.size() - 10);
  std::size_t comma = body.find(',');
  if (comma == std::string::npos) throw ParseError("bad interval literal: " + lit);
  return b.make(degrees_from_string<S>(body.substr(0, comma)),
                degrees_from_string<S>(body.substr(comma + 1)));
}

inline std::vector<std::string> split_args(const std::string& lit, const std::string& head) {
  if (lit.rfind(head + "(", 0) != 0 || lit.back() != ')')
    throw ParseError("bad " + head + " literal: " + lit);
  std::string body = lit.substr(head.size() + 1, lit.size() - head.size() - 2);
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i)
    if (i == body.size() || body[i] == ',') {
      out.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

template <class S>
inline Cone<S> parse_cone_literal(const ConeBackend<S>& b, const std::string& lit) {
  auto args = split_args(lit, "cone");
  if (args.size() != 4) throw ParseError("cone literal needs 4 fields: " + lit);
  return b.make(Vec2{std::stod(args[0]), std::stod(args[1])}, degrees_from_string<S>(args[2]),
                degrees_from_string<S>(args[3]));
}

inline Cap parse_cap_literal(const CapBackend& b, const std::string& lit) {
  auto args = split_args(lit, "cap");
  if (args.size() != 4) throw ParseError("cap literal needs 4 fields: " + lit);
  return b.make(Vec3{std::stod(args[0]), std::stod(args[1]), std::stod(args[2])},
                std::stod(args[3]) * kPi / 180.0);
}

}  // namespace detail

inline std::shared_ptr<RegionCtx> make_region_ctx(const NetSpec& ns, Tolerance tol = {}) {
  if (ns.backend_kind == "interval") {
    auto run = [&](auto scalar_tag) -> std::shared_ptr<RegionCtx> {
      using S = decltype(scalar_tag);
      IntervalBackend<S> b(tol);
      std::map<std::string, Interval<S>> consts;
      for (const auto& [k, v] : ns.regions) consts[k] = detail::parse_interval_literal(b, v);
      auto enl = +[](const IntervalBackend<S>&, const Interval<S>&, int,
                     const std::string&) -> Interval<S> {
        throw MalformedScript("the interval backend does not support spread decorations");
      };
      return std::make_shared<BackendRegionCtx<IntervalBackend<S>>>(b, std::move(consts), enl,
                                                                    ns.spread);
    };
    return ns.rational ? run(Rat{}) : run(double{});
  }
  if (ns.backend_kind == "cone") {
    auto run = [&](auto scalar_tag) -> std::shared_ptr<RegionCtx> {
      using S = decltype(scalar_tag);
      ConeBackend<S> b(tol);
      std::map<std::string, Cone<S>> consts;
      for (const auto& [k, v] : ns.regions) consts[k] = detail::parse_cone_literal(b, v);
      auto enl = +[](const ConeBackend<S>& bk, const Cone<S>& e, int k,
                     const std::string& spread) -> Cone<S> {
        S s = detail::parse_length<S>(spread);
        S total = scalar_ops<S>::zero();
        for (int i = 0; i < k; ++i) total = total + s;
        return bk.enlarge(e, total);
      };
      return std::make_shared<BackendRegionCtx<ConeBackend<S>>>(b, std::move(consts), enl,
                                                                ns.spread);
    };
    return ns.rational ? run(Rat{}) : run(double{});
  }
  if (ns.backend_kind == "cap") {
    CapBackend b(tol);
    std::map<std::string, Cap> consts;
    for (const auto& [k, v] : ns.regions) consts[k] = detail::parse_cap_literal(b, v);
    auto enl = +[](const CapBackend&, const Cap&, int, const std::string&) -> Cap {
      throw MalformedScript("the cap backend does not support spread decorations");
    };
    return std::make_shared<BackendRegionCtx<CapBackend>>(b, std::move(consts), enl, ns.spread);
  }
  if (ns.backend_kind == "finite") {
    FinitePoset b = FinitePoset::parse(ns.finite_text);
    std::map<std::string, int> consts;
    for (const auto& [k, v] : ns.regions) consts[k] = b.index_of(v);
    auto enl = +[](const FinitePoset& bk, const int& e, int k, const std::string&) -> int {
      return bk.enlarge(e, k);
    };
    return std::make_shared<BackendRegionCtx<FinitePoset>>(std::move(b), std::move(consts), enl,
                                                           ns.spread);
  }
  throw ParseError("unknown backend kind: " + ns.backend_kind);
}

}  // namespace zigzag
