#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zigzag/netspec.hpp"
#include "zigzag/term.hpp"

namespace zigzag {

// Machine-checkable side conditions. Poset facts delegate to the region
// context; symbol facts delegate to the net declaration.
struct Fact {
  enum class Kind { Leq, Disjoint, Intertwines, Unitary };
  Kind kind = Kind::Leq;
  bool negated = false;
  RegionTag a, b;                 // Leq / Disjoint
  std::string sym, src, tgt;      // Intertwines / Unitary

  static Fact leq(RegionTag x, RegionTag y) { return Fact{Kind::Leq, false, x, y, "", "", ""}; }
  static Fact disjoint(RegionTag x, RegionTag y) {
    return Fact{Kind::Disjoint, false, x, y, "", "", ""};
  }
  static Fact intertwines(std::string s, std::string from, std::string to) {
    return Fact{Kind::Intertwines, false, {}, {}, std::move(s), std::move(from), std::move(to)};
  }
  static Fact unitary(std::string s) {
    return Fact{Kind::Unitary, false, {}, {}, std::move(s), "", ""};
  }

  std::string str() const {
    std::string body;
    switch (kind) {
      case Kind::Leq: body = "leq(" + a.str() + "," + b.str() + ")"; break;
      case Kind::Disjoint: body = "disjoint(" + a.str() + "," + b.str() + ")"; break;
      case Kind::Intertwines: body = "intertwines(" + sym + "," + src + "," + tgt + ")"; break;
      case Kind::Unitary: body = "unitary(" + sym + ")"; break;
    }
    return negated ? "!" + body : body;
  }

  static Fact parse(const std::string& text) {
    Fact f;
    std::string t = text;
    if (!t.empty() && t[0] == '!') {
      f.negated = true;
      t = t.substr(1);
    }
    auto open = t.find('(');
    if (open == std::string::npos || t.back() != ')') throw ParseError("bad fact: " + text);
    std::string head = t.substr(0, open);
    std::string body = t.substr(open + 1, t.size() - open - 2);
    std::vector<std::string> args;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i)
      if (i == body.size() || body[i] == ',') {
        args.push_back(body.substr(start, i - start));
        start = i + 1;
      }
    if (head == "leq" && args.size() == 2) {
      f.kind = Kind::Leq;
      f.a = RegionTag::parse(args[0]);
      f.b = RegionTag::parse(args[1]);
    } else if (head == "disjoint" && args.size() == 2) {
      f.kind = Kind::Disjoint;
      f.a = RegionTag::parse(args[0]);
      f.b = RegionTag::parse(args[1]);
    } else if (head == "intertwines" && args.size() == 3) {
      f.kind = Kind::Intertwines;
      f.sym = args[0];
      f.src = args[1];
      f.tgt = args[2];
    } else if (head == "unitary" && args.size() == 1) {
      f.kind = Kind::Unitary;
      f.sym = args[0];
    } else {
      throw ParseError("bad fact: " + text);
    }
    return f;
  }
};

// intertwiner data for declared symbols and defined words
struct InterData {
  std::string src, tgt;
  bool unitary = true;
};

inline std::optional<InterData> compose_word(const NetSpec& ns, const Term& word);

inline std::optional<InterData> inter_data(const NetSpec& ns, const std::string& name) {
  if (const auto* u = ns.intertwiner(name)) return InterData{u->source, u->target, u->unitary};
  if (const auto* d = ns.definition(name)) return compose_word(ns, d->word);
  return std::nullopt;
}

// Compose a word of intertwiner atoms right-to-left; the word acts first by
// its rightmost letter.
inline std::optional<InterData> compose_word(const NetSpec& ns, const Term& word) {
  if (word.is_one()) return std::nullopt;
  std::optional<std::string> state;
  bool unitary = true;
  std::string src;
  for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
    if (it->is_app() || it->atom.empty()) return std::nullopt;
    const auto* u = ns.intertwiner(it->atom);
    if (!u) return std::nullopt;
    unitary = unitary && u->unitary;
    std::string in = it->starred ? u->target : u->source;
    std::string out = it->starred ? u->source : u->target;
    if (!state) src = in;
    else if (*state != in) return std::nullopt;
    state = out;
  }
  return InterData{src, *state, unitary};
}

inline bool eval_fact(const NetSpec& ns, const RegionCtx& ctx, const Fact& f) {
  bool v = false;
  switch (f.kind) {
    case Fact::Kind::Leq: v = ctx.leq(f.a, f.b); break;
    case Fact::Kind::Disjoint: v = ctx.disjoint(f.a, f.b); break;
    case Fact::Kind::Intertwines: {
      auto d = inter_data(ns, f.sym);
      v = d && d->src == f.src && d->tgt == f.tgt;
      break;
    }
    case Fact::Kind::Unitary: {
      auto d = inter_data(ns, f.sym);
      v = d && d->unitary;
      break;
    }
  }
  return f.negated ? !v : v;
}

// ---------------------------------------------------------------------------
// membership and commutant tags
//
// An algebra generator x in A_q carries membership q. An intertwiner tagged
// with region r lies in A_{r^c}' (commutes with everything in A_{r^c}) and
// in A_{r^{+s}}. An application pi_Q(t) with pi localized inside Q lies in
// A_{Q^c}' and A_{Q^{+s}}; the identity sector leaves memberships at Q.
// ---------------------------------------------------------------------------
inline RegionTag bump(RegionTag t, int k) {
  t.spread += k;
  return t;
}

// applications acting as the identity (identity sector, or localization
// disjoint from the outer region) keep the exact membership of the region
inline bool app_is_transparent(const NetSpec& ns, const RegionCtx& ctx, const AppNode& app) {
  const auto* s = ns.sector(app.sector);
  if (!s) return false;
  if (s->identity) return true;
  return s->localized && ctx.disjoint(RegionTag{*s->localized, false, 0}, app.region);
}

inline std::vector<RegionTag> base_tags(const NetSpec& ns, const RegionCtx& ctx, const Factor& f) {
  std::vector<RegionTag> out;
  if (f.is_app()) {
    const auto* s = ns.sector(f.app->sector);
    if (!s) return out;
    if (app_is_transparent(ns, ctx, *f.app)) {
      out.push_back(f.app->region);
    } else if (s->localized) {
      RegionTag loc{*s->localized, false, 0};
      if (ctx.leq(loc, f.app->region)) out.push_back(f.app->region);
    }
    return out;
  }
  if (const auto* g = ns.generator(f.atom)) {
    out.push_back(RegionTag{g->region, false, 0});
    return out;
  }
  if (const auto* u = ns.intertwiner(f.atom)) {
    out.push_back(RegionTag{u->region, false, 0});
    return out;
  }
  if (const auto* d = ns.definition(f.atom)) {
    for (const auto& r : d->regions) out.push_back(RegionTag{r, false, 0});
    return out;
  }
  return out;
}

inline std::vector<RegionTag> mem_tags(const NetSpec& ns, const RegionCtx& ctx, const Factor& f) {
  std::vector<RegionTag> out = base_tags(ns, ctx, f);
  bool exact = false;  // generators and transparent applications need no spread bump
  if (f.is_app()) {
    exact = app_is_transparent(ns, ctx, *f.app);
  } else if (ns.generator(f.atom)) {
    exact = true;
  }
  if (!exact)
    for (auto& t : out) t = bump(t, 1);
  return out;
}

inline std::optional<RegionTag> tag_below(const RegionCtx& ctx, const std::vector<RegionTag>& tags,
                                          const RegionTag& bound) {
  for (const auto& t : tags)
    if (ctx.leq(t, bound)) return t;
  return std::nullopt;
}

inline std::optional<RegionTag> tag_disjoint_from(const RegionCtx& ctx,
                                                  const std::vector<RegionTag>& tags,
                                                  const RegionTag& other) {
  for (const auto& t : tags)
    if (ctx.disjoint(t, other)) return t;
  return std::nullopt;
}

inline bool is_unitary_factor(const NetSpec& ns, const Factor& f) {
  if (f.is_app()) {
    for (const auto& g : f.app->arg.factors)
      if (!is_unitary_factor(ns, g)) return false;
    return true;
  }
  auto d = inter_data(ns, f.atom);
  return d && d->unitary;
}

inline void collect_unitary_facts(const NetSpec& ns, const Factor& f, std::vector<Fact>& out) {
  if (f.is_app()) {
    for (const auto& g : f.app->arg.factors) collect_unitary_facts(ns, g, out);
    return;
  }
  out.push_back(Fact::unitary(f.atom));
}

// well-formedness of a term against the net: all symbols declared, stars
// legal, and application arguments bounded by the outer region
inline void validate_term(const NetSpec& ns, const RegionCtx& ctx, const Term& t,
                          const std::string& where) {
  for (const Factor& f : t.factors) {
    if (f.is_app()) {
      if (!ns.sector(f.app->sector))
        throw MalformedScript(where + ": unknown sector " + f.app->sector);
      if (!ctx.valid_region(f.app->region.name))
        throw MalformedScript(where + ": unknown region " + f.app->region.name);
      validate_term(ns, ctx, f.app->arg, where);
      for (const Factor& g : f.app->arg.factors)
        if (!tag_below(ctx, mem_tags(ns, ctx, g), f.app->region))
          throw MalformedScript(where + ": application argument escapes region " +
                                f.app->region.str());
    } else {
      const auto* g = ns.generator(f.atom);
      if (g) {
        if (f.starred && !g->adjointable)
          throw MalformedScript(where + ": generator " + f.atom + " is not adjointable");
        continue;
      }
      if (!inter_data(ns, f.atom)) throw MalformedScript(where + ": unknown symbol " + f.atom);
    }
  }
}

// the region_of operation: the smallest derivable membership bound
struct RegionOfResult {
  std::optional<RegionTag> tag;
  bool tie = false;
  std::string note;
};

inline RegionOfResult region_of(const NetSpec& ns, const RegionCtx& ctx, const Term& t) {
  std::vector<RegionTag> candidates;
  for (const Factor& f : t.factors)
    for (const auto& m : mem_tags(ns, ctx, f)) candidates.push_back(m);
  for (const auto& [k, v] : ns.regions) candidates.push_back(RegionTag{k, false, 0});
  std::vector<RegionTag> qualifying;
  for (const auto& c : candidates) {
    bool ok = true;
    for (const Factor& f : t.factors)
      if (!tag_below(ctx, mem_tags(ns, ctx, f), c)) {
        ok = false;
        break;
      }
    if (ok) qualifying.push_back(c);
  }
  RegionOfResult res;
  if (qualifying.empty()) {
    res.note = "NoCommonRegion";
    return res;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < qualifying.size(); ++i)
    if (ctx.leq(qualifying[i], qualifying[best]) && !(qualifying[i] == qualifying[best]))
      best = i;
  res.tag = qualifying[best];
  for (std::size_t i = 0; i < qualifying.size(); ++i)
    if (i != best && ctx.leq(qualifying[i], *res.tag) && !(qualifying[i] == *res.tag))
      res.tie = true;
  return res;
}

}  // namespace zigzag
