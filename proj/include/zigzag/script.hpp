#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zigzag/rules.hpp"

namespace zigzag {

struct Step {
  std::string rule;
  Pos pos;
  std::map<std::string, std::string> bindings;
  std::vector<Fact> requires_;

  std::string str() const {
    std::ostringstream os;
    os << "step " << rule << " at " << pos.str();
    if (!bindings.empty()) {
      os << " with ";
      bool first = true;
      for (const auto& [k, v] : bindings) {
        if (!first) os << ",";
        std::string enc = v;
        for (char& c : enc)
          if (c == ' ') c = '~';  // binding values never contain '~'
        os << k << "=" << enc;
        first = false;
      }
    }
    os << " ;";
    for (const auto& f : requires_) os << " requires " << f.str();
    return os.str();
  }
};

struct ProofScript {
  std::string name = "script";
  std::string netspec_name = "net";
  Term lhs, rhs;
  std::vector<Step> steps;

  std::string serialize() const {
    std::ostringstream os;
    os << "script v1\n";
    os << "name " << name << "\n";
    os << "netspec " << netspec_name << "\n";
    os << "lhs ";
    serialize_term(lhs, os);
    os << "\nrhs ";
    serialize_term(rhs, os);
    os << "\n";
    for (const auto& s : steps) os << s.str() << "\n";
    return os.str();
  }

  static ProofScript parse(const std::string& text) {
    ProofScript sc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::string kw;
      if (!(ls >> kw) || kw[0] == '#') continue;
      auto rest_of = [&]() {
        std::string r;
        std::getline(ls, r);
        while (!r.empty() && r.front() == ' ') r.erase(r.begin());
        return r;
      };
      if (kw == "script") continue;
      if (kw == "name")
        ls >> sc.name;
      else if (kw == "netspec")
        ls >> sc.netspec_name;
      else if (kw == "lhs")
        sc.lhs = parse_term(rest_of());
      else if (kw == "rhs")
        sc.rhs = parse_term(rest_of());
      else if (kw == "step") {
        Step st;
        std::string atkw;
        if (!(ls >> st.rule >> atkw) || atkw != "at")
          throw ParseError("script line " + std::to_string(lineno) + ": expected step <rule> at <pos>");
        std::string pos;
        ls >> pos;
        st.pos = Pos::parse(pos);
        std::string tok;
        if (ls >> tok && tok == "with") {
          std::string blob;
          ls >> blob;
          std::size_t start = 0;
          for (std::size_t i = 0; i <= blob.size(); ++i)
            if (i == blob.size() || blob[i] == ',') {
              std::string kv = blob.substr(start, i - start);
              auto eq = kv.find('=');
              if (eq == std::string::npos)
                throw ParseError("script line " + std::to_string(lineno) + ": bad binding " + kv);
              std::string val = kv.substr(eq + 1);
              for (char& c : val)
                if (c == '~') c = ' ';
              st.bindings[kv.substr(0, eq)] = val;
              start = i + 1;
            }
          ls >> tok;
        }
        if (tok != ";")
          throw ParseError("script line " + std::to_string(lineno) + ": expected ';'");
        while (ls >> tok) {
          if (tok != "requires")
            throw ParseError("script line " + std::to_string(lineno) + ": expected requires");
          std::string fact;
          ls >> fact;
          st.requires_.push_back(Fact::parse(fact));
        }
        sc.steps.push_back(std::move(st));
      } else {
        throw ParseError("script line " + std::to_string(lineno) + ": unknown keyword " + kw);
      }
    }
    return sc;
  }
};

// thrown by rule application when the instance does not fit the term
struct RuleFailure : Error {
  explicit RuleFailure(const std::string& what) : Error(what) {}
};

struct StepResult {
  Term term;
  std::vector<Fact> needed;
};

namespace detail {

inline const std::string& binding(const Step& st, const std::string& key) {
  auto it = st.bindings.find(key);
  if (it == st.bindings.end()) throw RuleFailure("missing binding '" + key + "'");
  return it->second;
}

inline void need_range(const std::vector<Factor>& fs, int at, int count) {
  if (at < 0 || count < 0 || static_cast<std::size_t>(at + count) > fs.size())
    throw RuleFailure("position out of range");
}

}  // namespace detail

// Apply one rewrite step; returns the new term together with the side
// conditions this instance depends on.
inline StepResult apply_step(const NetSpec& ns, const RegionCtx& ctx, const Term& whole,
                             const Step& st) {
  const Term& local = subterm_at(whole, st.pos.path);
  std::vector<Factor> fs = local.factors;
  const int at = st.pos.at;
  std::vector<Fact> needed;

  auto require_leq = [&](const std::vector<RegionTag>& tags, const RegionTag& bound,
                         const std::string& what) {
    auto t = tag_below(ctx, tags, bound);
    if (!t) throw RuleFailure(what + ": no membership tag below " + bound.str());
    needed.push_back(Fact::leq(*t, bound));
  };
  auto require_disjoint = [&](const std::vector<RegionTag>& tags, const RegionTag& other,
                              const std::string& what) {
    auto t = tag_disjoint_from(ctx, tags, other);
    if (!t) throw RuleFailure(what + ": no membership tag disjoint from " + other.str());
    needed.push_back(Fact::disjoint(*t, other));
  };

  if (st.rule == "iso") {
    detail::need_range(fs, at, 1);
    Factor& f = fs[at];
    if (!f.is_app()) throw RuleFailure("iso: factor is not an application");
    RegionTag to = RegionTag::parse(detail::binding(st, "to"));
    for (const Factor& g : f.app->arg.factors)
      require_leq(mem_tags(ns, ctx, g), to, "iso");
    f.app = std::make_shared<AppNode>(AppNode{f.app->sector, to, f.app->arg});
  } else if (st.rule == "loc-strip") {
    detail::need_range(fs, at, 1);
    Factor f = fs[at];
    if (!f.is_app()) throw RuleFailure("loc-strip: factor is not an application");
    const auto* s = ns.sector(f.app->sector);
    if (!s) throw RuleFailure("loc-strip: unknown sector");
    if (!s->identity) {
      if (!s->localized) throw RuleFailure("loc-strip: sector has no localization");
      RegionTag loc{*s->localized, false, 0};
      for (const Factor& g : f.app->arg.factors)
        require_disjoint(mem_tags(ns, ctx, g), loc, "loc-strip");
    }
    Term arg = f.starred ? adjoint(f.app->arg) : f.app->arg;
    fs.erase(fs.begin() + at);
    fs.insert(fs.begin() + at, arg.factors.begin(), arg.factors.end());
  } else if (st.rule == "loc-wrap") {
    const std::string& sector = detail::binding(st, "sector");
    RegionTag region = RegionTag::parse(detail::binding(st, "region"));
    int count = std::stoi(detail::binding(st, "count"));
    detail::need_range(fs, at, count);
    const auto* s = ns.sector(sector);
    if (!s) throw RuleFailure("loc-wrap: unknown sector");
    Term arg;
    arg.factors.assign(fs.begin() + at, fs.begin() + at + count);
    for (const Factor& g : arg.factors) {
      if (!s->identity) {
        if (!s->localized) throw RuleFailure("loc-wrap: sector has no localization");
        require_disjoint(mem_tags(ns, ctx, g), RegionTag{*s->localized, false, 0}, "loc-wrap");
      }
      require_leq(mem_tags(ns, ctx, g), region, "loc-wrap");
    }
    fs.erase(fs.begin() + at, fs.begin() + at + count);
    fs.insert(fs.begin() + at, make_app(sector, region, std::move(arg)));
  } else if (st.rule == "int") {
    detail::need_range(fs, at, 2);
    Factor &f = fs[at], &g = fs[at + 1];
    auto slide = [&](Factor& sym, Factor& app, bool sym_first) {
      if (!app.is_app() || app.starred) throw RuleFailure("int: expected an unstarred application");
      if (sym.is_app()) throw RuleFailure("int: expected an intertwiner atom");
      auto d = inter_data(ns, sym.atom);
      if (!d) throw RuleFailure("int: " + sym.atom + " is not an intertwiner");
      needed.push_back(Fact::intertwines(sym.atom, d->src, d->tgt));
      // u: src -> tgt gives u pi_src(x) = pi_tgt(x) u, i.e. moving the
      // intertwiner across the application toggles the sector
      std::string in = sym.starred ? d->tgt : d->src;
      std::string out = sym.starred ? d->src : d->tgt;
      // when the symbol comes first, the application must carry the input
      // sector; sliding it to the front raises it to the output sector
      const std::string& want = sym_first ? in : out;
      const std::string& next = sym_first ? out : in;
      if (app.app->sector != want)
        throw RuleFailure("int: application sector " + app.app->sector + " does not match " + want);
      app.app = std::make_shared<AppNode>(AppNode{next, app.app->region, app.app->arg});
    };
    if (!f.is_app() && g.is_app()) {
      slide(f, g, true);
      std::swap(fs[at], fs[at + 1]);
    } else if (f.is_app() && !g.is_app()) {
      slide(g, f, false);
      std::swap(fs[at], fs[at + 1]);
    } else {
      throw RuleFailure("int: expected an intertwiner next to an application");
    }
  } else if (st.rule == "unit-del") {
    detail::need_range(fs, at, 2);
    std::ostringstream a, b;
    serialize_factor(fs[at], a);
    serialize_factor(adjoint_factor(fs[at + 1]), b);
    if (a.str() != b.str()) throw RuleFailure("unit-del: factors are not adjoint to each other");
    if (!is_unitary_factor(ns, fs[at])) throw RuleFailure("unit-del: factor is not unitary");
    collect_unitary_facts(ns, fs[at], needed);
    fs.erase(fs.begin() + at, fs.begin() + at + 2);
  } else if (st.rule == "unit-ins") {
    detail::TokenStream ts{detail::binding(st, "factor"), 0};
    Factor f = detail::parse_factor(ts);
    if (!ts.done()) throw RuleFailure("unit-ins: trailing input in factor binding");
    if (!is_unitary_factor(ns, f)) throw RuleFailure("unit-ins: factor is not unitary");
    collect_unitary_facts(ns, f, needed);
    if (f.is_app())
      for (const Factor& g : f.app->arg.factors)
        require_leq(mem_tags(ns, ctx, g), f.app->region, "unit-ins");
    detail::need_range(fs, at, 0);
    if (static_cast<std::size_t>(at) > fs.size()) throw RuleFailure("unit-ins: bad position");
    bool star_first = detail::binding(st, "order") == "sf";
    Factor first = star_first ? adjoint_factor(f) : f;
    Factor second = star_first ? f : adjoint_factor(f);
    fs.insert(fs.begin() + at, {first, second});
  } else if (st.rule == "comm") {
    detail::need_range(fs, at, 2);
    const Factor &f = fs[at], &g = fs[at + 1];
    auto try_pair = [&](const Factor& x, const Factor& y) -> bool {
      auto bases = base_tags(ns, ctx, x);
      for (const auto& bt : bases) {
        if (auto m = tag_disjoint_from(ctx, mem_tags(ns, ctx, y), bt)) {
          needed.push_back(Fact::disjoint(*m, bt));
          return true;
        }
      }
      return false;
    };
    if (!try_pair(f, g) && !try_pair(g, f))
      throw RuleFailure("comm: factors have no commuting witness");
    std::swap(fs[at], fs[at + 1]);
  } else if (st.rule == "hom-merge") {
    detail::need_range(fs, at, 2);
    const Factor &f = fs[at], &g = fs[at + 1];
    if (!f.is_app() || !g.is_app() || f.starred || g.starred ||
        f.app->sector != g.app->sector || !(f.app->region == g.app->region))
      throw RuleFailure("hom-merge: expected matching unstarred applications");
    Term arg = f.app->arg;
    arg.factors.insert(arg.factors.end(), g.app->arg.factors.begin(), g.app->arg.factors.end());
    Factor merged = make_app(f.app->sector, f.app->region, std::move(arg));
    fs.erase(fs.begin() + at, fs.begin() + at + 2);
    fs.insert(fs.begin() + at, merged);
  } else if (st.rule == "hom-split") {
    detail::need_range(fs, at, 1);
    const Factor f = fs[at];
    if (!f.is_app() || f.starred) throw RuleFailure("hom-split: expected an unstarred application");
    int k = std::stoi(detail::binding(st, "split"));
    if (k < 0 || static_cast<std::size_t>(k) > f.app->arg.size())
      throw RuleFailure("hom-split: split point out of range");
    Term t1, t2;
    t1.factors.assign(f.app->arg.factors.begin(), f.app->arg.factors.begin() + k);
    t2.factors.assign(f.app->arg.factors.begin() + k, f.app->arg.factors.end());
    Factor f1 = make_app(f.app->sector, f.app->region, std::move(t1));
    Factor f2 = make_app(f.app->sector, f.app->region, std::move(t2));
    fs.erase(fs.begin() + at);
    fs.insert(fs.begin() + at, {f1, f2});
  } else if (st.rule == "hom-unit") {
    detail::need_range(fs, at, 1);
    const Factor& f = fs[at];
    if (!f.is_app() || !f.app->arg.is_one())
      throw RuleFailure("hom-unit: expected an application of the empty word");
    fs.erase(fs.begin() + at);
  } else if (st.rule == "hom-unit-ins") {
    const std::string& sector = detail::binding(st, "sector");
    RegionTag region = RegionTag::parse(detail::binding(st, "region"));
    if (!ns.sector(sector)) throw RuleFailure("hom-unit-ins: unknown sector");
    if (static_cast<std::size_t>(at) > fs.size()) throw RuleFailure("hom-unit-ins: bad position");
    fs.insert(fs.begin() + at, make_app(sector, region, Term{}));
  } else if (st.rule == "star-push") {
    detail::need_range(fs, at, 1);
    Factor& f = fs[at];
    if (!f.is_app()) throw RuleFailure("star-push: factor is not an application");
    f.app = std::make_shared<AppNode>(AppNode{f.app->sector, f.app->region, adjoint(f.app->arg)});
    f.starred = !f.starred;
  } else if (st.rule == "def-fold" || st.rule == "def-unfold") {
    const std::string& name = detail::binding(st, "def");
    const auto* d = ns.definition(name);
    if (!d) throw RuleFailure("def: unknown definition " + name);
    auto data = compose_word(ns, d->word);
    if (!data) throw RuleFailure("def: word of " + name + " does not compose");
    needed.push_back(Fact::intertwines(name, data->src, data->tgt));
    const auto* ssrc = ns.sector(data->src);
    const auto* stgt = ns.sector(data->tgt);
    if (!ssrc || !stgt || !ssrc->localized || !stgt->localized)
      throw RuleFailure("def: endpoints of " + name + " are not localized sectors");
    for (const auto& r : d->regions) {
      needed.push_back(Fact::leq(RegionTag{*ssrc->localized, false, 0}, RegionTag{r, false, 0}));
      needed.push_back(Fact::leq(RegionTag{*stgt->localized, false, 0}, RegionTag{r, false, 0}));
    }
    for (const auto& f : needed)
      if (!eval_fact(ns, ctx, f)) throw RuleFailure("def: condition fails: " + f.str());
    if (st.rule == "def-fold") {
      int count = static_cast<int>(d->word.size());
      detail::need_range(fs, at, count);
      Term window;
      window.factors.assign(fs.begin() + at, fs.begin() + at + count);
      bool starred;
      if (term_equal(window, d->word))
        starred = false;
      else if (term_equal(window, adjoint(d->word)))
        starred = true;
      else
        throw RuleFailure("def-fold: window differs from the word");
      fs.erase(fs.begin() + at, fs.begin() + at + count);
      fs.insert(fs.begin() + at, make_atom(name, starred));
    } else {
      detail::need_range(fs, at, 1);
      Factor f = fs[at];
      if (f.is_app() || f.atom != name) throw RuleFailure("def-unfold: factor is not " + name);
      Term body = f.starred ? adjoint(d->word) : d->word;
      fs.erase(fs.begin() + at);
      fs.insert(fs.begin() + at, body.factors.begin(), body.factors.end());
    }
  } else {
    throw RuleFailure("unknown rule: " + st.rule);
  }

  // every needed poset fact must actually hold
  for (const auto& f : needed)
    if (!eval_fact(ns, ctx, f)) throw RuleFailure("side condition fails: " + f.str());

  Term local_out;
  local_out.factors = std::move(fs);
  return StepResult{replace_at(whole, st.pos.path, 0, local_out), std::move(needed)};
}

struct Verdict {
  bool accepted = false;
  int failing_step = -1;  // -1: none; steps are 1-based in messages
  std::string reason;
};

// Replay a script: every step must apply, every declared side condition must
// hold, declared conditions must cover the needed ones, and the final term
// must match rhs byte for byte.
inline Verdict run_script(const NetSpec& ns, const RegionCtx& ctx, const ProofScript& sc) {
  Verdict v;
  try {
    validate_term(ns, ctx, sc.lhs, "lhs");
    validate_term(ns, ctx, sc.rhs, "rhs");
  } catch (const Error& e) {
    v.reason = e.what();
    return v;
  }
  Term cur = sc.lhs;
  for (std::size_t i = 0; i < sc.steps.size(); ++i) {
    const Step& st = sc.steps[i];
    for (const Fact& f : st.requires_)
      if (!eval_fact(ns, ctx, f)) {
        v.failing_step = static_cast<int>(i) + 1;
        v.reason = "declared condition does not hold: " + f.str();
        return v;
      }
    StepResult res;
    try {
      res = apply_step(ns, ctx, cur, st);
    } catch (const Error& e) {
      v.failing_step = static_cast<int>(i) + 1;
      v.reason = e.what();
      return v;
    }
    std::set<std::string> declared;
    for (const Fact& f : st.requires_) declared.insert(f.str());
    for (const Fact& f : res.needed)
      if (!declared.count(f.str())) {
        v.failing_step = static_cast<int>(i) + 1;
        v.reason = "undeclared side condition: " + f.str();
        return v;
      }
    cur = std::move(res.term);
  }
  if (!term_equal(cur, sc.rhs)) {
    v.failing_step = static_cast<int>(sc.steps.size());
    v.reason = "final term differs: got " + term_str(cur);
    return v;
  }
  v.accepted = true;
  return v;
}

// the mutation harness: one mutant per declared side condition, with that
// condition's polarity flipped
inline std::vector<ProofScript> mutate_script(const ProofScript& sc) {
  std::vector<ProofScript> out;
  for (std::size_t i = 0; i < sc.steps.size(); ++i)
    for (std::size_t j = 0; j < sc.steps[i].requires_.size(); ++j) {
      ProofScript m = sc;
      m.name = sc.name + ".mut" + std::to_string(out.size());
      m.steps[i].requires_[j].negated = !m.steps[i].requires_[j].negated;
      out.push_back(std::move(m));
    }
  return out;
}

}  // namespace zigzag
