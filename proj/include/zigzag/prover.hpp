#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zigzag/script.hpp"

namespace zigzag {

enum class EqVerdict { Proved, RefutedByInvariant, Unknown };

struct CheckResult {
  EqVerdict verdict = EqVerdict::Unknown;
  std::optional<ProofScript> script;  // present when proved
  std::string note;
};

namespace detail {

// multiset of generator occurrences; preserved by every rewrite rule
inline void generator_profile(const NetSpec& ns, const Term& t,
                              std::map<std::string, int>& out) {
  for (const Factor& f : t.factors) {
    if (f.is_app())
      generator_profile(ns, f.app->arg, out);
    else if (ns.generator(f.atom))
      out[f.atom] += 1;
  }
}

struct Normalizer {
  const NetSpec& ns;
  const RegionCtx& ctx;
  int budget;
  std::vector<Step> steps;     // applied, in order
  std::vector<Step> inverses;  // inverse of each applied step

  bool try_apply(Term& t, const Step& st, const Step& inv) {
    if (budget <= 0) return false;
    try {
      StepResult r = apply_step(ns, ctx, t, st);
      t = std::move(r.term);
      Step recorded = st;
      recorded.requires_ = std::move(r.needed);
      steps.push_back(std::move(recorded));
      inverses.push_back(inv);
      --budget;
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  // first applicable simplification, scanning outer products before
  // application arguments
  bool pass(Term& t) { return walk(t, {}); }

  bool walk(Term& t, std::vector<int> path) {
    const Term& local = subterm_at(t, path);
    const std::vector<Factor>& fs = local.factors;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
      Pos pos{path, i};
      const Factor& f = fs[i];
      if (f.is_app() && f.starred) {
        Step st{"star-push", pos, {}, {}};
        if (try_apply(t, st, st)) return true;
      }
      if (f.is_app() && f.app->arg.is_one()) {
        Step st{"hom-unit", pos, {}, {}};
        Step inv{"hom-unit-ins", pos,
                 {{"sector", f.app->sector}, {"region", f.app->region.str()}}, {}};
        if (try_apply(t, st, inv)) return true;
      }
      if (i + 1 < static_cast<int>(fs.size())) {
        std::ostringstream a, b;
        serialize_factor(fs[i], a);
        serialize_factor(adjoint_factor(fs[i + 1]), b);
        if (a.str() == b.str() && is_unitary_factor(ns, fs[i])) {
          Step st{"unit-del", pos, {}, {}};
          Step inv{"unit-ins", pos, {{"factor", a.str()}, {"order", "fs"}}, {}};
          if (try_apply(t, st, inv)) return true;
        }
      }
      if (f.is_app() && !f.starred) {
        const auto* s = ns.sector(f.app->sector);
        if (s && (s->identity || s->localized)) {
          Step st{"loc-strip", pos, {}, {}};
          Step inv{"loc-wrap", pos,
                   {{"sector", f.app->sector},
                    {"region", f.app->region.str()},
                    {"count", std::to_string(f.app->arg.size())}},
                   {}};
          if (try_apply(t, st, inv)) return true;
        }
      }
      if (i + 1 < static_cast<int>(fs.size()) && !fs[i].is_app() && fs[i + 1].is_app() &&
          !fs[i + 1].starred) {
        Step st{"int", pos, {}, {}};
        if (try_apply(t, st, st)) return true;
      }
      if (i + 1 < static_cast<int>(fs.size()) && fs[i].is_app() && fs[i + 1].is_app() &&
          !fs[i].starred && !fs[i + 1].starred && fs[i].app->sector == fs[i + 1].app->sector &&
          fs[i].app->region == fs[i + 1].app->region) {
        Step st{"hom-merge", pos, {}, {}};
        Step inv{"hom-split", pos, {{"split", std::to_string(fs[i].app->arg.size())}}, {}};
        if (try_apply(t, st, inv)) return true;
      }
      if (i + 1 < static_cast<int>(fs.size())) {
        std::ostringstream a, b;
        serialize_factor(fs[i], a);
        serialize_factor(fs[i + 1], b);
        if (a.str() > b.str()) {
          Step st{"comm", pos, {}, {}};
          if (try_apply(t, st, st)) return true;
        }
      }
    }
    // descend into application arguments
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
      if (!fs[i].is_app()) continue;
      std::vector<int> sub = path;
      sub.push_back(i);
      if (walk(t, sub)) return true;
    }
    return false;
  }
};

}  // namespace detail

// Bounded bidirectional normalization modulo locality-justified commutation
// with a fixed symbol order. "Unknown" after budget exhaustion is an honest
// verdict; "proved" comes with a replayable script.
inline CheckResult check_equal(const NetSpec& ns, const RegionCtx& ctx, const Term& t1,
                               const Term& t2, int budget = 4096) {
  CheckResult res;
  try {
    validate_term(ns, ctx, t1, "lhs");
    validate_term(ns, ctx, t2, "rhs");
  } catch (const Error& e) {
    res.note = e.what();
    return res;
  }
  {
    std::map<std::string, int> p1, p2;
    detail::generator_profile(ns, t1, p1);
    detail::generator_profile(ns, t2, p2);
    if (p1 != p2) {
      res.verdict = EqVerdict::RefutedByInvariant;
      res.note = "generator multisets differ";
      return res;
    }
  }
  detail::Normalizer n1{ns, ctx, budget / 2, {}, {}};
  detail::Normalizer n2{ns, ctx, budget / 2, {}, {}};
  Term a = t1, b = t2;
  while (n1.pass(a)) {
  }
  while (n2.pass(b)) {
  }
  if (n1.budget <= 0 || n2.budget <= 0) {
    res.note = "budget exhausted";
    return res;
  }
  if (!term_equal(a, b)) {
    res.note = "normal forms differ";
    return res;
  }
  ProofScript sc;
  sc.lhs = t1;
  sc.rhs = t2;
  sc.steps = n1.steps;
  for (auto it = n2.inverses.rbegin(); it != n2.inverses.rend(); ++it) sc.steps.push_back(*it);
  // re-derive the side conditions of the inverted tail by replaying
  Term cur = t1;
  for (auto& st : sc.steps) {
    StepResult r = apply_step(ns, ctx, cur, st);
    st.requires_ = r.needed;
    cur = std::move(r.term);
  }
  if (!term_equal(cur, t2)) {
    res.note = "replay mismatch";
    return res;
  }
  res.verdict = EqVerdict::Proved;
  res.script = std::move(sc);
  return res;
}

}  // namespace zigzag
