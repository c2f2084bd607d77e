#pragma once

#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "zigzag/engine.hpp"
#include "zigzag/prover.hpp"
#include "zigzag/script.hpp"

namespace zigzag {

// Applies rules while recording them, so corpus derivations are verified at
// construction time and capture exactly the side conditions they need.
class ScriptBuilder {
 public:
  ScriptBuilder(const NetSpec& ns, const RegionCtx& ctx, Term lhs)
      : ns_(ns), ctx_(ctx), lhs_(lhs), cur_(std::move(lhs)) {}

  const Term& term() const { return cur_; }

  void apply(const std::string& rule, Pos pos,
             std::map<std::string, std::string> bindings = {}) {
    Step st{rule, std::move(pos), std::move(bindings), {}};
    StepResult r;
    try {
      r = apply_step(ns_, ctx_, cur_, st);
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + "\n  while building step " +
                  std::to_string(steps_.size() + 1) + " (" + st.rule + " at " + st.pos.str() +
                  ")\n  term: " + term_str(cur_));
    }
    st.requires_ = std::move(r.needed);
    cur_ = std::move(r.term);
    steps_.push_back(std::move(st));
  }

  // shorthands; `path` addresses the product, `at` the factor
  void iso(std::vector<int> path, int at, const std::string& to) {
    apply("iso", Pos{std::move(path), at}, {{"to", to}});
  }
  void strip(std::vector<int> path, int at) { apply("loc-strip", Pos{std::move(path), at}); }
  void wrap(std::vector<int> path, int at, const std::string& sector, const std::string& region,
            int count = 1) {
    apply("loc-wrap", Pos{std::move(path), at},
          {{"sector", sector}, {"region", region}, {"count", std::to_string(count)}});
  }
  void slide(std::vector<int> path, int at) { apply("int", Pos{std::move(path), at}); }
  void cancel(std::vector<int> path, int at) { apply("unit-del", Pos{std::move(path), at}); }
  void insert(std::vector<int> path, int at, const std::string& factor, bool star_first = false) {
    apply("unit-ins", Pos{std::move(path), at},
          {{"factor", factor}, {"order", star_first ? "sf" : "fs"}});
  }
  void merge(std::vector<int> path, int at) { apply("hom-merge", Pos{std::move(path), at}); }
  void split(std::vector<int> path, int at, int k) {
    apply("hom-split", Pos{std::move(path), at}, {{"split", std::to_string(k)}});
  }
  void unit(std::vector<int> path, int at) { apply("hom-unit", Pos{std::move(path), at}); }
  void star(std::vector<int> path, int at) { apply("star-push", Pos{std::move(path), at}); }
  void fold(std::vector<int> path, int at, const std::string& def) {
    apply("def-fold", Pos{std::move(path), at}, {{"def", def}});
  }
  void unfold(std::vector<int> path, int at, const std::string& def) {
    apply("def-unfold", Pos{std::move(path), at}, {{"def", def}});
  }
  void comm(std::vector<int> path, int at) { apply("comm", Pos{std::move(path), at}); }

  ProofScript finish(const std::string& name, const std::string& netname, const Term& rhs) const {
    if (!term_equal(cur_, rhs))
      throw Error("corpus derivation '" + name + "' ended at\n  " + term_str(cur_) +
                  "\n  instead of\n  " + term_str(rhs));
    ProofScript sc;
    sc.name = name;
    sc.netspec_name = netname;
    sc.lhs = lhs_;
    sc.rhs = rhs;
    sc.steps = steps_;
    return sc;
  }

 private:
  const NetSpec& ns_;
  const RegionCtx& ctx_;
  Term lhs_;
  Term cur_;
  std::vector<Step> steps_;
};

struct Corpus {
  std::vector<NetSpec> nets;
  std::vector<ProofScript> scripts;

  const NetSpec& net(const std::string& name) const {
    for (const auto& n : nets)
      if (n.name == name) return n;
    throw Error("corpus: unknown netspec " + name);
  }
};

namespace corpus_detail {

inline std::string cone_literal(const ConeBackend<Rat>& cb, const Cone<Rat>& c) {
  Vec2 e = cb.effective_apex(c);
  std::ostringstream os;
  os.precision(17);
  os << "cone(" << e.x << "," << e.y << "," << degrees_to_string<Rat>(c.dir.start) << ","
     << degrees_to_string<Rat>(c.dir.end) << ")";
  return os.str();
}

inline std::string cap_literal(const Cap& c) {
  std::ostringstream os;
  os.precision(17);
  os << "cap(" << c.center.x << "," << c.center.y << "," << c.center.z << ","
     << c.radius * 180.0 / kPi << ")";
  return os.str();
}

inline Term tp(const std::string& s) { return parse_term(s); }

inline Term concat(std::initializer_list<Term> parts) {
  Term out;
  for (const Term& p : parts)
    out.factors.insert(out.factors.end(), p.factors.begin(), p.factors.end());
  return out;
}

// ---------------------------------------------------------------------------
// chain generators
// ---------------------------------------------------------------------------

// One top move of a braiding walk: with the second leg fixed, exchange the
// first leg's localization inside w. Layout at root:
//   [ .., (ap S P (prod uA)) @at, (* uA) @at+1, .. ]  ->  uB version
inline void beta_top_move(ScriptBuilder& sb, int at, const std::string& uB,
                          const std::string& eAB, const std::string& w) {
  sb.insert({at}, 0, uB);      // arg becomes: uB (* uB) uA
  sb.split({}, at, 1);         // S[uB] . S[(* uB) uA]
  sb.fold({at + 1}, 0, eAB);   // S[eAB]
  sb.iso({}, at + 1, w);
  sb.strip({}, at + 1);        // eAB
  sb.unfold({}, at + 1, eAB);  // (* uB) uA
  sb.cancel({}, at + 2);       // uA (* uA)
}

// One bottom move: exchange the second leg's localization inside w. Layout:
//   [ vA @at, (ap SA P (prod u)) @at+1, (* u) @at+2, (* (ap PI P (prod vA))) @at+3 ]
inline void beta_bottom_move(ScriptBuilder& sb, int at, const std::string& vB,
                             const std::string& fAB, const std::string& w) {
  sb.insert({}, at, vB);       // vB (* vB) vA ...
  sb.fold({}, at + 1, fAB);    // vB fAB SA[u] (* u) (* PI[vA])
  sb.slide({}, at + 1);        // vB SB[u] fAB (* u) (* PI[vA])
  sb.star({}, at + 4);         // ... PI[(* vA)]
  sb.insert({at + 4}, 1, vB);  // PI[(* vA) vB (* vB)]
  sb.fold({at + 4}, 0, fAB);   // PI[(* fAB) (* vB)]
  sb.split({}, at + 4, 1);     // PI[(* fAB)] PI[(* vB)]
  sb.slide({}, at + 3);        // (* u) into the left one, lowering its sector
  sb.iso({}, at + 3, w);
  sb.strip({}, at + 3);        // (* fAB)
  sb.cancel({}, at + 2);       // fAB (* fAB)
  sb.star({}, at + 3);         // PI[(* vB)] -> (* PI[vB])
}

// Exchange nested applications through a reflection:
//   (ap OUT P (prod (ap IN P A))) @at  ->  (ap IN P (prod (ap OUT P A)))
// uH : H -> OUT with H localized behind the inner region; the inner sector
// carries everything through wReg.
inline void nested_swap(ScriptBuilder& sb, int at, const std::string& uH,
                        const std::string& helperSector, const std::string& innerSector,
                        const std::string& pReg, const std::string& wReg, int arg_count = 1) {
  sb.insert({}, at, uH);                                // uH (* uH) OUT[IN[A]]
  sb.slide({}, at + 1);                                 // uH H[IN[A]] (* uH)
  sb.strip({}, at + 1);                                 // uH IN[A] (* uH)
  sb.wrap({at + 1}, 0, helperSector, pReg, arg_count);  // IN[H[A]]
  sb.wrap({}, at, innerSector, wReg);                   // IN_W[uH] ...
  sb.wrap({}, at + 2, innerSector, wReg);               // ... IN_W[(* uH)]
  sb.iso({}, at + 1, wReg);
  sb.merge({}, at);
  sb.merge({}, at);                                      // IN_W[uH H[A] (* uH)]
  sb.slide({at}, 0);                                     // IN_W[OUT[A] uH (* uH)]
  sb.cancel({at}, 1);
  sb.iso({}, at, pReg);                                  // IN_P[OUT[A]]
}

enum class FusionCase { AcrossOne, WithinTwo, Mixed };

struct FusionSwapNames {
  std::string uA, vA, uB, vB;  // localization unitaries
  std::string dAB, eAB;        // (* vB) vA and (* uB) uA
  std::string PBapp;           // serialized factor (ap PB p (prod vB))
  std::string p;               // ambient region
  std::string R;               // common upper region for the middle phase
  std::string sideRegion;      // q'-side region for the commuting phase (case 1)
  std::string q2;              // region of the middle application (cases 2-3)
};

// The well-definedness exchange between two indicator choices, acting on the
// five-part window [uA, PA_p[vA], MID.., (* PA_p[vA]), (* uA)] at root `at`.
// AcrossOne: MID is a run of `mid_count` bare factors on the q'-side.
// WithinTwo: MID = (ap PA X (prod (ap SA X G))); the inner sector flips.
// Mixed: as WithinTwo, but the flipped inner application strips away.
inline void fusion_swap(ScriptBuilder& sb, int at, const FusionSwapNames& n, FusionCase mode,
                        int mid_count = 1, bool mid_starred = false) {
  if (mid_starred) {
    sb.star({}, at + 2);
    sb.star({at + 2}, 0);
  }
  sb.insert({}, at, n.uB);
  sb.insert({}, at + 1, n.PBapp);
  sb.star({}, at + 2);
  sb.slide({}, at + 2);
  sb.slide({}, at + 3);
  sb.merge({}, at + 4);
  sb.fold({at + 4}, 0, n.dAB);
  sb.fold({}, at + 2, n.eAB);
  // state: [uB, PB_p[vB], eAB, PA_p[dAB], MID.., (* PA_p[vA]), (* uA)]
  int tail;
  if (mode == FusionCase::AcrossOne) {
    tail = at + 4 + mid_count;
    sb.iso({}, at + 3, n.sideRegion);
    for (int k = 0; k < mid_count; ++k) sb.comm({}, at + 3 + k);
    for (int k = 0; k < mid_count; ++k) sb.comm({}, at + 2 + k);
    // [uB, PB_p[vB], MID.., eAB, PA_side[dAB], tail..]
    sb.iso({}, tail - 1, n.p);
  } else if (mode == FusionCase::WithinTwo) {
    tail = at + 5;
    sb.iso({}, at + 3, n.R);
    sb.iso({}, at + 4, n.R);
    sb.merge({}, at + 3);       // PA_R[dAB SA_X[G]]
    sb.slide({at + 3}, 0);      // PA_R[SB_X[G] dAB]
    sb.split({}, at + 3, 1);    // PA_R[SB_X[G]] PA_R[dAB]
    sb.iso({}, at + 3, n.q2);   // PA_X[SB_X[G]]
    sb.slide({}, at + 2);       // PB_X[SB_X[G]] eAB
    sb.iso({}, at + 4, n.p);
  } else {
    sb.iso({}, at + 3, n.R);
    sb.iso({}, at + 4, n.R);
    sb.merge({}, at + 3);             // PA_R[dAB SA_X[G]]
    sb.slide({at + 3}, 0);            // PA_R[SB_X[G] dAB]
    sb.strip({at + 3}, 0);            // PA_R[G dAB]
    sb.split({}, at + 3, mid_count);  // PA_R[G..] PA_R[dAB]
    sb.slide({}, at + 2);             // PB_R[G..] eAB PA_R[dAB]
    sb.iso({}, at + 2, n.q2);
    sb.strip({}, at + 2);             // G.. eAB PA_R[dAB]
    tail = at + 2 + mid_count + 2;
    sb.iso({}, tail - 1, n.p);
  }
  // unwind: [ .., eAB @tail-2, PA_p[dAB] @tail-1?.. ] with the starred tail
  sb.unfold({}, tail - 2, n.eAB);  // (* uB) uA
  sb.unfold({tail}, 0, n.dAB);     // PA_p[(* vB) vA]
  sb.split({}, tail, 1);           // PA_p[(* vB)] PA_p[vA]
  sb.cancel({}, tail + 1);         // PA_p[vA] (* PA_p[vA])
  sb.slide({}, tail);              // (* uA) Pi_p[(* vB)]
  sb.cancel({}, tail - 1);         // uA (* uA)
  sb.slide({}, tail - 2);          // PB_p[(* vB)] (* uB)
  sb.star({}, tail - 2);           // (* PB_p[vB])
  if (mid_starred) {
    sb.star({}, at + 2);
    sb.star({at + 2}, 0);
  }
}

}  // namespace corpus_detail

Corpus identity_corpus();

}  // namespace zigzag
