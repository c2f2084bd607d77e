#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <algorithm>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "zigzag/corpus_scripts.hpp"
#include "zigzag/engine.hpp"
#include "zigzag/region_io.hpp"
#include "zigzag/sampling.hpp"
#include "zigzag/svg.hpp"

namespace zigzag {

// chunked parallel map; results land in index order so aggregation is
// deterministic whatever the scheduling
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct AxiomLine {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string note;
  std::string counterexample;  // first by sample index
};

struct AxiomReport {
  std::string backend;
  std::string mode;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double eps = 0;
  std::vector<AxiomLine> lines;

  bool pass() const {
    for (const auto& l : lines)
      if (l.violations > 0) return false;
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    os << "report v1\n";
    os << "suite check-axioms\n";
    os << "backend " << backend << "\n";
    os << "mode " << mode << "\n";
    os << "samples " << samples << "\n";
    os << "seed " << seed << "\n";
    os << "eps " << eps << "\n";
    for (const auto& l : lines) {
      os << "axiom " << l.name << " checked " << l.checked << " violations " << l.violations;
      if (!l.note.empty()) os << " note " << l.note;
      os << "\n";
      if (!l.counterexample.empty())
        os << "counterexample " << l.name << " " << l.counterexample << "\n";
    }
    os << "result " << (pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
  }
};

namespace cli_detail {

template <class B, class Sampler>
inline AxiomReport axiom_suite(const B& b, const std::string& mode, Sampler sample,
                               std::size_t samples, std::uint64_t seed, double eps,
                               unsigned jobs, bool attempt_ga3) {
  AxiomReport rep;
  rep.backend = B::name();
  rep.mode = mode;
  rep.samples = samples;
  rep.seed = seed;
  rep.eps = eps;

  enum { kInv, kGA0, kGA1, kGA15, kGA2, kGA3, kCount };
  const char* names[kCount] = {"INV", "GA0", "GA1", "GA1.5", "GA2", "GA3"};
  std::vector<std::vector<std::size_t>> bad(kCount);
  std::vector<std::vector<std::string>> cex(kCount);
  for (int a = 0; a < kCount; ++a) {
    bad[a].assign(samples, 0);
    cex[a].assign(samples, "");
  }

  parallel_for(samples, jobs, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    auto p = sample(b, rng);
    auto q = sample(b, rng);
    auto fail = [&](int axiom, const std::string& note) {
      bad[axiom][i] = 1;
      if (cex[axiom][i].empty()) cex[axiom][i] = note;
    };
    // involution laws
    if (!b.equal(b.involution(b.involution(p)), p)) fail(kInv, b.str(p));
    if (b.leq(p, q) && !b.leq(b.involution(q), b.involution(p)))
      fail(kInv, b.str(p) + " " + b.str(q));
    if (!is_disjoint(b, p, b.involution(p))) fail(kInv, b.str(p));
    if (is_disjoint(b, p, q) != is_disjoint(b, q, p)) fail(kInv, b.str(p) + " " + b.str(q));
    // GA0: p and p' have no common lower bound
    if (b.cap_witness(p, b.involution(p))) fail(kGA0, b.str(p));
    // GA1: saturation
    if (!b.cap_witness(p, q) && !b.cap_witness(p, b.involution(q)))
      fail(kGA1, b.str(p) + " " + b.str(q));
    // GA1.5: a q-small q-indicator below p, validated
    try {
      auto pt = small_indicator(b, p, q);
      if (!b.leq(pt, p) || !is_q_indicator(b, pt, p, q) || !is_q_small(b, pt, q))
        fail(kGA15, b.str(pt));
    } catch (const Error& e) {
      fail(kGA15, e.what());
    }
    // GA2: splitting
    try {
      auto sp = b.split(p);
      if (!validate_splitting(b, sp).ok()) fail(kGA2, b.str(p));
    } catch (const Error& e) {
      fail(kGA2, e.what());
    }
    // GA3 for caps: attempted, not claimed
    if (attempt_ga3) {
      try {
        auto pt = small_indicator(b, p, q);
        auto ph = small_indicator(b, pt, q);
        auto zz = b.ga3_zigzag(pt, ph, p, q);
        ZigZagOpts<B> opts;
        opts.contained_in = p;
        opts.ga3_for = q;
        if (!validate_zigzag(b, zz, opts).ok()) fail(kGA3, b.str(p));
      } catch (const Error&) {
        bad[kGA3][i] = 1;  // counted but reported as attempted
      }
    }
  });

  for (int a = 0; a < kCount; ++a) {
    if (a == kGA3 && !attempt_ga3) continue;
    AxiomLine line;
    line.name = names[a];
    line.checked = samples;
    for (std::size_t i = 0; i < samples; ++i) {
      line.violations += bad[a][i];
      if (line.counterexample.empty() && !cex[a][i].empty()) line.counterexample = cex[a][i];
    }
    if (a == kGA3) {
      line.note = "attempted";
      line.counterexample.clear();
      // attempted failures are not axiom violations on this backend
      line.checked = samples;
      line.violations = 0;
    }
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

}  // namespace cli_detail

struct CliConfig {
  std::uint64_t seed = 7;
  double eps = 1e-9;
  bool rational = true;
  unsigned jobs = 1;
};

// exit code 0: pass, 1: violations found, 2: configuration errors
inline int cmd_check_axioms(const std::string& backend_arg, std::size_t samples,
                            const CliConfig& cfg, std::ostream& out) {
  Tolerance tol{cfg.eps};
  AxiomReport rep;
  try {
    if (backend_arg == "interval") {
      auto sampler = [](const auto& b, Rng& r) { return random_interval(b, r); };
      if (cfg.rational)
        rep = cli_detail::axiom_suite(IntervalBackend<Rat>(tol), "rational", sampler, samples,
                                      cfg.seed, cfg.eps, cfg.jobs, false);
      else
        rep = cli_detail::axiom_suite(IntervalBackend<double>(tol), "float", sampler, samples,
                                      cfg.seed, cfg.eps, cfg.jobs, false);
    } else if (backend_arg == "cone") {
      auto sampler = [](const auto& b, Rng& r) { return random_cone(b, r); };
      if (cfg.rational)
        rep = cli_detail::axiom_suite(ConeBackend<Rat>(tol), "rational", sampler, samples,
                                      cfg.seed, cfg.eps, cfg.jobs, false);
      else
        rep = cli_detail::axiom_suite(ConeBackend<double>(tol), "float", sampler, samples,
                                      cfg.seed, cfg.eps, cfg.jobs, false);
    } else if (backend_arg == "cap") {
      auto sampler = [](const auto& b, Rng& r) { return random_cap(b, r); };
      rep = cli_detail::axiom_suite(CapBackend(tol), "float", sampler, samples, cfg.seed, cfg.eps,
                                    cfg.jobs, true);
    } else if (backend_arg.rfind("finite:", 0) == 0) {
      std::ifstream in(backend_arg.substr(7));
      if (!in) {
        out << "error: cannot open poset file " << backend_arg.substr(7) << "\n";
        return 2;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      FinitePoset fp = FinitePoset::parse(ss.str());
      auto sampler = [](const FinitePoset& b, Rng& r) {
        return static_cast<int>(r.below(static_cast<std::uint64_t>(b.size())));
      };
      rep = cli_detail::axiom_suite(fp, "exact", sampler, samples, cfg.seed, cfg.eps, cfg.jobs,
                                    false);
    } else {
      out << "error: unknown backend " << backend_arg << "\n";
      return 2;
    }
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  out << rep.str();
  return rep.pass() ? 0 : 1;
}

namespace cli_detail {

template <class B>
int with_witness_output(const B& b, const std::string& witness, const std::string& svg,
                        const std::string& out_path, const std::string& svg_path,
                        std::ostream& out) {
  // every witness re-validates on reload before anything is written
  Report rep = revalidate_witness(b, witness);
  if (!rep.ok()) {
    out << "error: witness failed re-validation\n" << rep.str();
    return 1;
  }
  if (out_path.empty()) {
    out << witness;
  } else {
    std::ofstream f(out_path);
    f << witness;
  }
  if (!svg_path.empty()) {
    std::ofstream f(svg_path);
    f << svg;
  }
  return 0;
}

template <class B>
int build_zigzag_on(const B& b, const std::string& from, const std::string& to,
                    const std::string& within, const std::string& wrt,
                    const std::string& out_path, const std::string& svg_path, std::ostream& out) {
  auto p = RegionLiteral<B>::parse(b, from);
  auto q = RegionLiteral<B>::parse(b, to);
  ZigZag<typename B::element> zz;
  std::optional<typename B::element> contained, ga3_for;
  if (!within.empty()) {
    contained = RegionLiteral<B>::parse(b, within);
    ga3_for = RegionLiteral<B>::parse(b, wrt);
    zz = b.ga3_zigzag(p, q, *contained, *ga3_for);
  } else {
    zz = connect_or_search(b, p, q);
  }
  std::string w = witness_zigzag(b, zz, contained, ga3_for);
  return with_witness_output(b, w, svg_zigzag(b, zz), out_path, svg_path, out);
}

template <class B>
int build_mdz_on(const B& b, const std::string& parent, const std::string& r1s,
                 const std::string& s1s, const std::string& r2s, const std::string& s2s,
                 const std::string& out_path, const std::string& svg_path, std::ostream& out) {
  auto p = RegionLiteral<B>::parse(b, parent);
  Splitting<typename B::element> s1{p, RegionLiteral<B>::parse(b, r1s),
                                    RegionLiteral<B>::parse(b, s1s)};
  Splitting<typename B::element> s2{p, RegionLiteral<B>::parse(b, r2s),
                                    RegionLiteral<B>::parse(b, s2s)};
  auto res = mdz_between_splittings(b, p, s1, s2);
  std::string w = witness_mdz(b, res.mdz, res.swapped, std::optional<typename B::element>(p));
  return with_witness_output(b, w, svg_mdz(b, res.mdz), out_path, svg_path, out);
}

template <class B>
int find_reflection_on(const B& b, const std::string& parent, const std::string& out_path,
                       const std::string& svg_path, std::ostream& out) {
  auto p = RegionLiteral<B>::parse(b, parent);
  auto refl = find_reflection(b, p);
  std::string w = witness_reflection(b, refl);
  return with_witness_output(b, w, svg_reflection(b, refl), out_path, svg_path, out);
}

template <class Fn>
int dispatch_backend(const std::string& backend_arg, const CliConfig& cfg, std::ostream& out,
                     Fn fn) {
  Tolerance tol{cfg.eps};
  try {
    if (backend_arg == "interval") {
      if (cfg.rational) return fn(IntervalBackend<Rat>(tol));
      return fn(IntervalBackend<double>(tol));
    }
    if (backend_arg == "cone") {
      if (cfg.rational) return fn(ConeBackend<Rat>(tol));
      return fn(ConeBackend<double>(tol));
    }
    if (backend_arg == "cap") return fn(CapBackend(tol));
    if (backend_arg.rfind("finite:", 0) == 0) {
      std::ifstream in(backend_arg.substr(7));
      if (!in) {
        out << "error: cannot open poset file " << backend_arg.substr(7) << "\n";
        return 2;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      return fn(FinitePoset::parse(ss.str()));
    }
    out << "error: unknown backend " << backend_arg << "\n";
    return 2;
  } catch (const ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cli_detail

inline int cmd_build_zigzag(const std::string& backend, const std::string& from,
                            const std::string& to, const std::string& within,
                            const std::string& wrt, const std::string& out_path,
                            const std::string& svg_path, const CliConfig& cfg,
                            std::ostream& out) {
  return cli_detail::dispatch_backend(backend, cfg, out, [&](const auto& b) {
    return cli_detail::build_zigzag_on(b, from, to, within, wrt, out_path, svg_path, out);
  });
}

inline int cmd_build_mdz(const std::string& backend, const std::string& parent,
                         const std::string& r1, const std::string& s1, const std::string& r2,
                         const std::string& s2, const std::string& out_path,
                         const std::string& svg_path, const CliConfig& cfg, std::ostream& out) {
  return cli_detail::dispatch_backend(backend, cfg, out, [&](const auto& b) {
    return cli_detail::build_mdz_on(b, parent, r1, s1, r2, s2, out_path, svg_path, out);
  });
}

inline int cmd_find_reflection(const std::string& backend, const std::string& parent,
                               const std::string& out_path, const std::string& svg_path,
                               const CliConfig& cfg, std::ostream& out) {
  return cli_detail::dispatch_backend(backend, cfg, out, [&](const auto& b) {
    return cli_detail::find_reflection_on(b, parent, out_path, svg_path, out);
  });
}

// Run scripts against their nets; one line per script. With mutate = true
// every mutant must be rejected instead.
inline int run_corpus(const std::vector<NetSpec>& nets, const std::vector<ProofScript>& scripts,
                      bool mutate, unsigned jobs, std::ostream& out) {
  auto net_of = [&](const std::string& name) -> const NetSpec* {
    for (const auto& n : nets)
      if (n.name == name) return &n;
    return nullptr;
  };
  struct Row {
    std::string text;
    bool ok = false;
  };
  std::vector<Row> rows;
  if (!mutate) {
    rows.resize(scripts.size());
    parallel_for(scripts.size(), jobs, [&](std::size_t i) {
      const ProofScript& sc = scripts[i];
      const NetSpec* ns = net_of(sc.netspec_name);
      if (!ns) {
        rows[i] = {"script " + sc.name + " rejected (unknown netspec " + sc.netspec_name + ")",
                   false};
        return;
      }
      auto ctx = make_region_ctx(*ns);
      Verdict v = run_script(*ns, *ctx, sc);
      if (v.accepted)
        rows[i] = {"script " + sc.name + " accepted steps " + std::to_string(sc.steps.size()),
                   true};
      else
        rows[i] = {"script " + sc.name + " rejected at step " + std::to_string(v.failing_step) +
                       ": " + v.reason,
                   false};
    });
  } else {
    struct Job {
      const ProofScript* mutant;
      const NetSpec* ns;
    };
    std::vector<ProofScript> mutants;
    std::vector<const NetSpec*> mnets;
    for (const auto& sc : scripts) {
      const NetSpec* ns = net_of(sc.netspec_name);
      for (auto& m : mutate_script(sc)) {
        mutants.push_back(std::move(m));
        mnets.push_back(ns);
      }
    }
    rows.resize(mutants.size());
    parallel_for(mutants.size(), jobs, [&](std::size_t i) {
      if (!mnets[i]) {
        rows[i] = {"mutant " + mutants[i].name + " rejected (unknown netspec)", true};
        return;
      }
      auto ctx = make_region_ctx(*mnets[i]);
      Verdict v = run_script(*mnets[i], *ctx, mutants[i]);
      rows[i] = {"mutant " + mutants[i].name + (v.accepted ? " ACCEPTED (soundness hole)"
                                                           : " rejected"),
                 !v.accepted};
    });
  }
  out << "report v1\nsuite verify-identities" << (mutate ? "-mutation" : "") << "\n";
  out << "scripts " << rows.size() << "\n";
  bool all = true;
  for (const auto& r : rows) {
    out << r.text << "\n";
    all = all && r.ok;
  }
  out << "result " << (all ? "PASS" : "FAIL") << "\n";
  return all ? 0 : 1;
}

inline int cmd_verify_identities(bool use_bundled, const std::string& corpus_dir,
                                 const std::string& dump_dir, bool mutate,
                                 const std::string& spread_override, const CliConfig& cfg,
                                 std::ostream& out) {
  std::vector<NetSpec> nets;
  std::vector<ProofScript> scripts;
  try {
    if (use_bundled) {
      Corpus c = identity_corpus();
      nets = std::move(c.nets);
      scripts = std::move(c.scripts);
      if (!spread_override.empty()) {
        for (auto& n : nets)
          if (n.name == "cone-spread") n.spread = spread_override;
      }
    } else {
      // load <dir>/*.netspec and <dir>/*.script
      namespace fs = std::filesystem;
      if (!fs::exists(corpus_dir)) {
        out << "error: corpus directory " << corpus_dir << " does not exist\n";
        return 2;
      }
      std::vector<fs::path> paths;
      for (const auto& e : fs::directory_iterator(corpus_dir)) paths.push_back(e.path());
      std::sort(paths.begin(), paths.end());
      for (const auto& p : paths) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        if (p.extension() == ".netspec") nets.push_back(NetSpec::parse(ss.str()));
        if (p.extension() == ".script") scripts.push_back(ProofScript::parse(ss.str()));
      }
    }
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  if (!dump_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(dump_dir);
    for (const auto& n : nets) {
      std::ofstream f(fs::path(dump_dir) / (n.name + ".netspec"));
      f << n.serialize();
    }
    for (const auto& sc : scripts) {
      std::ofstream f(fs::path(dump_dir) / (sc.name + ".script"));
      f << sc.serialize();
    }
  }
  if (scripts.empty()) {
    out << "report v1\nsuite verify-identities\nscripts 0\nresult PASS\n";
    return 0;
  }
  return run_corpus(nets, scripts, mutate, cfg.jobs, out);
}

}  // namespace zigzag
