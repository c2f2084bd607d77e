#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zigzag/cli.hpp"

using namespace zigzag;

int main(int argc, char** argv) {
  CLI::App app{"geometric poset axiom checker and sector-calculus verifier"};
  app.require_subcommand(1);

  CliConfig cfg;
  if (const char* env = std::getenv("ZIGZAG_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);
  std::string mode = "rational";
  app.add_option("--seed", cfg.seed, "random seed (env ZIGZAG_SEED)");
  app.add_option("--eps", cfg.eps, "tolerance in radians");
  app.add_option("--mode", mode, "rational | float")->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--jobs", cfg.jobs, "worker threads");

  std::string backend = "interval", out_path, svg_path;

  auto* check = app.add_subcommand("check-axioms", "run the axiom suites on random samples");
  std::size_t samples = 10000;
  check->add_option("--backend", backend, "interval | cone | cap | finite:<file>");
  check->add_option("--samples", samples, "sample count");
  check->add_option("--out", out_path, "report file (default stdout)");

  auto* zz = app.add_subcommand("build-zigzag", "connect two regions by a zig-zag");
  std::string from, to, within, wrt;
  zz->add_option("--backend", backend, "backend");
  zz->add_option("--from", from, "source region literal")->required();
  zz->add_option("--to", to, "target region literal")->required();
  zz->add_option("--in", within, "parent region (switches to the tagged construction)");
  zz->add_option("--for", wrt, "the region the tags refer to");
  zz->add_option("--out", out_path, "witness file");
  zz->add_option("--svg", svg_path, "figure file");

  auto* mdz = app.add_subcommand("build-mdz", "link two splittings by a mutually disjoint zig-zag");
  std::string parent, r1, s1, r2, s2;
  mdz->add_option("--backend", backend, "backend");
  mdz->add_option("--p", parent, "parent region")->required();
  mdz->add_option("--r1", r1)->required();
  mdz->add_option("--s1", s1)->required();
  mdz->add_option("--r2", r2)->required();
  mdz->add_option("--s2", s2)->required();
  mdz->add_option("--out", out_path, "witness file");
  mdz->add_option("--svg", svg_path, "figure file");

  auto* refl = app.add_subcommand("find-reflection", "find a splitting admitting a reflection");
  refl->add_option("--backend", backend, "backend");
  refl->add_option("--p", parent, "parent region")->required();
  refl->add_option("--out", out_path, "witness file");
  refl->add_option("--svg", svg_path, "figure file");

  auto* ver = app.add_subcommand("verify-identities", "replay the proof script corpus");
  std::string corpus_dir, dump_dir, spread_override;
  bool all = false, mutate = false;
  ver->add_flag("--all", all, "run the bundled corpus");
  ver->add_option("--corpus", corpus_dir, "directory of .netspec/.script files");
  ver->add_option("--dump", dump_dir, "write the corpus out to a directory");
  ver->add_flag("--mutate", mutate, "negate each side condition and expect rejection");
  ver->add_option("--spread", spread_override, "override the bounded-spread constant");
  ver->add_option("--out", out_path, "report file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  cfg.rational = mode == "rational";

  try {
    if (check->parsed()) {
      if (out_path.empty()) return cmd_check_axioms(backend, samples, cfg, std::cout);
      std::ofstream f(out_path);
      return cmd_check_axioms(backend, samples, cfg, f);
    }
    if (zz->parsed())
      return cmd_build_zigzag(backend, from, to, within, wrt, out_path, svg_path, cfg, std::cout);
    if (mdz->parsed())
      return cmd_build_mdz(backend, parent, r1, s1, r2, s2, out_path, svg_path, cfg, std::cout);
    if (refl->parsed())
      return cmd_find_reflection(backend, parent, out_path, svg_path, cfg, std::cout);
    if (ver->parsed()) {
      if (!all && corpus_dir.empty() && dump_dir.empty()) {
        std::cerr << "error: pass --all or --corpus <dir>\n";
        return 2;
      }
      if (out_path.empty())
        return cmd_verify_identities(all || corpus_dir.empty(), corpus_dir, dump_dir, mutate,
                                     spread_override, cfg, std::cout);
      std::ofstream f(out_path);
      return cmd_verify_identities(all || corpus_dir.empty(), corpus_dir, dump_dir, mutate,
                                   spread_override, cfg, f);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
