#include <catch2/catch_amalgamated.hpp>

#include "zigzag/corpus_scripts.hpp"

using namespace zigzag;

TEST_CASE("every bundled script is accepted") {
  Corpus corpus = identity_corpus();
  CHECK(corpus.scripts.size() >= 4);
  for (const auto& sc : corpus.scripts) {
    const NetSpec& ns = corpus.net(sc.netspec_name);
    auto ctx = make_region_ctx(ns);
    Verdict v = run_script(ns, *ctx, sc);
    INFO(sc.name << ": step " << v.failing_step << ": " << v.reason);
    CHECK(v.accepted);
  }
}

TEST_CASE("bundled scripts survive a text round trip") {
  Corpus corpus = identity_corpus();
  for (const auto& sc : corpus.scripts) {
    ProofScript again = ProofScript::parse(sc.serialize());
    CHECK(again.serialize() == sc.serialize());
    const NetSpec& ns = corpus.net(sc.netspec_name);
    NetSpec nsr = NetSpec::parse(ns.serialize());
    auto ctx = make_region_ctx(nsr);
    CHECK(run_script(nsr, *ctx, again).accepted);
  }
}

TEST_CASE("the mutation harness rejects every mutant") {
  Corpus corpus = identity_corpus();
  int mutants = 0, rejected = 0;
  for (const auto& sc : corpus.scripts) {
    const NetSpec& ns = corpus.net(sc.netspec_name);
    auto ctx = make_region_ctx(ns);
    for (const auto& m : mutate_script(sc)) {
      ++mutants;
      if (!run_script(ns, *ctx, m).accepted) ++rejected;
    }
  }
  CHECK(mutants > 0);
  CHECK(mutants == rejected);
}
