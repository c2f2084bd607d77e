#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "zigzag/cli.hpp"

using namespace zigzag;

TEST_CASE("check-axioms passes on the geometric backends and is deterministic") {
  CliConfig cfg;
  cfg.seed = 7;
  std::ostringstream a, b;
  CHECK(cmd_check_axioms("interval", 500, cfg, a) == 0);
  CHECK(cmd_check_axioms("interval", 500, cfg, b) == 0);
  CHECK(a.str() == b.str());  // same seed, byte-identical report
  CHECK(a.str().find("result PASS") != std::string::npos);
  std::ostringstream c;
  cfg.jobs = 4;
  CHECK(cmd_check_axioms("interval", 500, cfg, c) == 0);
  CHECK(a.str() == c.str());  // worker count does not change the bytes

  std::ostringstream d;
  CHECK(cmd_check_axioms("cone", 300, cfg, d) == 0);
  std::ostringstream e;
  CHECK(cmd_check_axioms("cap", 300, cfg, e) == 0);
  CHECK(e.str().find("GA3") != std::string::npos);
  CHECK(e.str().find("attempted") != std::string::npos);

  std::ostringstream f;
  CHECK(cmd_check_axioms("pyramid", 10, cfg, f) == 2);
}

TEST_CASE("broken poset files exit with a config error") {
  CliConfig cfg;
  std::ostringstream out;
  // non-involutive map
  {
    std::ofstream f("/tmp/broken.poset");
    f << "nodes a b c\ninvol a b\ninvol b c\ninvol c a\n";
  }
  CHECK(cmd_check_axioms("finite:/tmp/broken.poset", 10, cfg, out) == 2);
  CHECK(cmd_check_axioms("finite:/tmp/missing-file.poset", 10, cfg, out) == 2);
}

TEST_CASE("witness commands emit files that re-validate on reload") {
  CliConfig cfg;
  std::ostringstream out;
  int rc = cmd_build_zigzag("interval", "interval(10,40)", "interval(200,250)", "", "",
                            "/tmp/zz.witness", "/tmp/zz.svg", cfg, out);
  CHECK(rc == 0);
  std::ifstream f("/tmp/zz.witness");
  std::stringstream ss;
  ss << f.rdbuf();
  IntervalBackend<Rat> ib;
  CHECK(revalidate_witness(ib, ss.str()).ok());
  std::ifstream svg("/tmp/zz.svg");
  std::stringstream sv;
  sv << svg.rdbuf();
  CHECK(sv.str().find("<svg") != std::string::npos);

  // the paper's quadrant reflection configuration
  std::ostringstream out2;
  rc = cmd_find_reflection("cone", "cone(0,0.05,2,178)", "/tmp/refl.witness", "", cfg, out2);
  CHECK(rc == 0);
  std::ifstream rf("/tmp/refl.witness");
  std::stringstream rs;
  rs << rf.rdbuf();
  ConeBackend<Rat> cb;
  CHECK(revalidate_witness(cb, rs.str()).ok());

  std::ostringstream out3;
  rc = cmd_build_mdz("cone", "cone(0,0,10,170)", "cone(0,0,20,60)", "cone(0,0,120,160)",
                     "cone(0,0,30,70)", "cone(0,0,110,150)", "/tmp/mdz.witness", "", cfg, out3);
  CHECK(rc == 0);
  std::ifstream mf("/tmp/mdz.witness");
  std::stringstream ms;
  ms << mf.rdbuf();
  CHECK(revalidate_witness(cb, ms.str()).ok());
  CHECK(ms.str().find("swapped") != std::string::npos);

  // degenerate input: zero opening angle
  std::ostringstream out4;
  CHECK(cmd_build_zigzag("cone", "cone(0,0,10,10)", "cone(0,0,30,40)", "", "", "", "", cfg,
                         out4) != 0);
}

TEST_CASE("verify-identities runs the bundled corpus and the mutation harness") {
  CliConfig cfg;
  cfg.jobs = 4;
  std::ostringstream out;
  CHECK(cmd_verify_identities(true, "", "", false, "", cfg, out) == 0);
  CHECK(out.str().find("result PASS") != std::string::npos);

  // dump, then reload from the directory
  std::ostringstream out2;
  CHECK(cmd_verify_identities(true, "", "/tmp/corpusdump", false, "", cfg, out2) == 0);
  std::ostringstream out3;
  CHECK(cmd_verify_identities(false, "/tmp/corpusdump", "", false, "", cfg, out3) == 0);
  CHECK(out3.str().find("result PASS") != std::string::npos);

  std::ostringstream out4;
  CHECK(cmd_verify_identities(true, "", "", true, "", cfg, out4) == 0);  // mutants all rejected

  // empty corpus dir: zero scripts, success
  std::filesystem::create_directories("/tmp/emptycorpus");
  std::ostringstream out5;
  CHECK(cmd_verify_identities(false, "/tmp/emptycorpus", "", false, "", cfg, out5) == 0);
  CHECK(out5.str().find("scripts 0") != std::string::npos);
}
