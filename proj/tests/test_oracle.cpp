#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "zigzag/engine.hpp"

using namespace zigzag;

// Constructive operations on the finite backend agree with brute-force
// existence, and every returned witness validates.
TEST_CASE("oracle equivalence on the finite poset family") {
  auto family = oracle::poset_family(77, 12);
  for (std::size_t pi = 0; pi < family.size(); ++pi) {
    const FinitePoset& fp = family[pi];
    INFO("poset " << pi << " with " << fp.size() << " nodes");
    const int n = fp.size();
    for (int p = 0; p < n; ++p) {
      // splitting
      bool split_exists = oracle::bf_split_exists(fp, p);
      try {
        auto sp = fp.split(p);
        CHECK(split_exists);
        CHECK(validate_splitting(fp, sp).ok());
      } catch (const ConstructionFailed&) {
        CHECK_FALSE(split_exists);
      }
      for (int q = 0; q < n; ++q) {
        // q-smallness against scan
        CHECK(is_q_small(fp, p, q).has_value() == oracle::bf_q_small(fp, p, q));
        // the witness pair is symmetric in q vs q'
        CHECK(is_q_small(fp, p, q).has_value() ==
              is_q_small(fp, p, fp.involution(q)).has_value());
        // small indicator
        bool si_exists = oracle::bf_small_indicator_exists(fp, p, q);
        try {
          int cand = small_indicator(fp, p, q);
          CHECK(si_exists);
          CHECK(fp.leq(cand, p));
          CHECK(is_q_indicator(fp, cand, p, q));
          CHECK(is_q_small(fp, cand, q).has_value());
        } catch (const ConstructionFailed&) {
          CHECK_FALSE(si_exists);
        }
        // connectivity
        auto closure = oracle::bf_hop_closure(fp);
        try {
          auto zz = connect_or_search(fp, p, q);
          CHECK(closure[p][q]);
          CHECK(validate_zigzag(fp, zz).ok());
          CHECK(zz.z.front() == p);
          CHECK(zz.z.back() == q);
        } catch (const ConstructionFailed&) {
          CHECK_FALSE(closure[p][q]);
        }
      }
    }
  }
}

TEST_CASE("GA3 search matches tagged reachability") {
  auto family = oracle::poset_family(78, 8);
  for (const FinitePoset& fp : family) {
    const int n = fp.size();
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        // collect q-small q-indicators below p
        std::vector<int> cand;
        for (int z = 0; z < n; ++z)
          if (oracle::bf_indicator(fp, z, p, q) && oracle::bf_q_small(fp, z, q))
            cand.push_back(z);
        if (cand.size() < 2) continue;
        // probe a few endpoint pairs
        for (std::size_t i = 0; i < cand.size() && i < 3; ++i)
          for (std::size_t j = i; j < cand.size() && j < 4; ++j) {
            bool exists = oracle::bf_ga3_exists(fp, cand[i], cand[j], p, q);
            try {
              auto zz = fp.ga3_zigzag(cand[i], cand[j], p, q);
              CHECK(exists);
              ZigZagOpts<FinitePoset> opts;
              opts.contained_in = p;
              opts.ga3_for = q;
              CHECK(validate_zigzag(fp, zz, opts).ok());
            } catch (const ConstructionFailed&) {
              CHECK_FALSE(exists);
            }
          }
      }
  }
}

TEST_CASE("MDZ construction matches pair-graph reachability") {
  auto family = oracle::poset_family(79, 8);
  for (const FinitePoset& fp : family) {
    const int n = fp.size();
    // enumerate a few splittings per parent
    for (int p = 0; p < n; ++p) {
      std::vector<Splitting<int>> splits;
      for (int r = 0; r < n && splits.size() < 3; ++r)
        for (int s = 0; s < n && splits.size() < 3; ++s)
          if (fp.leq(r, p) && fp.leq(s, p) && fp.leq(r, fp.involution(s)))
            splits.push_back(Splitting<int>{p, r, s});
      for (const auto& s1 : splits)
        for (const auto& s2 : splits) {
          bool exists = oracle::bf_mdz_exists(fp, s1.r, s1.s, s2.r, s2.s);
          try {
            auto res = mdz_between_splittings(fp, p, s1, s2);
            CHECK(exists);
            CHECK(validate_mdz(fp, res.mdz).ok());
            CHECK(res.mdz.top.z.front() == s1.r);
            CHECK(res.mdz.bottom.z.front() == s1.s);
            CHECK(res.mdz.top.z.back() == (res.swapped ? s2.s : s2.r));
            CHECK(res.mdz.bottom.z.back() == (res.swapped ? s2.r : s2.s));
          } catch (const ConstructionFailed&) {
            CHECK_FALSE(exists);
          }
        }
    }
  }
}

TEST_CASE("reflection search matches quintuple existence") {
  auto family = oracle::poset_family(80, 8);
  for (const FinitePoset& fp : family) {
    for (int p = 0; p < fp.size(); ++p) {
      bool exists = oracle::bf_reflection_exists(fp, p);
      try {
        auto refl = find_reflection(fp, p);
        CHECK(exists);
        CHECK(validate_reflection(fp, refl).ok());
      } catch (const ConstructionFailed&) {
        CHECK_FALSE(exists);
      }
    }
  }
}

TEST_CASE("a hand-built reflection instance is found by search") {
  // two quadrant pairs around a diameter, as in the reflection figure
  FinitePoset fp = circle_poset(4);
  int p = fp.index_of("a0_2");  // upper half
  auto refl = find_reflection(fp, p);
  CHECK(validate_reflection(fp, refl).ok());
}
