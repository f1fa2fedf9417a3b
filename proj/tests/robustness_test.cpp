#include <gtest/gtest.h>

#include <algorithm>
#include <climits>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "rsm/instance.hpp"
#include "rsm/robustness.hpp"

using namespace rsm;

namespace {

struct Fixture {
  Instance inst = fx::table1();
  RotationPoset p = build_poset(inst);
  Matching m5 = matching_from_partners(fx::kM5);
  IndexSet s5 = fx::subset_of({0, 1, 2}, p.size());
};

}  // namespace

TEST(Repairs, Table2RepairSubsets) {
  Fixture f;
  for (const auto& row : fx::kTable2) {
    ASSERT_EQ(f.m5.partner_of_man[row.man], row.woman);
    RepairResult r = man_repair(f.p, f.s5, row.man, f.m5);
    EXPECT_EQ(r.man, row.man);
    ASSERT_EQ(r.s_up.has_value(), row.s_up.has_value()) << "man " << row.man;
    if (row.s_up) {
      EXPECT_EQ(*r.s_up, fx::subset_of(*row.s_up, f.p.size()))
          << "s_up of man " << row.man;
    }
    ASSERT_EQ(r.s_down.has_value(), row.s_down.has_value()) << "man " << row.man;
    if (row.s_down) {
      EXPECT_EQ(*r.s_down, fx::subset_of(*row.s_down, f.p.size()))
          << "s_down of man " << row.man;
    }
  }
}

TEST(Repairs, Table3RepairCosts) {
  Fixture f;
  for (const auto& row : fx::kTable3) {
    RepairResult r = man_repair(f.p, f.s5, row.man, f.m5);
    EXPECT_EQ(r.d_up, row.d_up) << "d_up of man " << row.man;
    EXPECT_EQ(r.d_down, row.d_down) << "d_down of man " << row.man;
    EXPECT_EQ(r.b_i, row.b_i) << "b_i of man " << row.man;
  }
}

TEST(Repairs, FreeFunctionsAgreeWithManRepair) {
  Fixture f;
  for (const auto& row : fx::kTable2) {
    RepairResult r = man_repair(f.p, f.s5, row.man, f.m5);
    EXPECT_EQ(repair_up(f.p, f.s5, row.man, f.m5), r.s_up);
    EXPECT_EQ(repair_down(f.p, f.s5, row.man, f.m5), r.s_down);
  }
}

TEST(Repairs, FixedManHasNoRepair) {
  Instance uniq = fx::unique_stable_instance(4);
  RotationPoset p = build_poset(uniq);
  IndexSet empty(p.size());
  for (int man = 0; man < 4; ++man) {
    EXPECT_TRUE(is_fixed_man(p, man));
    EXPECT_THROW(man_repair(p, empty, man, p.m0), std::invalid_argument);
    EXPECT_EQ(repair_up(p, empty, man, p.m0), std::nullopt);
    EXPECT_EQ(repair_down(p, empty, man, p.m0), std::nullopt);
  }
  RobustnessReport report = robustness(p, p.m0);
  EXPECT_TRUE(report.per_man.empty());
  EXPECT_EQ(report.b, 0);
}

TEST(Repairs, RepairSubsetsAreClosedAndNested) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Instance inst = generate_instance(9, seed);
    RotationPoset p = build_poset(inst);
    for_each_closed_subset(p, [&](const IndexSet& s) {
      Matching m = matching_of_closed_subset(p, s);
      for (int man = 0; man < p.n; ++man) {
        if (is_fixed_man(p, man)) continue;
        RepairResult r = man_repair(p, s, man, m);
        if (r.s_up) {
          EXPECT_TRUE(p.is_closed(*r.s_up));
          EXPECT_TRUE(r.s_up->subset_of(s));
          EXPECT_NE(*r.s_up, s);
        }
        if (r.s_down) {
          EXPECT_TRUE(p.is_closed(*r.s_down));
          EXPECT_TRUE(s.subset_of(*r.s_down));
          EXPECT_NE(*r.s_down, s);
        }
        // A repair moves the broken man plus at least one partner swap.
        if (r.d_up) {
          EXPECT_GE(*r.d_up, 2);
        }
        if (r.d_down) {
          EXPECT_GE(*r.d_down, 2);
        }
        EXPECT_GE(r.b_i, 1);
      }
      return true;
    });
  }
}

TEST(Repairs, CostsEqualMatchingDistances) {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    Instance inst = generate_instance(8, seed);
    RotationPoset p = build_poset(inst);
    for_each_closed_subset(p, [&](const IndexSet& s) {
      Matching m = matching_of_closed_subset(p, s);
      for (int man = 0; man < p.n; ++man) {
        if (is_fixed_man(p, man)) continue;
        RepairResult r = man_repair(p, s, man, m);
        if (r.s_up) {
          EXPECT_EQ(*r.d_up,
                    distance(m, matching_of_closed_subset(p, *r.s_up)));
        }
        if (r.s_down) {
          EXPECT_EQ(*r.d_down,
                    distance(m, matching_of_closed_subset(p, *r.s_down)));
        }
      }
      return true;
    });
  }
}

// The repair pair (S-up, S-down) realizes the minimum distance over all
// stable matchings that re-match the broken man, per the brute-force oracle.
TEST(Repairs, ClosestRepairIsOptimal) {
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    Instance inst = generate_instance(8, seed);
    auto stables = oracle::stable_matchings(inst);
    RotationPoset p = build_poset(inst);
    for_each_closed_subset(p, [&](const IndexSet& s) {
      Matching m = matching_of_closed_subset(p, s);
      for (int man = 0; man < p.n; ++man) {
        if (is_fixed_man(p, man)) continue;
        RepairResult r = man_repair(p, s, man, m);
        int got = INT_MAX;
        if (r.d_up) got = std::min(got, *r.d_up);
        if (r.d_down) got = std::min(got, *r.d_down);
        EXPECT_EQ(got,
                  oracle::min_repair_distance(stables, m.partner_of_man, man));
      }
      return true;
    });
  }
}

TEST(Robustness, FixtureValues) {
  Fixture f;
  EXPECT_EQ(robustness(f.p, f.m5).b, 3);
  EXPECT_EQ(robustness(f.p, matching_from_partners(fx::kM6)).b, 1);
  EXPECT_EQ(robustness(f.p, f.p.m0).b, 5);
}

TEST(Robustness, Table4Column) {
  Fixture f;
  Evaluator eval(f.p);
  for (std::size_t i = 0; i < fx::kClosedSubsets.size(); ++i) {
    IndexSet s = fx::subset_of(fx::kClosedSubsets[i], f.p.size());
    Matching m = matching_of_closed_subset(f.p, s);
    EXPECT_EQ(robustness(f.p, m).b, fx::kRobustnessColumn[i]) << "S" << i;
    EXPECT_EQ(eval.b_of(s), fx::kRobustnessColumn[i]) << "S" << i;
  }
}

TEST(Robustness, RejectsUnstableMatching) {
  Fixture f;
  std::vector<int> pm = fx::kM0;
  std::swap(pm[0], pm[1]);
  EXPECT_THROW(robustness(f.p, matching_from_partners(pm)),
               std::invalid_argument);
}

TEST(Supermatch, FixtureExamples) {
  Fixture f;
  Matching m6 = matching_from_partners(fx::kM6);
  EXPECT_TRUE(is_one_b_supermatch(f.p, f.m5, 3));
  EXPECT_FALSE(is_one_b_supermatch(f.p, f.m5, 2));
  EXPECT_TRUE(is_one_b_supermatch(f.p, m6, 1));
  EXPECT_FALSE(is_one_b_supermatch(f.p, m6, 0));
  EXPECT_TRUE(is_one_b_supermatch(f.p, f.m5, 100));
  EXPECT_THROW(is_one_b_supermatch(f.p, f.m5, -1), std::invalid_argument);

  Instance uniq = fx::unique_stable_instance(3);
  RotationPoset pu = build_poset(uniq);
  EXPECT_TRUE(is_one_b_supermatch(pu, pu.m0, 0));
}

TEST(Supermatch, ThresholdMatchesRobustnessValue) {
  for (std::uint64_t seed = 40; seed < 46; ++seed) {
    Instance inst = generate_instance(9, seed);
    RotationPoset p = build_poset(inst);
    for_each_closed_subset(p, [&](const IndexSet& s) {
      Matching m = matching_of_closed_subset(p, s);
      int b = robustness(p, m).b;
      EXPECT_TRUE(is_one_b_supermatch(p, m, b));
      if (b > 0) {
        EXPECT_FALSE(is_one_b_supermatch(p, m, b - 1));
      }
      return true;
    });
  }
}

TEST(Evaluator, MemoizationIsTransparent) {
  Fixture f;
  Evaluator with(f.p, true);
  Evaluator without(f.p, false);
  auto ideals = enumerate_closed_subsets(f.p, 100);
  for (int pass = 0; pass < 2; ++pass)
    for (const IndexSet& s : ideals) EXPECT_EQ(with.b_of(s), without.b_of(s));
  EXPECT_EQ(with.evaluations(), ideals.size());        // misses only
  EXPECT_EQ(without.evaluations(), 2 * ideals.size());  // every call computes
}

TEST(Evaluator, RejectsNonClosedSubset) {
  Fixture f;
  Evaluator eval(f.p);
  EXPECT_THROW(eval.b_of(fx::subset_of({1}, f.p.size())),
               std::invalid_argument);
  EXPECT_THROW(eval.b_of(IndexSet(2)), std::invalid_argument);
}

TEST(Evaluator, AgreesWithRobustnessEverywhere) {
  for (std::uint64_t seed = 50; seed < 58; ++seed) {
    Instance inst = generate_instance(10, seed);
    RotationPoset p = build_poset(inst);
    Evaluator eval(p);
    for_each_closed_subset(p, [&](const IndexSet& s) {
      EXPECT_EQ(eval.b_of(s),
                robustness(p, matching_of_closed_subset(p, s)).b);
      return true;
    });
  }
}
