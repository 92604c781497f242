#include <gtest/gtest.h>

#include <cmath>

#include "s2hull/oracle.hpp"
#include "s2hull/sampling.hpp"
#include "s2hull/verify.hpp"

using namespace s2hull;

namespace {
const HullPoint kWorked{0.1, 1, 1, 1.2, 2.5, 0.5, 0.5};
}

TEST(OracleObjective, RejectsInfeasibleTriples) {
  EXPECT_THROW((void)oracle_objective(kWorked, 0.05, 0.5, 0.9), HullError);  // lambda > min z
  EXPECT_THROW((void)oracle_objective(kWorked, 0.5, 0.5, 0.3), HullError);   // xt1 > x1
  try {
    (void)oracle_objective(kWorked, 0.05, 0.0, 0.4);  // g2 < 0: all of x2 on the other side
    FAIL();
  } catch (const HullError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleWitness);
  }
}

TEST(OracleObjective, FeasibleTripleIsFinite) {
  const ExtReal f = oracle_objective(kWorked, 0.05, 0.5, 0.25);
  ASSERT_TRUE(f.is_finite());
  EXPECT_GT(f.value(), kWorked.X11);
}

TEST(OracleMember, WorkedExample) {
  const OracleResult r = oracle_member(kWorked);
  EXPECT_FALSE(r.member);
  EXPECT_NEAR(r.witness.objective.value(), 2.02, 1e-3);
  EXPECT_NO_THROW((void)oracle_objective(kWorked, r.witness));
}

TEST(OracleMember, P4PointUsesFullWeight) {
  const HullPoint p = s2_point(4, 0.8, 1.1);
  const OracleResult r = oracle_member(p);
  EXPECT_TRUE(r.member);
  EXPECT_NEAR(r.witness.lambda4, 1.0, 1e-9);
}

TEST(OracleMember, ConvexCombinationsAreMembers) {
  for (const auto& p : sample_hull({55, 300}, 6)) EXPECT_TRUE(oracle_member(p).member);
}

TEST(OracleMember, Deterministic) {
  const auto a = oracle_member(kWorked), b = oracle_member(kWorked);
  EXPECT_EQ(a.witness.objective, b.witness.objective);
  EXPECT_EQ(a.witness.xt42, b.witness.xt42);
}

TEST(OracleMember, NonMembersHaveClearGap) {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const HullPoint p = make_nonmember(rng);
    const OracleResult r = oracle_member(p);
    EXPECT_FALSE(r.member);
    EXPECT_GT(r.witness.objective.value(), p.X11 + 10 * Tolerances{}.oracle);
  }
}

TEST(OracleMember, AgreesWithClosedFormAwayFromBoundary) {
  const SuiteReport rep = verify_oracle(300, 4);
  EXPECT_TRUE(rep.passed()) << rep.detail;
}

TEST(AnalyticWitness, MatchesThresholdAndOracle) {
  Rng rng(3);
  std::array<int, 8> seen{};
  int checked = 0;
  for (int i = 0; i < 4000 && checked < 400; ++i) {
    const HullPoint p = sample_Cbar_point(rng);
    const Region r = classify(p);
    OracleWitness w;
    try {
      w = analytic_witness(p, r);
    } catch (const HullError& e) {
      EXPECT_EQ(e.code(), ErrorCode::RegionHasNoClosedWitness);
      continue;
    }
    ExtReal f;
    try {
      f = oracle_objective(p, w);
    } catch (const HullError& e) {
      ADD_FAILURE() << to_string(r) << ": " << e.what();
      continue;
    }
    ExtReal t;
    try {
      t = x11_threshold(p);
    } catch (const HullError&) {
      continue;
    }
    if (f.is_infinite() || t.is_infinite()) {
      EXPECT_EQ(f.is_infinite(), t.is_infinite());
      continue;
    }
    ++checked;
    ++seen[index_of(r)];
    const double tv = t.value();
    EXPECT_NEAR(f.value(), tv, 1e-6 * (1.0 + std::abs(tv))) << to_string(r);
    const OracleResult o = oracle_member(p);
    EXPECT_NEAR(o.witness.objective.value(), f.value(), 1e-4 * (1.0 + std::abs(f.value())))
        << to_string(r);
  }
  for (Region r : {Region::R2, Region::R3, Region::R6, Region::R7, Region::R8})
    EXPECT_GT(seen[index_of(r)], 0) << to_string(r);
}

TEST(AnalyticWitness, R4HasNone) {
  try {
    (void)analytic_witness(kWorked, Region::R4);
    FAIL();
  } catch (const HullError& e) {
    EXPECT_EQ(e.code(), ErrorCode::RegionHasNoClosedWitness);
  }
}

// At the returned witness no feasible move along lambda or xt2 lowers f.
TEST(OracleMember, WitnessIsLocallyMinimal) {
  Rng rng(6);
  for (int i = 0; i < 40; ++i) {
    const HullPoint p = make_nonmember(rng);
    const OracleResult r = oracle_member(p);
    const double f0 = r.witness.objective.value();
    for (double d : {-1e-4, 1e-4}) {
      for (int axis = 0; axis < 2; ++axis) {
        OracleWitness w = r.witness;
        (axis == 0 ? w.lambda4 : w.xt42) += d;
        try {
          const ExtReal f = oracle_objective(p, w.xt41, w.xt42, w.lambda4);
          if (f.is_finite()) {
            EXPECT_GE(f.value(), f0 - 1e-6 * (1.0 + f0));
          }
        } catch (const HullError&) {
        }
      }
    }
  }
}
