#include <gtest/gtest.h>

#include "s2hull/regions.hpp"
#include "s2hull/sampling.hpp"

using namespace s2hull;

TEST(Classify, WorkedPointIsR4) {
  EXPECT_EQ(classify({0.1, 1, 1, 1.2, 2.5, 0.5, 0.5}), Region::R4);
}

TEST(Classify, FaceAndEdgeGoToR1) {
  EXPECT_EQ(classify({1, 1, 2, 0, 2, 0.6, 0.7}), Region::R1);
  EXPECT_EQ(classify({0, 1, 0, 0.3, 2, 0, 0.5}), Region::R1);
  EXPECT_EQ(classify({1, 0, 2, 0.3, 0, 0.5, 0}), Region::R1);
}

TEST(Classify, S2PiecesAreR1) {
  // the pieces themselves have X12 z1 z2 = x1 x2 L, i.e. sit on the R1 cell
  EXPECT_EQ(classify(s2_point(4, 0.7, 1.3)), Region::R1);
  EXPECT_EQ(classify(s2_point(2, 0.7, 1.3)), Region::R1);
}

TEST(Classify, TieBreakIsLowestIndex) {
  // X12 z2 = x1 x2 with z1 = z2: boundary between R1 and R2/R5
  const HullPoint p{1, 1, 3, 2, 3, 0.5, 0.5};
  std::vector<Region> hits;
  for (Region r : kRegions)
    if (in_region(p, r)) hits.push_back(r);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(classify(p), hits.front());
}

TEST(RegionNames, RoundTrip) {
  for (Region r : kRegions) EXPECT_EQ(region_from_string(to_string(r)), r);
  EXPECT_EQ(region_from_string("NotCovered"), Region::NotCovered);
  EXPECT_FALSE(region_from_string("R9"));
  EXPECT_EQ(index_of(Region::R1), 0u);
  EXPECT_EQ(index_of(Region::R8), 7u);
}

TEST(PartitionAudit, UniformSamplesHitEveryCellOnce) {
  const auto s = sample_Cbar({2024, 10000});
  const AuditReport rep = region_partition_audit(s);
  EXPECT_EQ(rep.outside_cbar, 0u);
  EXPECT_TRUE(rep.violations.empty()) << rep.violations.size() << " violations";
  EXPECT_EQ(rep.total(), s.size());
  for (std::size_t i = 0; i < 8; ++i) EXPECT_GT(rep.counts[i], 0u) << "cell R" << i + 1;
  EXPECT_EQ(rep.counts[8], 0u);
}

TEST(PartitionAudit, SinglePointAndEmptyList) {
  const std::vector<HullPoint> one{s2_point(4, 1.0, 1.0)};
  const AuditReport a = region_partition_audit(one);
  EXPECT_EQ(a.total(), 1u);
  EXPECT_TRUE(a.violations.empty());
  const AuditReport e = region_partition_audit(std::vector<HullPoint>{});
  EXPECT_EQ(e.total(), 0u);
}

TEST(PartitionAudit, SkipsPointsOutsideCbar) {
  const std::vector<HullPoint> pts{{1, 1, 0.1, 0.1, 0.1, 0.5, 0.5}};
  EXPECT_EQ(region_partition_audit(pts).outside_cbar, 1u);
}

TEST(U2, RequiresPositiveX12AndSmallProduct) {
  EXPECT_TRUE(in_U2({1, 1, 10, 0.1, 10, 0.9, 0.9}));
  EXPECT_FALSE(in_U2({1, 1, 10, 0.0, 10, 0.9, 0.9}));
  EXPECT_FALSE(in_U2({1, 1, 10, 0.1, 10, 0.3, 0.3}));
}
