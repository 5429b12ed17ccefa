#include <gtest/gtest.h>

#include <set>

#include "test_util.h"
#include "vermilion/error.h"
#include "vermilion/topology.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {
namespace {

void ExpectRegular(const Multigraph& g, std::int64_t degree) {
  for (int u = 0; u < g.size(); ++u) {
    EXPECT_EQ(g.edge_mult.RowSum(u), degree) << "row " << u;
    EXPECT_EQ(g.edge_mult.ColSum(u), degree) << "col " << u;
  }
  EXPECT_TRUE(g.IsRegular());
}

TEST(BuildEmulated, ZeroMatrix) {
  const Multigraph g = BuildEmulated(IntegerMatrix(4, 0), 3, 1);
  EXPECT_EQ(g.degree_target, 12);
  ExpectRegular(g, 12);
  for (int u = 0; u < 4; ++u) {
    for (int v = 0; v < 4; ++v) {
      if (u != v) {
        EXPECT_GE(g.edge_mult(u, v), 1);
      }
    }
  }
}

TEST(BuildEmulated, RingTimesEight) {
  const IntegerMatrix rounded = RoundMatrix(Scale(Normalize(RingDemand(4, 1.0)), 3));
  const Multigraph g = BuildEmulated(rounded, 3, 7);
  ExpectRegular(g, 12);
  for (int u = 0; u < 4; ++u) EXPECT_GE(g.edge_mult(u, (u + 1) % 4), 9);
}

TEST(BuildEmulated, SaturatedLeavesUnitDeficit) {
  // Every line of the rounded matrix sums to (k - 1) n, so after the
  // residual complete graph each node lacks exactly one in and one out edge.
  const IntegerMatrix rounded = RoundMatrix(Scale(Normalize(RingDemand(5, 1.0)), 3));
  const Multigraph g = BuildEmulated(rounded, 3, 3);
  ExpectRegular(g, 15);
  std::int64_t fill = 0;
  for (int u = 0; u < 5; ++u) {
    for (int v = 0; v < 5; ++v) {
      fill += g.edge_mult(u, v) - rounded(u, v) - (u != v ? 1 : 0);
    }
  }
  EXPECT_EQ(fill, 5);
}

TEST(BuildEmulated, RejectsOversizedRows) {
  IntegerMatrix r(3, 0);
  r(0, 1) = 7;  // (k - 1) n = 6
  EXPECT_THROW(BuildEmulated(r, 3, 1), Error);
}

TEST(ConfigurationFill, ZeroDeficit) {
  const IntegerMatrix d = ConfigurationFill({{0, 0, 0}, {0, 0, 0}}, 5);
  EXPECT_EQ(d, IntegerMatrix(3, 0));
}

TEST(ConfigurationFill, TwoStubsTwoOutcomes) {
  std::set<std::vector<std::int64_t>> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const IntegerMatrix d = ConfigurationFill({{1, 1}, {1, 1}}, seed);
    seen.insert(testing::Flatten(d));
  }
  const std::set<std::vector<std::int64_t>> expected{{0, 1, 1, 0}, {1, 0, 0, 1}};
  EXPECT_EQ(seen, expected);
}

TEST(ConfigurationFill, UniformNine) {
  const IntegerMatrix d = ConfigurationFill({{9, 9, 9, 9}, {9, 9, 9, 9}}, 42);
  for (int u = 0; u < 4; ++u) {
    EXPECT_EQ(d.RowSum(u), 9);
    EXPECT_EQ(d.ColSum(u), 9);
  }
}

TEST(ConfigurationFill, MismatchIsReported) {
  try {
    ConfigurationFill({{2, 1}, {1, 1}}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDeficitMismatch);
    EXPECT_TRUE(e.internal());
  }
}

TEST(BuildEmulated, PropertiesOnRandomInputs) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.Uniform(20));
    const int k = 2 + static_cast<int>(rng.Uniform(4));
    SquareMatrix<double> m = testing::RandomGridMatrix(n, 5, 1.0, rng);
    if (rng.Uniform(2) == 0) m = RandomSaturatedHose(n, 1.0, rng);
    const IntegerMatrix r = RoundMatrix(Scale(Normalize(m), k));
    const std::uint64_t seed = rng.Next();
    const Multigraph g = BuildEmulated(r, k, seed);
    ExpectRegular(g, static_cast<std::int64_t>(k) * n);
    std::int64_t fill = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u != v) {
          EXPECT_GE(g.edge_mult(u, v), r(u, v) + 1);
        }
        fill += g.edge_mult(u, v) - r(u, v) - (u != v ? 1 : 0);
      }
    }
    EXPECT_EQ(fill, static_cast<std::int64_t>(k) * n * n - r.Total() - n * (n - 1));
    EXPECT_EQ(BuildEmulated(r, k, seed).edge_mult, g.edge_mult);
  }
}

}  // namespace
}  // namespace vermilion
