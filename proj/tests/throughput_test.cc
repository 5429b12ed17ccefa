#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "test_util.h"
#include "vermilion/error.h"
#include "vermilion/schedule.h"
#include "vermilion/throughput.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {
namespace {

const SlotTiming kDuty09{5000, 500};

CapacityMatrix Caps(const std::vector<std::vector<double>>& rows) {
  CapacityMatrix cap{SquareMatrix<double>(static_cast<int>(rows.size()))};
  for (std::size_t u = 0; u < rows.size(); ++u) {
    for (std::size_t v = 0; v < rows.size(); ++v) cap.cap(u, v) = rows[u][v];
  }
  return cap;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInfeasible;
}

TEST(SingleHop, RingOnObliviousAndAware) {
  const TrafficMatrix ring = ValidateHose(RingDemand(4, 1.0), 1, 1);
  const ThroughputReport obl =
      SingleHopThroughput(ring, EmulatedCapacities(BuildObliviousSchedule(4, 1, kDuty09), 1));
  EXPECT_NEAR(obl.theta, 0.3, 1e-12);
  const ThroughputReport aware = SingleHopThroughput(
      ring, EmulatedCapacities(BuildVermilionSchedule(ring, 3, kDuty09, 1), 1));
  EXPECT_GE(aware.theta, 0.675 - 1e-12);
  EXPECT_EQ(aware.mode, RoutingMode::kSingleHop);
}

TEST(SingleHop, UniformOnOblivious) {
  const TrafficMatrix uni = ValidateHose(UniformDemand(4, 1.0), 1, 1);
  const ThroughputReport r =
      SingleHopThroughput(uni, EmulatedCapacities(BuildObliviousSchedule(4, 1, kDuty09), 1));
  EXPECT_NEAR(r.theta, 0.9, 1e-12);
}

TEST(SingleHop, ZeroDemandIsUnbounded) {
  const ThroughputReport r =
      SingleHopThroughput(SquareMatrix<double>(3), Caps({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_TRUE(r.unbounded);
}

TEST(SingleHop, MissingCircuitGivesZero) {
  SquareMatrix<double> demand(3);
  demand(0, 2) = 1;
  const ThroughputReport r = SingleHopThroughput(demand, Caps({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  EXPECT_EQ(r.theta, 0.0);
  EXPECT_EQ(r.binding_pair, std::make_pair(0, 2));
}

TEST(SingleHop, InverseScaling) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const SquareMatrix<double> d = RandomSaturatedHose(6, 1.0, rng);
    const CapacityMatrix cap =
        EmulatedCapacities(BuildVermilionSchedule(ValidateHose(d, 1, 1), 3, kDuty09, trial), 1);
    const double alpha = 0.25 + rng.Uniform01() * 4;
    SquareMatrix<double> scaled = d;
    for (double& x : scaled.data()) x *= alpha;
    EXPECT_NEAR(SingleHopThroughput(scaled, cap).theta * alpha,
                SingleHopThroughput(d, cap).theta, 1e-9);
  }
}

TEST(MaxConcurrentFlow, TwoNodes) {
  SquareMatrix<double> demand(2);
  demand(0, 1) = 1;
  const ThroughputReport r = MaxConcurrentFlow(Caps({{0, 2}, {0, 0}}), demand, 0.01);
  EXPECT_GE(r.theta, 2 * 0.99 - 1e-9);
  EXPECT_LE(r.theta, 2 + 1e-9);
  EXPECT_GE(r.upper_bound, 2 - 1e-9);
}

struct LpFixture {
  const char* name;
  CapacityMatrix cap;
  SquareMatrix<double> demand;
  double optimum;  // exact LP value from tests/fixtures/mcf_lp_oracle.py
};

std::vector<LpFixture> LpFixtures() {
  std::vector<LpFixture> out;
  {
    SquareMatrix<double> d(3);
    d(0, 1) = 1;
    out.push_back({"triangle", Caps({{0, 2, 1}, {0, 0, 1}, {1, 1, 0}}), d, 3.0});
  }
  {
    SquareMatrix<double> d(4);
    d(0, 3) = 2;
    d(2, 0) = 1;
    out.push_back(
        {"diamond", Caps({{0, 1, 3, 0}, {0, 0, 0, 2}, {0, 1, 0, 1}, {1, 0, 0, 0}}), d, 1.0});
  }
  out.push_back({"oblivious4_ring", EmulatedCapacities(BuildObliviousSchedule(4, 1, kDuty09), 1),
                 RingDemand(4, 1.0), 0.6});
  out.push_back({"oblivious4_uniform",
                 EmulatedCapacities(BuildObliviousSchedule(4, 1, kDuty09), 1),
                 UniformDemand(4, 1.0), 0.9});
  out.push_back({"oblivious16_ring",
                 EmulatedCapacities(BuildObliviousSchedule(16, 1, SlotTiming{}), 1),
                 RingDemand(16, 1.0), 0.4740740740740739});
  return out;
}

TEST(MaxConcurrentFlow, MatchesLpOptimum) {
  for (const LpFixture& f : LpFixtures()) {
    for (double eps : {0.1, 0.02}) {
      SCOPED_TRACE(std::string(f.name) + " eps=" + std::to_string(eps));
      const ThroughputReport r = MaxConcurrentFlow(f.cap, f.demand, eps);
      EXPECT_EQ(r.mode, RoutingMode::kMultiHop);
      EXPECT_GE(r.theta, (1 - eps) * f.optimum - 1e-9);
      EXPECT_LE(r.theta, f.optimum * (1 + 1e-9));
      EXPECT_GE(r.upper_bound, f.optimum * (1 - 1e-9));
      EXPECT_LE(CertificateViolation(f.cap, f.demand, r), 1e-9 * f.optimum);
    }
  }
}

TEST(MaxConcurrentFlow, CertificatePathsAreWellFormed) {
  const LpFixture f = LpFixtures()[3];
  const ThroughputReport r = MaxConcurrentFlow(f.cap, f.demand, 0.05);
  ASSERT_FALSE(r.certificate.empty());
  for (const PathFlow& p : r.certificate) {
    ASSERT_GE(p.nodes.size(), 2u);
    EXPECT_EQ(p.nodes.front(), p.src);
    EXPECT_EQ(p.nodes.back(), p.dst);
    EXPECT_GT(p.amount, 0);
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
      EXPECT_GT(f.cap.cap(p.nodes[i], p.nodes[i + 1]), 0);
    }
  }
}

TEST(MaxConcurrentFlow, AtLeastSingleHop) {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + static_cast<int>(rng.Uniform(4));
    const SquareMatrix<double> d = RandomSaturatedHose(n, 1.0, rng, 2);
    const CapacityMatrix cap = EmulatedCapacities(
        BuildVermilionSchedule(ValidateHose(d, 1, 1), 2, kDuty09, trial), 1);
    const double eps = 0.05;
    const ThroughputReport multi = MaxConcurrentFlow(cap, d, eps);
    EXPECT_GE(multi.theta, (1 - eps) * SingleHopThroughput(d, cap).theta - 1e-9);
    EXPECT_LE(CertificateViolation(cap, d, multi), 1e-9);
  }
}

TEST(MaxConcurrentFlow, RejectsBadInput) {
  const CapacityMatrix cap = Caps({{0, 1}, {1, 0}});
  SquareMatrix<double> d(2);
  EXPECT_EQ(CodeOf([&] { MaxConcurrentFlow(cap, d, 0.1); }), ErrorCode::kZeroDemand);
  d(0, 1) = 1;
  EXPECT_EQ(CodeOf([&] { MaxConcurrentFlow(cap, d, 0.0); }), ErrorCode::kInvalidEpsilon);
  EXPECT_EQ(CodeOf([&] { MaxConcurrentFlow(cap, d, 0.7); }), ErrorCode::kInvalidEpsilon);
  EXPECT_EQ(CodeOf([&] { MaxConcurrentFlow(cap, d, std::nan("")); }),
            ErrorCode::kInvalidEpsilon);
}

TEST(AwareBound, Values) {
  EXPECT_DOUBLE_EQ(AwareThroughputBound(2, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(AwareThroughputBound(3, 0.9), 0.6);
}

TEST(AwareBound, HoldsOnPermutationAndZero) {
  const TrafficMatrix perm = ValidateHose(PermutationDemand({1, 0, 3, 2}, 1.0), 1, 1);
  EXPECT_TRUE(VerifyAwareThroughputBound(perm, 2, SlotTiming{5000, 0}, 1));
  EXPECT_TRUE(
      VerifyAwareThroughputBound(ValidateHose(SquareMatrix<double>(4), 1, 1), 3, kDuty09, 1));
}

TEST(AwareBound, SmallSweepStaysAbove) {
  const std::vector<SweepRow> rows = ThroughputSweep(8, 1, 2, 4, 4, 5, kDuty09);
  ASSERT_EQ(rows.size(), 3u);
  for (const SweepRow& row : rows) {
    EXPECT_DOUBLE_EQ(row.bound, AwareThroughputBound(row.k, 0.9));
    EXPECT_GE(row.min_theta, row.bound - 1e-12);
  }
  EXPECT_EQ(ThroughputSweep(8, 1, 2, 4, 4, 5, kDuty09, 2).size(), 3u);
}

}  // namespace
}  // namespace vermilion
