#ifndef VERMILION_THROUGHPUT_H_
#define VERMILION_THROUGHPUT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vermilion/schedule.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {

enum class RoutingMode { kSingleHop, kMultiHop };

struct PathFlow {
  int src = 0;
  int dst = 0;
  std::vector<int> nodes;  // src ... dst
  double amount = 0;       // bits/s
};

struct ThroughputReport {
  double theta = 0;
  // Zero demand: theta is unbounded and `theta` holds no meaning.
  bool unbounded = false;
  RoutingMode mode = RoutingMode::kSingleHop;
  double epsilon = 0;
  // Single hop: the pair attaining the minimum.
  std::pair<int, int> binding_pair{-1, -1};
  // Multi hop: best dual (upper) bound on the optimum and phases run.
  double upper_bound = 0;
  int phases = 0;
  // Multi hop: path flows carrying exactly theta * demand per commodity and
  // respecting every capacity.
  std::vector<PathFlow> certificate;
};

// theta = min over pairs with demand of cap / demand.
ThroughputReport SingleHopThroughput(const SquareMatrix<double>& demand,
                                     const CapacityMatrix& cap);
ThroughputReport SingleHopThroughput(const TrafficMatrix& m, const CapacityMatrix& cap);

// Maximum concurrent flow over the emulated graph, unrestricted hop count.
// Garg-Koenemann multiplicative weights (paths grouped by source) run with
// eps/3; stops as soon as the primal value is within (1 - eps) of the best
// dual bound D(l)/alpha(l), so theta >= (1 - eps) * optimum.
// Throws Error{InvalidEpsilon} unless 0 < eps <= 0.5, Error{ZeroDemand}.
ThroughputReport MaxConcurrentFlow(const CapacityMatrix& cap,
                                   const SquareMatrix<double>& demand, double eps);

// Largest amount by which the certificate overloads any edge (<= 0 when
// feasible) or misses theta * demand on any commodity.
double CertificateViolation(const CapacityMatrix& cap, const SquareMatrix<double>& demand,
                            const ThroughputReport& report);

// (k - 1) / k * duty.
double AwareThroughputBound(int k, double duty);

// Builds the traffic-aware schedule and checks single-hop throughput against
// (k - 1) / k * duty with 1e-12 slack. Zero demand passes.
bool VerifyAwareThroughputBound(const TrafficMatrix& m, int k, const SlotTiming& timing,
                                std::uint64_t seed);

struct SweepRow {
  int k = 0;
  double min_theta = 0;
  double bound = 0;
};

// For each k in [k_min, k_max], the minimum single-hop throughput over
// `trials` random saturated hose matrices (shared across k).
std::vector<SweepRow> ThroughputSweep(int n, int degree, int k_min, int k_max,
                                      int trials, std::uint64_t seed,
                                      const SlotTiming& timing, int jobs = 1);

std::string ReportToJson(const ThroughputReport& report, bool include_certificate);

}  // namespace vermilion

#endif  // VERMILION_THROUGHPUT_H_
