#ifndef VERMILION_WORKLOAD_H_
#define VERMILION_WORKLOAD_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vermilion/rng.h"
#include "vermilion/square_matrix.h"

namespace vermilion {

// Piecewise-linear empirical flow-size CDF given as (bytes, cumulative
// probability) points. Probability mass below the first point is placed on
// the first size.
class FlowSizeDistribution {
 public:
  static FlowSizeDistribution Constant(std::int64_t bytes);
  // Throws Error{BadDistributionFile} unless sizes strictly increase,
  // probabilities are nondecreasing within [0, 1] and the last one is 1.
  static FlowSizeDistribution FromPoints(std::vector<std::pair<double, double>> points);
  // Two whitespace- or comma-separated columns per line; '#' comments.
  static FlowSizeDistribution FromFile(const std::string& path);
  // Synthetic heavy-tailed default (~1.7 MB mean, 1 KB to 30 MB).
  static FlowSizeDistribution HeavyTailed();
  // "constant:<bytes>", "cdf:<path>" or "builtin:heavy_tailed".
  static FlowSizeDistribution FromSpec(const std::string& spec);

  std::int64_t Sample(Rng& rng) const;
  double MeanBytes() const;
  const std::vector<std::pair<double, double>>& points() const { return points_; }

 private:
  std::vector<std::pair<double, double>> points_;
};

struct FlowArrival {
  std::int64_t id = 0;
  int src = 0;
  int dst = 0;
  std::int64_t size_bytes = 0;
  double arrival_ns = 0;
};

enum class TrafficPattern { kUniform, kPermutation, kMatrix };
enum class ArrivalProcess { kPoisson, kConstant };

struct WorkloadSpec {
  int n = 16;
  double link_capacity = 100e9;  // bits/s per link
  int degree = 4;
  double load = 0.1;  // fraction of link_capacity * degree per source
  double duration_ns = 1e7;
  TrafficPattern pattern = TrafficPattern::kPermutation;
  // Relative weights for kMatrix (row = source).
  SquareMatrix<double> weights;
  ArrivalProcess arrivals = ArrivalProcess::kPoisson;
  FlowSizeDistribution sizes = FlowSizeDistribution::HeavyTailed();
  std::uint64_t seed = 1;
};

// The fixed pairing used by the permutation pattern: a seeded derangement.
std::vector<int> PatternPermutation(int n, std::uint64_t seed);

// Mean offered rate (bits/s) per ordered pair.
SquareMatrix<double> AverageDemand(const WorkloadSpec& spec);

// Per-source arrivals at rate load * c * d * (row share) / mean size, merged
// and ordered by (arrival time, source); ids follow that order.
std::vector<FlowArrival> GenerateWorkload(const WorkloadSpec& spec);

}  // namespace vermilion

#endif  // VERMILION_WORKLOAD_H_
