#include "vermilion/workload.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "vermilion/error.h"
#include "vermilion/matrix_io.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {

FlowSizeDistribution FlowSizeDistribution::Constant(std::int64_t bytes) {
  if (bytes < 1) throw Error(ErrorCode::kBadDistributionFile, "constant size must be >= 1");
  FlowSizeDistribution d;
  d.points_ = {{static_cast<double>(bytes), 1.0}};
  return d;
}

FlowSizeDistribution FlowSizeDistribution::FromPoints(
    std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw Error(ErrorCode::kBadDistributionFile, "empty CDF");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [bytes, prob] = points[i];
    if (!(bytes >= 1) || !(prob >= 0 && prob <= 1)) {
      throw Error(ErrorCode::kBadDistributionFile,
                  "point " + std::to_string(i) + " out of range");
    }
    if (i > 0 && !(bytes > points[i - 1].first && prob >= points[i - 1].second)) {
      throw Error(ErrorCode::kBadDistributionFile,
                  "CDF must increase (point " + std::to_string(i) + ")");
    }
  }
  if (points.back().second != 1.0) {
    throw Error(ErrorCode::kBadDistributionFile, "CDF must end at probability 1");
  }
  FlowSizeDistribution d;
  d.points_ = std::move(points);
  return d;
}

FlowSizeDistribution FlowSizeDistribution::FromFile(const std::string& path) {
  std::string text;
  try {
    text = ReadFileToString(path);
  } catch (const Error&) {
    throw Error(ErrorCode::kBadDistributionFile, "cannot open " + path);
  }
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<double, double>> points;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream cols(line);
    double bytes, prob;
    if (!(cols >> bytes)) continue;
    if (!(cols >> prob)) {
      throw Error(ErrorCode::kBadDistributionFile, path + ": expected two columns");
    }
    points.emplace_back(bytes, prob);
  }
  return FromPoints(std::move(points));
}

FlowSizeDistribution FlowSizeDistribution::HeavyTailed() {
  return FromPoints({{1e3, 0.0},
                     {1e4, 0.15},
                     {2e4, 0.2},
                     {3e4, 0.3},
                     {5e4, 0.4},
                     {8e4, 0.53},
                     {2e5, 0.6},
                     {1e6, 0.7},
                     {2e6, 0.8},
                     {5e6, 0.9},
                     {1e7, 0.97},
                     {3e7, 1.0}});
}

FlowSizeDistribution FlowSizeDistribution::FromSpec(const std::string& spec) {
  if (spec == "builtin:heavy_tailed") return HeavyTailed();
  if (spec.rfind("constant:", 0) == 0) {
    const std::string v = spec.substr(9);
    std::int64_t bytes = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), bytes);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw Error(ErrorCode::kBadDistributionFile, "bad constant size '" + v + "'");
    }
    return Constant(bytes);
  }
  if (spec.rfind("cdf:", 0) == 0) return FromFile(spec.substr(4));
  throw Error(ErrorCode::kBadDistributionFile, "unknown flow size spec '" + spec + "'");
}

std::int64_t FlowSizeDistribution::Sample(Rng& rng) const {
  const double u = rng.Uniform01();
  double bytes = points_.back().first;
  if (u <= points_.front().second) {
    bytes = points_.front().first;
  } else {
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const auto [s1, p1] = points_[i];
      if (u <= p1) {
        const auto [s0, p0] = points_[i - 1];
        bytes = p1 > p0 ? s0 + (s1 - s0) * (u - p0) / (p1 - p0) : s1;
        break;
      }
    }
  }
  return std::max<std::int64_t>(1, std::llround(bytes));
}

double FlowSizeDistribution::MeanBytes() const {
  double mean = points_.front().first * points_.front().second;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    mean += (points_[i].second - points_[i - 1].second) *
            (points_[i].first + points_[i - 1].first) / 2;
  }
  return mean;
}

std::vector<int> PatternPermutation(int n, std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, "pattern"));
  return RandomDerangement(n, rng);
}

namespace {

// Relative destination weights per source; rows with zero weight emit nothing.
SquareMatrix<double> PatternWeights(const WorkloadSpec& spec) {
  switch (spec.pattern) {
    case TrafficPattern::kUniform: return UniformDemand(spec.n, 1.0);
    case TrafficPattern::kPermutation:
      return PermutationDemand(PatternPermutation(spec.n, spec.seed), 1.0);
    case TrafficPattern::kMatrix: {
      if (spec.weights.size() != spec.n) {
        throw Error(ErrorCode::kConfigInvalid, "pattern matrix size differs from n");
      }
      SquareMatrix<double> w = spec.weights;
      double max_row = 0;
      for (int u = 0; u < spec.n; ++u) max_row = std::max(max_row, w.RowSum(u));
      if (max_row > 0) {
        for (double& x : w.data()) x /= max_row;
      }
      return w;
    }
  }
  return SquareMatrix<double>(spec.n);
}

}  // namespace

SquareMatrix<double> AverageDemand(const WorkloadSpec& spec) {
  SquareMatrix<double> m = PatternWeights(spec);
  const double rate = spec.load * spec.link_capacity * spec.degree;
  for (double& x : m.data()) x *= rate;
  return m;
}

std::vector<FlowArrival> GenerateWorkload(const WorkloadSpec& spec) {
  std::vector<FlowArrival> flows;
  if (!(spec.load > 0)) return flows;
  const SquareMatrix<double> weights = PatternWeights(spec);
  const double mean_bits = spec.sizes.MeanBytes() * 8;
  for (int src = 0; src < spec.n; ++src) {
    const double share = weights.RowSum(src);
    if (!(share > 0)) continue;
    const double rate_per_ns =
        spec.load * spec.link_capacity * spec.degree * share / mean_bits * 1e-9;
    Rng rng(DeriveSeed(spec.seed, "workload", src));
    double t = 0;
    std::int64_t index = 0;
    while (true) {
      t = spec.arrivals == ArrivalProcess::kPoisson
              ? t + rng.Exponential(rate_per_ns)
              : static_cast<double>(index) / rate_per_ns;
      ++index;
      if (t >= spec.duration_ns) break;
      // Destination drawn in proportion to the source's row.
      double pick = rng.Uniform01() * share;
      int dst = -1;
      for (int v = 0; v < spec.n; ++v) {
        if (weights(src, v) <= 0) continue;
        dst = v;
        if (pick < weights(src, v)) break;
        pick -= weights(src, v);
      }
      flows.push_back({0, src, dst, spec.sizes.Sample(rng), t});
    }
  }
  std::sort(flows.begin(), flows.end(), [](const FlowArrival& a, const FlowArrival& b) {
    return a.arrival_ns != b.arrival_ns ? a.arrival_ns < b.arrival_ns : a.src < b.src;
  });
  for (std::size_t i = 0; i < flows.size(); ++i) flows[i].id = static_cast<std::int64_t>(i);
  return flows;
}

}  // namespace vermilion
