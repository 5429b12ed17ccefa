#include "vermilion/topology.h"

#include <numeric>
#include <string>

#include "vermilion/error.h"
#include "vermilion/rng.h"

namespace vermilion {

bool Multigraph::IsRegular() const {
  for (int u = 0; u < size(); ++u) {
    if (edge_mult.RowSum(u) != degree_target) return false;
    if (edge_mult.ColSum(u) != degree_target) return false;
  }
  return true;
}

IntegerMatrix ConfigurationFill(const DegreeDeficit& deficit, std::uint64_t seed) {
  const int n = static_cast<int>(deficit.out.size());
  if (static_cast<int>(deficit.in.size()) != n) {
    throw Error(ErrorCode::kDeficitMismatch, "in/out deficit lengths differ");
  }
  const std::int64_t total_out =
      std::accumulate(deficit.out.begin(), deficit.out.end(), std::int64_t{0});
  const std::int64_t total_in =
      std::accumulate(deficit.in.begin(), deficit.in.end(), std::int64_t{0});
  if (total_out != total_in) {
    throw Error(ErrorCode::kDeficitMismatch,
                "out stubs " + std::to_string(total_out) + " != in stubs " +
                    std::to_string(total_in));
  }
  std::vector<int> out_stubs, in_stubs;
  out_stubs.reserve(total_out);
  in_stubs.reserve(total_in);
  for (int u = 0; u < n; ++u) {
    if (deficit.out[u] < 0 || deficit.in[u] < 0) {
      throw Error(ErrorCode::kDeficitMismatch, "negative deficit");
    }
    out_stubs.insert(out_stubs.end(), deficit.out[u], u);
    in_stubs.insert(in_stubs.end(), deficit.in[u], u);
  }
  Rng rng(DeriveSeed(seed, "topology"));
  rng.Shuffle(in_stubs);
  IntegerMatrix delta(n, 0);
  for (std::size_t i = 0; i < out_stubs.size(); ++i) ++delta(out_stubs[i], in_stubs[i]);
  return delta;
}

Multigraph BuildEmulated(const IntegerMatrix& rounded, int k, std::uint64_t seed) {
  const int n = rounded.size();
  if (k < 2) throw Error(ErrorCode::kInvalidK, "k must be >= 2");
  const std::int64_t aware_budget = static_cast<std::int64_t>(k - 1) * n;
  for (int u = 0; u < n; ++u) {
    if (rounded.RowSum(u) > aware_budget || rounded.ColSum(u) > aware_budget) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rounded matrix exceeds (k-1)*n at node " + std::to_string(u));
    }
  }
  Multigraph g{rounded, static_cast<std::int64_t>(k) * n};
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) ++g.edge_mult(u, v);
    }
  }
  DegreeDeficit deficit{std::vector<std::int64_t>(n), std::vector<std::int64_t>(n)};
  for (int u = 0; u < n; ++u) {
    deficit.out[u] = g.degree_target - g.edge_mult.RowSum(u);
    deficit.in[u] = g.degree_target - g.edge_mult.ColSum(u);
  }
  const IntegerMatrix fill = ConfigurationFill(deficit, seed);
  for (std::size_t i = 0; i < fill.data().size(); ++i) {
    g.edge_mult.data()[i] += fill.data()[i];
  }
  return g;
}

}  // namespace vermilion
