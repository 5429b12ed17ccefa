#include "vermilion/decomposition.h"

#include <string>

#include "vermilion/error.h"

namespace vermilion {

std::vector<Matching> DecomposeRegular(const Multigraph& g) {
  const int n = g.size();
  if (!g.IsRegular()) {
    throw Error(ErrorCode::kNotRegular,
                "multigraph is not " + std::to_string(g.degree_target) + "-regular");
  }
  IntegerMatrix remaining = g.edge_mult;
  std::vector<Matching> out;
  out.reserve(g.degree_target);
  std::vector<std::vector<int>> adjacency(n);
  std::vector<int> previous;
  for (std::int64_t step = 0; step < g.degree_target; ++step) {
    for (int u = 0; u < n; ++u) {
      adjacency[u].clear();
      for (int v = 0; v < n; ++v) {
        if (remaining(u, v) > 0) adjacency[u].push_back(v);
      }
    }
    for (int u = 0; u < static_cast<int>(previous.size()); ++u) {
      if (previous[u] >= 0 && remaining(u, previous[u]) == 0) previous[u] = -1;
    }
    auto match = FindPerfectMatching(adjacency, previous);
    if (!match) {
      throw Error(ErrorCode::kMatchingNotFound,
                  "no perfect matching at step " + std::to_string(step));
    }
    for (int u = 0; u < n; ++u) --remaining(u, (*match)[u]);
    out.push_back(Matching{*match});
    previous = std::move(*match);
  }
  return out;
}

PhasedMatchings DecomposeStructured(const Multigraph& g) {
  const int n = g.size();
  if (!g.IsRegular()) {
    throw Error(ErrorCode::kNotRegular, "multigraph is not regular");
  }
  Multigraph remainder{g.edge_mult, g.degree_target - (n - 1)};
  PhasedMatchings out;
  for (int shift = 1; shift < n; ++shift) {
    Matching rotation = Matching::Rotation(n, shift);
    for (int u = 0; u < n; ++u) {
      std::int64_t& mult = remainder.edge_mult(u, rotation.dst[u]);
      if (mult < 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "pair (" + std::to_string(u) + "," +
                        std::to_string(rotation.dst[u]) + ") has no residual edge");
      }
      --mult;
    }
    out.matchings.push_back(std::move(rotation));
    out.phases.push_back(Phase::kRoundRobin);
  }
  for (Matching& m : DecomposeRegular(remainder)) {
    out.matchings.push_back(std::move(m));
    out.phases.push_back(Phase::kAware);
  }
  return out;
}

}  // namespace vermilion
