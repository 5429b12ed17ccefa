#ifndef VERMILION_MATCHING_H_
#define VERMILION_MATCHING_H_

#include <optional>
#include <vector>

#include "vermilion/square_matrix.h"

namespace vermilion {

// One timeslot's circuit configuration: node u transmits to dst[u].
// dst[u] == u is an idle port.
struct Matching {
  std::vector<int> dst;

  int size() const { return static_cast<int>(dst.size()); }
  bool IsBijection() const;
  bool operator==(const Matching&) const = default;

  static Matching Identity(int n);
  // dst[u] = (u + shift) mod n.
  static Matching Rotation(int n, int shift);
};

// Perfect bipartite matching between n left and n right vertices
// (Hopcroft-Karp). `adjacency[u]` lists admissible right vertices for left
// vertex u, scanned in the given order. `warm_start` may hold a partial
// matching (left -> right or -1) consistent with the adjacency.
std::optional<std::vector<int>> FindPerfectMatching(
    const std::vector<std::vector<int>>& adjacency,
    std::vector<int> warm_start = {});

// Assignment maximizing the summed weight (Hungarian method, O(n^3)).
// Returns row -> column.
std::vector<int> MaxWeightAssignment(const SquareMatrix<double>& weights);

}  // namespace vermilion

#endif  // VERMILION_MATCHING_H_
