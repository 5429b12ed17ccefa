#ifndef VERMILION_DECOMPOSITION_H_
#define VERMILION_DECOMPOSITION_H_

#include <vector>

#include "vermilion/matching.h"
#include "vermilion/topology.h"

namespace vermilion {

enum class Phase { kRoundRobin, kAware, kOblivious };

struct PhasedMatchings {
  std::vector<Matching> matchings;
  std::vector<Phase> phases;  // parallel to matchings
};

// Splits a d-regular multigraph into exactly d perfect matchings whose edge
// multiset union is the graph. Each step extracts a perfect matching on the
// support of the remaining multiplicities (scanned in ascending column
// order), warm-started from the previous one.
// Throws Error{NotRegular}; Error{MatchingNotFound} signals a bug.
std::vector<Matching> DecomposeRegular(const Multigraph& g);

// Emits the n - 1 rotations u -> u + i (the residual complete graph) as a
// round-robin block, followed by DecomposeRegular of the remainder tagged as
// traffic-aware. Requires every off-diagonal multiplicity >= 1.
PhasedMatchings DecomposeStructured(const Multigraph& g);

}  // namespace vermilion

#endif  // VERMILION_DECOMPOSITION_H_
