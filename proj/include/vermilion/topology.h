#ifndef VERMILION_TOPOLOGY_H_
#define VERMILION_TOPOLOGY_H_

#include <cstdint>
#include <vector>

#include "vermilion/rounding.h"

namespace vermilion {

// Directed multigraph stored as an edge multiplicity matrix. Self-loops only
// come from the regularity fill and stand for idle slots.
struct Multigraph {
  IntegerMatrix edge_mult;
  std::int64_t degree_target = 0;

  int size() const { return edge_mult.size(); }
  bool IsRegular() const;
};

// Remaining stubs per node after the traffic-aware and residual stages.
struct DegreeDeficit {
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> in;
};

// Pairs out-stubs (listed by ascending node) with a seeded shuffle of the
// in-stubs. Self-loops and parallel edges are allowed.
// Throws Error{DeficitMismatch} if the stub totals differ.
IntegerMatrix ConfigurationFill(const DegreeDeficit& deficit, std::uint64_t seed);

// rounded + one residual edge per ordered pair + fill to k*n-regularity.
// Throws Error{InvalidArgument} if a row or column of `rounded` exceeds
// (k - 1) * n.
Multigraph BuildEmulated(const IntegerMatrix& rounded, int k, std::uint64_t seed);

}  // namespace vermilion

#endif  // VERMILION_TOPOLOGY_H_
