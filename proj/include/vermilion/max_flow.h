#ifndef VERMILION_MAX_FLOW_H_
#define VERMILION_MAX_FLOW_H_

#include <cstdint>
#include <vector>

namespace vermilion {

// Integer max-flow (Dinic). Arcs are scanned in insertion order, so the
// resulting flow is a deterministic function of the construction sequence.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adjacency_(nodes) {}

  // Returns an arc id usable with Flow().
  int AddArc(int from, int to, std::int64_t capacity);

  std::int64_t MaxFlow(int source, int sink);

  std::int64_t Flow(int arc) const { return arcs_[2 * arc + 1].capacity; }

 private:
  struct Arc {
    int to;
    std::int64_t capacity;  // residual capacity
  };

  bool BuildLevels(int source, int sink);
  std::int64_t Push(int node, int sink, std::int64_t limit);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace vermilion

#endif  // VERMILION_MAX_FLOW_H_
