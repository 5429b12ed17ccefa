#include "vermilion/max_flow.h"

#include <algorithm>
#include <limits>
#include <queue>

namespace vermilion {

int FlowNetwork::AddArc(int from, int to, std::int64_t capacity) {
  const int id = static_cast<int>(arcs_.size() / 2);
  adjacency_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, capacity});
  adjacency_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, 0});
  return id;
}

bool FlowNetwork::BuildLevels(int source, int sink) {
  level_.assign(adjacency_.size(), -1);
  std::queue<int> frontier;
  level_[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int node = frontier.front();
    frontier.pop();
    for (int a : adjacency_[node]) {
      const Arc& arc = arcs_[a];
      if (arc.capacity > 0 && level_[arc.to] < 0) {
        level_[arc.to] = level_[node] + 1;
        frontier.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int64_t FlowNetwork::Push(int node, int sink, std::int64_t limit) {
  if (node == sink) return limit;
  for (std::size_t& i = cursor_[node]; i < adjacency_[node].size(); ++i) {
    const int a = adjacency_[node][i];
    Arc& arc = arcs_[a];
    if (arc.capacity <= 0 || level_[arc.to] != level_[node] + 1) continue;
    const std::int64_t pushed =
        Push(arc.to, sink, std::min(limit, arc.capacity));
    if (pushed > 0) {
      arc.capacity -= pushed;
      arcs_[a ^ 1].capacity += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t FlowNetwork::MaxFlow(int source, int sink) {
  std::int64_t total = 0;
  while (BuildLevels(source, sink)) {
    cursor_.assign(adjacency_.size(), 0);
    while (std::int64_t pushed = Push(source, sink,
                                      std::numeric_limits<std::int64_t>::max())) {
      total += pushed;
    }
  }
  return total;
}

}  // namespace vermilion
