#include "vermilion/matching.h"

#include <limits>
#include <queue>

namespace vermilion {

bool Matching::IsBijection() const {
  std::vector<bool> seen(dst.size(), false);
  for (int v : dst) {
    if (v < 0 || v >= size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Matching Matching::Identity(int n) { return Rotation(n, 0); }

Matching Matching::Rotation(int n, int shift) {
  Matching m{std::vector<int>(n)};
  for (int u = 0; u < n; ++u) m.dst[u] = ((u + shift) % n + n) % n;
  return m;
}

namespace {

class HopcroftKarp {
 public:
  HopcroftKarp(const std::vector<std::vector<int>>& adjacency,
               std::vector<int> warm_start)
      : adj_(adjacency),
        n_(static_cast<int>(adjacency.size())),
        match_left_(std::move(warm_start)),
        match_right_(n_, -1),
        dist_(n_) {
    if (static_cast<int>(match_left_.size()) != n_) match_left_.assign(n_, -1);
    for (int u = 0; u < n_; ++u) {
      if (match_left_[u] >= 0) match_right_[match_left_[u]] = u;
    }
  }

  bool Run() {
    int matched = 0;
    for (int v : match_left_) matched += v >= 0;
    while (matched < n_ && Bfs()) {
      for (int u = 0; u < n_; ++u) {
        if (match_left_[u] < 0 && Dfs(u)) ++matched;
      }
    }
    return matched == n_;
  }

  std::vector<int> TakeMatching() { return std::move(match_left_); }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool Bfs() {
    std::queue<int> q;
    for (int u = 0; u < n_; ++u) {
      if (match_left_[u] < 0) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        const int w = match_right_[v];
        if (w < 0) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool Dfs(int u) {
    for (int v : adj_[u]) {
      const int w = match_right_[v];
      if (w < 0 || (dist_[w] == dist_[u] + 1 && Dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  int n_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> dist_;
};

}  // namespace

std::optional<std::vector<int>> FindPerfectMatching(
    const std::vector<std::vector<int>>& adjacency,
    std::vector<int> warm_start) {
  HopcroftKarp hk(adjacency, std::move(warm_start));
  if (!hk.Run()) return std::nullopt;
  return hk.TakeMatching();
}

std::vector<int> MaxWeightAssignment(const SquareMatrix<double>& weights) {
  // Shortest augmenting path Hungarian on costs = -weights, 1-indexed.
  const int n = weights.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -weights(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] > 0) assignment[p[j] - 1] = j - 1;
  }
  return assignment;
}

}  // namespace vermilion
