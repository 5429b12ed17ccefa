#include "vermilion/throughput.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include <json.hpp>

#include "vermilion/error.h"
#include "vermilion/rng.h"

namespace vermilion {

ThroughputReport SingleHopThroughput(const SquareMatrix<double>& demand,
                                     const CapacityMatrix& cap) {
  ThroughputReport r;
  r.mode = RoutingMode::kSingleHop;
  r.unbounded = true;
  const int n = demand.size();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const double m = demand(u, v);
      if (!(m > 0)) continue;
      const double ratio = cap.cap(u, v) / m;
      if (r.unbounded || ratio < r.theta) {
        r.theta = ratio;
        r.binding_pair = {u, v};
        r.unbounded = false;
      }
    }
  }
  if (r.unbounded) r.theta = 0;
  return r;
}

ThroughputReport SingleHopThroughput(const TrafficMatrix& m, const CapacityMatrix& cap) {
  return SingleHopThroughput(m.entries(), cap);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Commodity {
  int dst;
  double demand;
  double routed = 0;
  std::map<std::vector<int>, double> paths;
};

class ConcurrentFlowSolver {
 public:
  ConcurrentFlowSolver(const CapacityMatrix& cap, const SquareMatrix<double>& demand,
                       double eps)
      : n_(cap.cap.size()), eps_(eps), inner_eps_(eps / 3), edge_(n_, -1), by_source_(n_) {
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        if (u != v && cap.cap(u, v) > 0) {
          edge_(u, v) = static_cast<int>(capacity_.size());
          capacity_.push_back(cap.cap(u, v));
        }
      }
    }
    for (int s = 0; s < n_; ++s) {
      for (int t = 0; t < n_; ++t) {
        if (s != t && demand(s, t) > 0) by_source_[s].push_back(Commodity{t, demand(s, t), 0, {}});
      }
    }
    length_.resize(capacity_.size());
    flow_.assign(capacity_.size(), 0);
    for (std::size_t e = 0; e < capacity_.size(); ++e) length_[e] = 1.0 / capacity_[e];
    const double m = std::max<double>(2, capacity_.size());
    log_delta_ = -std::log(m / (1 - inner_eps_)) / inner_eps_;
    dist_.resize(n_);
    parent_.resize(n_);
    done_.resize(n_);
  }

  ThroughputReport Solve() {
    ThroughputReport r;
    r.mode = RoutingMode::kMultiHop;
    r.epsilon = eps_;
    double best_dual = kInf;
    constexpr int kMaxPhases = 1000000;
    int phase = 0;
    for (; phase < kMaxPhases; ++phase) {
      double alpha = 0;
      for (int s = 0; s < n_; ++s) {
        if (by_source_[s].empty()) continue;
        ShortestPaths(s);
        for (const Commodity& c : by_source_[s]) {
          if (dist_[c.dst] == kInf) {
            // Some commodity cannot be routed at all.
            r.theta = 0;
            r.upper_bound = 0;
            r.phases = phase;
            return r;
          }
          alpha += c.demand * dist_[c.dst];
        }
      }
      double weighted = 0;
      for (std::size_t e = 0; e < capacity_.size(); ++e) weighted += length_[e] * capacity_[e];
      best_dual = std::min(best_dual, weighted / alpha);
      const double primal = PrimalValue();
      if (primal >= (1 - eps_) * best_dual) break;
      if (std::log(weighted) + log_offset_ + log_delta_ >= 0) break;
      RoutePhase();
    }
    r.phases = phase;
    r.upper_bound = best_dual;
    r.theta = PrimalValue();
    BuildCertificate(r);
    return r;
  }

 private:
  double MaxUtilization() const {
    double worst = 0;
    for (std::size_t e = 0; e < capacity_.size(); ++e) {
      worst = std::max(worst, flow_[e] / capacity_[e]);
    }
    return worst;
  }

  double PrimalValue() const {
    const double util = MaxUtilization();
    if (util <= 0) return 0;
    double ratio = kInf;
    for (const auto& group : by_source_) {
      for (const Commodity& c : group) ratio = std::min(ratio, c.routed / c.demand);
    }
    return ratio / util;
  }

  // Dense Dijkstra; ties resolve to the lowest node index.
  void ShortestPaths(int source) {
    std::fill(dist_.begin(), dist_.end(), kInf);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::fill(done_.begin(), done_.end(), false);
    dist_[source] = 0;
    for (int iter = 0; iter < n_; ++iter) {
      int u = -1;
      for (int v = 0; v < n_; ++v) {
        if (!done_[v] && dist_[v] < kInf && (u < 0 || dist_[v] < dist_[u])) u = v;
      }
      if (u < 0) break;
      done_[u] = true;
      for (int v = 0; v < n_; ++v) {
        const int e = edge_(u, v);
        if (e < 0 || done_[v]) continue;
        const double candidate = dist_[u] + length_[e];
        if (candidate < dist_[v]) {
          dist_[v] = candidate;
          parent_[v] = u;
        }
      }
    }
  }

  void RoutePhase() {
    for (int s = 0; s < n_; ++s) {
      auto& group = by_source_[s];
      if (group.empty()) continue;
      std::vector<double> remaining;
      for (const Commodity& c : group) remaining.push_back(c.demand);
      bool pending = true;
      while (pending) {
        pending = false;
        ShortestPaths(s);
        for (std::size_t j = 0; j < group.size(); ++j) {
          if (remaining[j] <= 0) continue;
          Commodity& c = group[j];
          std::vector<int> nodes{c.dst};
          double bottleneck = remaining[j];
          for (int v = c.dst; v != s; v = parent_[v]) {
            nodes.push_back(parent_[v]);
            bottleneck = std::min(bottleneck, capacity_[edge_(parent_[v], v)]);
          }
          std::reverse(nodes.begin(), nodes.end());
          // Keep using this path while it stays within (1 + eps') of the
          // distance it was selected at; lengths only grow, so it remains an
          // approximate shortest path.
          const double limit = (1 + inner_eps_) * dist_[c.dst];
          double path_length = 0;
          for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            path_length += length_[edge_(nodes[i], nodes[i + 1])];
          }
          while (remaining[j] > 0 && path_length <= limit) {
            const double amount = std::min(bottleneck, remaining[j]);
            path_length = 0;
            for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
              const int e = edge_(nodes[i], nodes[i + 1]);
              flow_[e] += amount;
              length_[e] *= 1 + inner_eps_ * amount / capacity_[e];
              path_length += length_[e];
            }
            c.routed += amount;
            c.paths[nodes] += amount;
            remaining[j] -= amount;
            // Guard against float residue leaving a sliver of demand.
            if (remaining[j] <= 1e-12 * c.demand) remaining[j] = 0;
          }
          pending = pending || remaining[j] > 0;
        }
        Renormalize();
      }
    }
  }

  void Renormalize() {
    const double biggest = *std::max_element(length_.begin(), length_.end());
    if (biggest < 1e200) return;
    for (double& l : length_) l *= 1e-200;
    log_offset_ += 200 * std::log(10.0);
  }

  void BuildCertificate(ThroughputReport& r) const {
    const double util = MaxUtilization();
    if (util <= 0) return;
    for (int s = 0; s < n_; ++s) {
      for (const Commodity& c : by_source_[s]) {
        // Trim each commodity to exactly theta * demand.
        const double keep = r.theta * c.demand / (c.routed / util);
        for (const auto& [nodes, amount] : c.paths) {
          r.certificate.push_back({s, c.dst, nodes, amount / util * keep});
        }
      }
    }
  }

  int n_;
  double eps_;
  double inner_eps_;
  SquareMatrix<int> edge_;
  std::vector<double> capacity_;
  std::vector<double> length_;
  std::vector<double> flow_;
  std::vector<std::vector<Commodity>> by_source_;
  double log_delta_ = 0;
  double log_offset_ = 0;
  std::vector<double> dist_;
  std::vector<int> parent_;
  std::vector<bool> done_;
};

}  // namespace

ThroughputReport MaxConcurrentFlow(const CapacityMatrix& cap,
                                   const SquareMatrix<double>& demand, double eps) {
  if (!(eps > 0 && eps <= 0.5)) {
    throw Error(ErrorCode::kInvalidEpsilon, "epsilon must lie in (0, 0.5]");
  }
  bool any = false;
  for (int u = 0; u < demand.size(); ++u) {
    for (int v = 0; v < demand.size(); ++v) {
      if (demand(u, v) < 0) throw Error(ErrorCode::kNegativeEntry, "negative demand");
      any = any || (u != v && demand(u, v) > 0);
    }
  }
  if (!any) throw Error(ErrorCode::kZeroDemand, "demand matrix is zero");
  if (cap.cap.size() != demand.size()) {
    throw Error(ErrorCode::kInvalidArgument, "capacity and demand sizes differ");
  }
  return ConcurrentFlowSolver(cap, demand, eps).Solve();
}

double CertificateViolation(const CapacityMatrix& cap, const SquareMatrix<double>& demand,
                            const ThroughputReport& report) {
  const int n = demand.size();
  SquareMatrix<double> load(n), delivered(n);
  double worst = -kInf;
  for (const PathFlow& pf : report.certificate) {
    if (pf.nodes.size() < 2 || pf.nodes.front() != pf.src || pf.nodes.back() != pf.dst) {
      return kInf;
    }
    for (std::size_t i = 0; i + 1 < pf.nodes.size(); ++i) {
      load(pf.nodes[i], pf.nodes[i + 1]) += pf.amount;
    }
    delivered(pf.src, pf.dst) += pf.amount;
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      worst = std::max(worst, load(u, v) - cap.cap(u, v));
      if (u != v && demand(u, v) > 0) {
        worst = std::max(worst, std::abs(delivered(u, v) - report.theta * demand(u, v)));
      }
    }
  }
  return worst;
}

double AwareThroughputBound(int k, double duty) {
  return static_cast<double>(k - 1) / k * duty;
}

bool VerifyAwareThroughputBound(const TrafficMatrix& m, int k, const SlotTiming& timing,
                                std::uint64_t seed) {
  if (m.IsZero()) return true;
  const PeriodicSchedule s = BuildVermilionSchedule(m, k, timing, seed);
  const ThroughputReport r =
      SingleHopThroughput(m, EmulatedCapacities(s, m.link_capacity()));
  return r.unbounded || r.theta >= AwareThroughputBound(k, timing.duty_cycle()) - 1e-12;
}

std::vector<SweepRow> ThroughputSweep(int n, int degree, int k_min, int k_max,
                                      int trials, std::uint64_t seed,
                                      const SlotTiming& timing, int jobs) {
  if (k_min < 2 || k_max < k_min) throw Error(ErrorCode::kInvalidK, "bad k range");
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  const int ks = k_max - k_min + 1;
  // theta[trial][k index]; each trial is computed independently.
  std::vector<std::vector<double>> theta(trials, std::vector<double>(ks));
  const auto run_trial = [&](int trial) {
    Rng rng(DeriveSeed(seed, "sweep-matrix", trial));
    const TrafficMatrix m = ValidateHose(RandomSaturatedHose(n, degree, rng), 1.0, degree);
    for (int i = 0; i < ks; ++i) {
      const PeriodicSchedule s =
          BuildVermilionSchedule(m, k_min + i, timing, DeriveSeed(seed, "sweep-schedule", trial));
      theta[trial][i] = SingleHopThroughput(m, EmulatedCapacities(s, 1.0)).theta;
    }
  };
  jobs = std::max(1, std::min(jobs, trials));
  if (jobs == 1) {
    for (int t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (int t = w; t < trials; t += jobs) run_trial(t);
      });
    }
    for (auto& worker : workers) worker.join();
  }
  std::vector<SweepRow> rows;
  for (int i = 0; i < ks; ++i) {
    double best = kInf;
    for (int t = 0; t < trials; ++t) best = std::min(best, theta[t][i]);
    rows.push_back({k_min + i, best, AwareThroughputBound(k_min + i, timing.duty_cycle())});
  }
  return rows;
}

std::string ReportToJson(const ThroughputReport& report, bool include_certificate) {
  nlohmann::ordered_json doc;
  if (report.unbounded) {
    doc["theta"] = nullptr;
    doc["unbounded"] = true;
  } else {
    doc["theta"] = report.theta;
    doc["unbounded"] = false;
  }
  doc["routing_mode"] = report.mode == RoutingMode::kSingleHop ? "single_hop" : "multi_hop";
  doc["epsilon"] = report.epsilon;
  if (report.mode == RoutingMode::kSingleHop) {
    if (report.unbounded) {
      doc["binding_pair"] = nullptr;
    } else {
      doc["binding_pair"] = {report.binding_pair.first, report.binding_pair.second};
    }
  } else {
    doc["upper_bound"] = report.upper_bound;
    doc["phases"] = report.phases;
    if (include_certificate) {
      auto paths = nlohmann::ordered_json::array();
      for (const PathFlow& pf : report.certificate) {
        nlohmann::ordered_json p;
        p["src"] = pf.src;
        p["dst"] = pf.dst;
        p["nodes"] = pf.nodes;
        p["amount"] = pf.amount;
        paths.push_back(std::move(p));
      }
      doc["certificate"] = std::move(paths);
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace vermilion
