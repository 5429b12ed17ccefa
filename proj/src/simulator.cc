#include "vermilion/simulator.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "vermilion/error.h"
#include "vermilion/matrix_io.h"
#include "vermilion/rng.h"
#include "vermilion/rounding.h"
#include "vermilion/schedule_io.h"

namespace vermilion {

EstimateArray QuantizeCounters(int owner, const std::vector<double>& voq_bytes, int k,
                               double link_capacity, double slot_ns) {
  EstimateArray out;
  out.owner = owner;
  out.counts.reserve(voq_bytes.size());
  const double unit = k * link_capacity * slot_ns * 1e-9;
  for (double bytes : voq_bytes) {
    const double scaled = bytes * 8 * (k - 1) / unit;
    out.counts.push_back(scaled >= kCounterMax
                             ? kCounterMax
                             : static_cast<std::uint16_t>(std::max<std::int64_t>(
                                   0, FloorSnapped(scaled))));
  }
  return out;
}

AllGather::AllGather(int n)
    : n_(n), rows_(n), held_(n, std::vector<bool>(n, false)) {}

void AllGather::Reset(const std::vector<EstimateArray>& own_rows) {
  rows_ = own_rows;
  for (int u = 0; u < n_; ++u) {
    std::fill(held_[u].begin(), held_[u].end(), false);
    held_[u][u] = true;
  }
}

void AllGather::Transfer(int src, int dst) { held_[dst][src] = true; }

int AllGather::HeldRows(int node) const {
  return static_cast<int>(std::count(held_[node].begin(), held_[node].end(), true));
}

bool AllGather::Complete() const {
  for (int u = 0; u < n_; ++u) {
    if (HeldRows(u) != n_) return false;
  }
  return true;
}

SquareMatrix<double> AllGather::Matrix(int node) const {
  SquareMatrix<double> m(n_);
  for (int row = 0; row < n_; ++row) {
    if (!held_[node][row]) continue;
    for (int v = 0; v < n_; ++v) m(row, v) = rows_[row].counts[v];
  }
  return m;
}

double Percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p * values.size()));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

namespace {

struct Chunk {
  std::int64_t flow;
  std::int64_t bytes;
};

struct Delivery {
  double time;
  std::int64_t seq;
  std::int64_t flow;
  int bytes;
  int node;
  bool final_hop;
};

struct Later {
  bool operator()(const Delivery& a, const Delivery& b) const {
    return a.time != b.time ? a.time > b.time : a.seq > b.seq;
  }
};

struct PendingSchedule {
  double trigger_ns;
  double ready_ns;
  PeriodicSchedule schedule;
};

class Simulation {
 public:
  Simulation(const SimConfig& cfg, const SimInputs& in, SimObserver* observer)
      : cfg_(cfg),
        trace_(in.trace),
        schedule_(in.schedule),
        observer_(observer),
        n_(cfg.n),
        c_(cfg.link_capacity()),
        pkt_ns_(cfg.packet_bytes * 8 / c_ * 1e9),
        end_ns_((cfg.duration_s + cfg.drain_s) * 1e9),
        relay_rng_(DeriveSeed(cfg.seed, "vlb-relay")),
        unsent_(trace_.size()),
        undelivered_(trace_.size()),
        completion_(trace_.size()),
        voq_(n_ * n_),
        local_(n_ * n_),
        relay_(n_ * n_),
        toggle_(n_ * n_, false),
        relay_bytes_(n_, 0),
        est_bytes_(n_ * n_, 0.0),
        gather_(n_),
        ewma_(n_, SquareMatrix<double>(n_)) {
    bins_ = static_cast<std::int64_t>(std::floor(end_ns_ / cfg.sample_interval_ns + 1e-9));
    bin_bytes_.assign(bins_ * n_, 0.0);
  }

  SimReport Run();

 private:
  void Admit(double t);
  void DeliverUntil(double t);
  void Transmit(int plane, int u, int v, double start, double slot_start, double window_end);
  void Emit(const Transmission& tx);
  int PickRelay(int src);
  void EnqueueAtSource(std::int64_t flow, int src, std::int64_t bytes);
  void Account(int node, double end, int bytes);
  void BeginRoundRobin();
  void EndRoundRobin(double now);
  ConservationSnapshot Snapshot(double now) const;
  SimReport Finish() const;

  const SimConfig& cfg_;
  const std::vector<FlowArrival>& trace_;
  PeriodicSchedule schedule_;
  SimObserver* observer_;
  int n_;
  double c_;
  double pkt_ns_;
  double end_ns_;
  Rng relay_rng_;

  std::size_t next_arrival_ = 0;
  std::vector<std::int64_t> unsent_;
  std::vector<std::int64_t> undelivered_;
  std::vector<std::optional<double>> completion_;
  std::vector<std::deque<std::int64_t>> voq_;  // direct: flows per (src, dst)
  std::vector<std::deque<Chunk>> local_;       // vlb: (src, first hop)
  std::vector<std::deque<Chunk>> relay_;       // vlb: (relay, dst), one packet each
  std::vector<bool> toggle_;
  std::vector<std::int64_t> relay_bytes_;
  std::priority_queue<Delivery, std::vector<Delivery>, Later> deliveries_;
  std::int64_t seq_ = 0;

  std::int64_t injected_ = 0;
  std::int64_t delivered_ = 0;
  std::int64_t local_queued_ = 0;
  std::int64_t relay_queued_ = 0;
  std::int64_t in_flight_ = 0;
  std::int64_t drops_ = 0;

  std::int64_t bins_ = 0;
  std::vector<double> bin_bytes_;  // [bin * n + node]

  std::vector<double> est_bytes_;  // [src * n + dst], since the last snapshot
  AllGather gather_;
  std::vector<SquareMatrix<double>> ewma_;
  bool ewma_initialized_ = false;
  std::optional<PendingSchedule> pending_;
  std::vector<ScheduleUpdate> updates_;
};

void Simulation::Admit(double t) {
  while (next_arrival_ < trace_.size() && trace_[next_arrival_].arrival_ns <= t) {
    const FlowArrival& f = trace_[next_arrival_];
    const auto id = static_cast<std::int64_t>(next_arrival_);
    ++next_arrival_;
    unsent_[id] = f.size_bytes;
    undelivered_[id] = f.size_bytes;
    injected_ += f.size_bytes;
    local_queued_ += f.size_bytes;
    est_bytes_[f.src * n_ + f.dst] += static_cast<double>(f.size_bytes);
    if (cfg_.routing == SimRouting::kDirect) {
      voq_[f.src * n_ + f.dst].push_back(id);
      continue;
    }
    // Per-packet relay choice, aggregated into one chunk per first hop.
    std::vector<std::int64_t> per_hop(n_, 0);
    for (std::int64_t left = f.size_bytes; left > 0; left -= cfg_.packet_bytes) {
      per_hop[PickRelay(f.src)] += std::min<std::int64_t>(left, cfg_.packet_bytes);
    }
    for (int w = 0; w < n_; ++w) {
      if (per_hop[w] > 0) local_[f.src * n_ + w].push_back({id, per_hop[w]});
    }
  }
}

int Simulation::PickRelay(int src) {
  int w = static_cast<int>(relay_rng_.Uniform(n_ - 1));
  return w >= src ? w + 1 : w;
}

void Simulation::EnqueueAtSource(std::int64_t flow, int src, std::int64_t bytes) {
  local_[src * n_ + PickRelay(src)].push_back({flow, bytes});
  local_queued_ += bytes;
}

void Simulation::Account(int node, double end, int bytes) {
  // Spread over the packet's serialization interval so no bin exceeds line rate.
  const double start = end - pkt_ns_;
  const double width = cfg_.sample_interval_ns;
  auto b = static_cast<std::int64_t>(std::floor(std::max(0.0, start) / width));
  for (; b < bins_; ++b) {
    const double lo = std::max(start, b * width);
    const double hi = std::min(end, (b + 1) * width);
    if (hi <= lo) break;
    bin_bytes_[b * n_ + node] += bytes * (hi - lo) / pkt_ns_;
  }
}

void Simulation::DeliverUntil(double t) {
  while (!deliveries_.empty() && deliveries_.top().time <= t) {
    const Delivery d = deliveries_.top();
    deliveries_.pop();
    in_flight_ -= d.bytes;
    const FlowArrival& f = trace_[d.flow];
    if (d.final_hop) {
      delivered_ += d.bytes;
      Account(d.node, d.time - cfg_.propagation_ns, d.bytes);
      undelivered_[d.flow] -= d.bytes;
      if (undelivered_[d.flow] == 0) completion_[d.flow] = d.time;
    } else if (relay_bytes_[d.node] + d.bytes > cfg_.relay_buffer_bytes) {
      ++drops_;
      EnqueueAtSource(d.flow, f.src, d.bytes);
    } else {
      relay_[d.node * n_ + f.dst].push_back({d.flow, d.bytes});
      relay_bytes_[d.node] += d.bytes;
      relay_queued_ += d.bytes;
    }
  }
}

void Simulation::Emit(const Transmission& tx) {
  in_flight_ += tx.bytes;
  deliveries_.push({tx.end_ns + cfg_.propagation_ns, seq_++, tx.flow, tx.bytes, tx.to,
                    tx.final_hop});
  if (observer_ != nullptr) observer_->OnTransmit(tx);
}

void Simulation::Transmit(int plane, int u, int v, double start, double slot_start,
                          double window_end) {
  Transmission tx{plane, slot_start, window_end, u, v, 0, 0, start, start + pkt_ns_, true};
  const int pair = u * n_ + v;
  if (cfg_.routing == SimRouting::kDirect) {
    auto& q = voq_[pair];
    if (q.empty()) return;
    const std::int64_t f = q.front();
    q.pop_front();
    const std::int64_t bytes = std::min<std::int64_t>(cfg_.packet_bytes, unsent_[f]);
    unsent_[f] -= bytes;
    if (unsent_[f] > 0) q.push_back(f);
    local_queued_ -= bytes;
    tx.flow = f;
    tx.bytes = static_cast<int>(bytes);
    Emit(tx);
    return;
  }
  auto& relayed = relay_[pair];
  auto& local = local_[pair];
  if (relayed.empty() && local.empty()) return;
  const bool from_relay = !relayed.empty() && (local.empty() || toggle_[pair]);
  toggle_[pair] = !from_relay;
  if (from_relay) {
    const Chunk p = relayed.front();
    relayed.pop_front();
    relay_bytes_[u] -= p.bytes;
    relay_queued_ -= p.bytes;
    tx.flow = p.flow;
    tx.bytes = static_cast<int>(p.bytes);
  } else {
    Chunk c = local.front();
    local.pop_front();
    const std::int64_t bytes = std::min<std::int64_t>(cfg_.packet_bytes, c.bytes);
    c.bytes -= bytes;
    if (c.bytes > 0) local.push_back(c);
    local_queued_ -= bytes;
    tx.flow = c.flow;
    tx.bytes = static_cast<int>(bytes);
    tx.final_hop = trace_[c.flow].dst == v;
  }
  Emit(tx);
}

void Simulation::BeginRoundRobin() {
  std::vector<EstimateArray> rows;
  rows.reserve(n_);
  for (int u = 0; u < n_; ++u) {
    const std::vector<double> row(est_bytes_.begin() + u * n_,
                                  est_bytes_.begin() + (u + 1) * n_);
    rows.push_back(QuantizeCounters(u, row, cfg_.k, c_, schedule_.timing.slot_ns));
  }
  std::fill(est_bytes_.begin(), est_bytes_.end(), 0.0);
  gather_.Reset(rows);
}

void Simulation::EndRoundRobin(double now) {
  if (pending_ && now >= pending_->ready_ns) {
    schedule_ = std::move(pending_->schedule);
    updates_.push_back({pending_->trigger_ns, now});
    pending_.reset();
    if (observer_ != nullptr) observer_->OnInstall(now, schedule_);
  }
  const double a = cfg_.ewma_alpha;
  for (int v = 0; v < n_; ++v) {
    const SquareMatrix<double> g = gather_.Matrix(v);
    if (!ewma_initialized_) {
      ewma_[v] = g;
      continue;
    }
    for (std::size_t i = 0; i < g.data().size(); ++i) {
      ewma_[v].data()[i] = a * g.data()[i] + (1 - a) * ewma_[v].data()[i];
    }
  }
  ewma_initialized_ = true;
  if (observer_ != nullptr) observer_->OnEstimates(now, ewma_);
  if (!pending_) {
    pending_ = PendingSchedule{
        now, now + cfg_.recompute_latency_s * 1e9,
        BuildVermilionSchedule(Normalize(ewma_[0]), cfg_.k, cfg_.degree, schedule_.timing,
                               cfg_.seed)};
  }
}

ConservationSnapshot Simulation::Snapshot(double now) const {
  return {now, injected_, delivered_, local_queued_ + relay_queued_, in_flight_};
}

SimReport Simulation::Run() {
  const double slot_ns = schedule_.timing.slot_ns;
  const double window_ns = slot_ns - schedule_.timing.reconfig_ns;
  const auto packets = static_cast<int>(std::floor(window_ns / pkt_ns_ + 1e-9));
  const double payload_ns =
      cfg_.estimation ? EstimatePayloadBytes(n_) * 8 / c_ * 1e9 : 0.0;
  const auto rr_packets =
      static_cast<int>(std::floor((window_ns - payload_ns) / pkt_ns_ + 1e-9));
  int rr_end = 0;
  if (cfg_.estimation) {
    for (const auto& plane : schedule_.phases) {
      for (int s = 0; s < static_cast<int>(plane.size()); ++s) {
        if (plane[s] == Phase::kRoundRobin) rr_end = std::max(rr_end, s + 1);
      }
    }
  }

  int pos = 0;
  for (std::int64_t slot = 0;; ++slot) {
    const double s0 = static_cast<double>(slot) * slot_ns;
    if (s0 >= end_ns_) break;
    const bool in_rr = cfg_.estimation && pos < rr_end;
    if (in_rr) {
      if (pos == 0) BeginRoundRobin();
      for (int p = 0; p < schedule_.degree; ++p) {
        if (schedule_.phases[p][pos] != Phase::kRoundRobin) continue;
        const auto& dst = schedule_.planes[p][pos].dst;
        for (int u = 0; u < n_; ++u) {
          if (dst[u] != u) gather_.Transfer(u, dst[u]);
        }
      }
    }
    for (int j = 0; j < packets; ++j) {
      const double t = s0 + j * pkt_ns_;
      DeliverUntil(t);
      Admit(t);
      for (int p = 0; p < schedule_.degree; ++p) {
        const auto& dst = schedule_.planes[p][pos].dst;
        const bool carries_estimate = in_rr && schedule_.phases[p][pos] == Phase::kRoundRobin;
        if (carries_estimate && j >= rr_packets) continue;
        const double start = carries_estimate ? t + payload_ns : t;
        for (int u = 0; u < n_; ++u) {
          if (dst[u] != u) Transmit(p, u, dst[u], start, s0, s0 + window_ns);
        }
      }
    }
    const double s1 = s0 + slot_ns;
    DeliverUntil(s1);
    Admit(s1);
    if (in_rr && pos == rr_end - 1) EndRoundRobin(s1);
    pos = (pos + 1) % schedule_.period();
    if (observer_ != nullptr) observer_->OnSlotBoundary(Snapshot(s1));
    if (!cfg_.estimation && next_arrival_ == trace_.size() && local_queued_ == 0 &&
        relay_queued_ == 0 && in_flight_ == 0) {
      break;
    }
  }
  DeliverUntil(end_ns_);
  return Finish();
}

FctStats Summarize(const std::vector<double>& fct) {
  FctStats s;
  s.count = static_cast<std::int64_t>(fct.size());
  if (!fct.empty()) {
    s.p50_ns = Percentile(fct, 0.50);
    s.p99_ns = Percentile(fct, 0.99);
  }
  return s;
}

SimReport Simulation::Finish() const {
  SimReport r;
  r.short_threshold_bytes = cfg_.short_threshold_bytes;
  std::vector<double> short_fct, long_fct;
  r.flows.reserve(trace_.size());
  for (std::size_t i = 0; i < trace_.size(); ++i) {
    const FlowArrival& f = trace_[i];
    r.flows.push_back({f.id, f.src, f.dst, f.size_bytes, f.arrival_ns, completion_[i]});
    if (!completion_[i]) {
      ++r.unfinished;
      continue;
    }
    const double fct = *completion_[i] - f.arrival_ns;
    (f.size_bytes <= cfg_.short_threshold_bytes ? short_fct : long_fct).push_back(fct);
  }
  r.short_fct = Summarize(short_fct);
  r.long_fct = Summarize(long_fct);

  const double full = c_ * cfg_.degree * cfg_.sample_interval_ns * 1e-9 / 8;
  r.utilization.reserve(bins_ * n_);
  double sum = 0;
  for (std::int64_t b = 0; b < bins_; ++b) {
    for (int v = 0; v < n_; ++v) {
      const double u = std::min(1.0, bin_bytes_[b * n_ + v] / full);
      r.utilization.push_back({b * cfg_.sample_interval_ns, v, u});
      sum += u;
    }
  }
  r.mean_utilization = r.utilization.empty() ? 0.0 : sum / r.utilization.size();
  r.updates = updates_;
  r.bytes_injected = injected_;
  r.bytes_delivered = delivered_;
  r.relay_drops = drops_;
  return r;
}

}  // namespace

SimInputs PrepareSimulation(const SimConfig& cfg) {
  ValidateSimConfig(cfg);
  WorkloadSpec w;
  w.n = cfg.n;
  w.link_capacity = cfg.link_capacity();
  w.degree = cfg.degree;
  w.load = cfg.load;
  w.duration_ns = cfg.duration_s * 1e9;
  if (cfg.pattern == "uniform") {
    w.pattern = TrafficPattern::kUniform;
  } else if (cfg.pattern == "permutation") {
    w.pattern = TrafficPattern::kPermutation;
  } else {
    w.pattern = TrafficPattern::kMatrix;
    w.weights = ReadMatrixFile(cfg.pattern.substr(7)).entries;
    if (w.weights.size() != cfg.n) {
      throw Error(ErrorCode::kConfigInvalid, "pattern: matrix size differs from n");
    }
  }
  w.arrivals = cfg.arrivals == "constant" ? ArrivalProcess::kConstant : ArrivalProcess::kPoisson;
  w.sizes = FlowSizeDistribution::FromSpec(cfg.flow_size);
  w.seed = cfg.seed;

  SimInputs in;
  in.trace = GenerateWorkload(w);
  const SlotTiming timing{cfg.slot_ns, cfg.reconfig_ns};
  if (cfg.schedule == "vermilion") {
    // The adaptive loop starts from the schedule of an empty matrix.
    const SquareMatrix<double> demand =
        cfg.estimation ? SquareMatrix<double>(cfg.n) : AverageDemand(w);
    in.schedule = BuildVermilionSchedule(Normalize(demand), cfg.k, cfg.degree, timing, cfg.seed);
  } else if (cfg.schedule == "oblivious") {
    in.schedule = BuildObliviousSchedule(cfg.n, cfg.degree, timing);
  } else if (cfg.schedule == "greedy") {
    const int slots = cfg.greedy_slots > 0
                          ? cfg.greedy_slots
                          : (cfg.k * cfg.n + cfg.degree - 1) / cfg.degree;
    in.schedule = BuildGreedySchedule(
        ValidateHose(AverageDemand(w), cfg.link_capacity(), cfg.degree), slots, timing);
  } else {
    in.schedule = ReadScheduleFile(cfg.schedule.substr(5));
  }
  return in;
}

SimReport RunSimulation(const SimConfig& cfg, SimObserver* observer) {
  return RunSimulation(cfg, PrepareSimulation(cfg), observer);
}

SimReport RunSimulation(const SimConfig& cfg, const SimInputs& inputs, SimObserver* observer) {
  ValidateSimConfig(cfg);
  const PeriodicSchedule& s = inputs.schedule;
  if (s.n != cfg.n || s.degree != cfg.degree) {
    throw Error(ErrorCode::kConfigInvalid,
                "schedule: shape " + std::to_string(s.n) + "x" + std::to_string(s.degree) +
                    " differs from n/degree");
  }
  const double window_bits =
      cfg.link_capacity() * (s.timing.slot_ns - s.timing.reconfig_ns) * 1e-9;
  if (cfg.packet_bytes * 8.0 > window_bits) {
    throw Error(ErrorCode::kConfigInvalid, "packet_bytes: does not fit the schedule's slots");
  }
  if (cfg.estimation) {
    bool has_rr = false;
    for (const auto& plane : s.phases) {
      has_rr = has_rr || std::find(plane.begin(), plane.end(), Phase::kRoundRobin) != plane.end();
    }
    if (!has_rr) {
      throw Error(ErrorCode::kConfigInvalid, "estimation: schedule has no round-robin phase");
    }
  }
  for (const FlowArrival& f : inputs.trace) {
    if (f.src < 0 || f.src >= cfg.n || f.dst < 0 || f.dst >= cfg.n || f.src == f.dst ||
        f.size_bytes < 1) {
      throw Error(ErrorCode::kConfigInvalid, "trace: bad flow " + std::to_string(f.id));
    }
  }
  Simulation sim(cfg, inputs, observer);
  return sim.Run();
}

std::string FlowsCsv(const SimReport& r) {
  std::ostringstream out;
  out << "id,src,dst,size_bytes,arrival_ns,completion_ns\n";
  for (const FlowRecord& f : r.flows) {
    out << f.id << ',' << f.src << ',' << f.dst << ',' << f.size_bytes << ','
        << FormatDouble(f.arrival_ns) << ','
        << (f.completion_ns ? FormatDouble(*f.completion_ns) : "") << '\n';
  }
  return out.str();
}

std::string UtilizationCsv(const SimReport& r) {
  std::ostringstream out;
  out << "time_ns,node,utilization\n";
  for (const UtilizationSample& s : r.utilization) {
    out << FormatDouble(s.time_ns) << ',' << s.node << ',' << FormatDouble(s.utilization)
        << '\n';
  }
  return out.str();
}

std::string UpdatesCsv(const SimReport& r) {
  std::ostringstream out;
  out << "trigger_ns,install_ns\n";
  for (const ScheduleUpdate& u : r.updates) {
    out << FormatDouble(u.trigger_ns) << ',' << FormatDouble(u.install_ns) << '\n';
  }
  return out.str();
}

namespace {

nlohmann::ordered_json FctJson(const FctStats& s) {
  nlohmann::ordered_json j;
  j["count"] = s.count;
  if (s.count > 0) {
    j["p50_ns"] = s.p50_ns;
    j["p99_ns"] = s.p99_ns;
  } else {
    j["p50_ns"] = nullptr;
    j["p99_ns"] = nullptr;
  }
  return j;
}

}  // namespace

std::string SummaryJson(const SimReport& r) {
  nlohmann::ordered_json j;
  j["flows"] = r.flows.size();
  j["unfinished"] = r.unfinished;
  j["short_threshold_bytes"] = r.short_threshold_bytes;
  j["short_fct"] = FctJson(r.short_fct);
  j["long_fct"] = FctJson(r.long_fct);
  j["mean_utilization"] = r.mean_utilization;
  j["bytes_injected"] = r.bytes_injected;
  j["bytes_delivered"] = r.bytes_delivered;
  j["relay_drops"] = r.relay_drops;
  j["schedule_updates"] = r.updates.size();
  return j.dump(2) + "\n";
}

void WriteSimReport(const SimReport& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path d(dir);
  WriteStringToFile((d / "flows.csv").string(), FlowsCsv(r));
  WriteStringToFile((d / "utilization.csv").string(), UtilizationCsv(r));
  WriteStringToFile((d / "updates.csv").string(), UpdatesCsv(r));
  WriteStringToFile((d / "summary.json").string(), SummaryJson(r));
}

}  // namespace vermilion
