#ifndef VERMILION_SIMULATOR_H_
#define VERMILION_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vermilion/schedule.h"
#include "vermilion/sim_config.h"
#include "vermilion/square_matrix.h"
#include "vermilion/workload.h"

namespace vermilion {

inline constexpr int kCounterBits = 16;
inline constexpr std::uint16_t kCounterMax = 65535;

// One node's quantized per-destination demand.
struct EstimateArray {
  int owner = 0;
  std::vector<std::uint16_t> counts;
};

// entry = min(65535, floor(bits * (k - 1) / (k * c * slot))).
EstimateArray QuantizeCounters(int owner, const std::vector<double>& voq_bytes, int k,
                               double link_capacity, double slot_ns);

// Bytes a node attaches to a round-robin circuit: its own row, 16 bits per
// entry.
inline int EstimatePayloadBytes(int n) { return n * kCounterBits / 8; }

// Row dissemination over the round-robin phase. Each node starts with its
// own row and forwards it on every round-robin circuit; after a full
// rotation every node holds all rows.
class AllGather {
 public:
  explicit AllGather(int n);

  void Reset(const std::vector<EstimateArray>& own_rows);
  void Transfer(int src, int dst);
  int HeldRows(int node) const;
  bool Complete() const;
  // Rows not yet received are zero.
  SquareMatrix<double> Matrix(int node) const;

 private:
  int n_;
  std::vector<EstimateArray> rows_;
  std::vector<std::vector<bool>> held_;  // [node][row]
};

struct FlowRecord {
  std::int64_t id = 0;
  int src = 0;
  int dst = 0;
  std::int64_t size_bytes = 0;
  double arrival_ns = 0;
  std::optional<double> completion_ns;  // empty while unfinished
};

struct UtilizationSample {
  double time_ns = 0;
  int node = 0;
  double utilization = 0;
};

struct ScheduleUpdate {
  double trigger_ns = 0;
  double install_ns = 0;
};

struct FctStats {
  std::int64_t count = 0;
  double p50_ns = 0;
  double p99_ns = 0;
};

struct SimReport {
  std::vector<FlowRecord> flows;
  std::vector<UtilizationSample> utilization;  // ordered by (time, node)
  std::vector<ScheduleUpdate> updates;
  FctStats short_fct;
  FctStats long_fct;
  std::int64_t short_threshold_bytes = 0;
  std::int64_t unfinished = 0;
  double mean_utilization = 0;
  std::int64_t bytes_injected = 0;
  std::int64_t bytes_delivered = 0;
  std::int64_t relay_drops = 0;
};

struct ConservationSnapshot {
  double time_ns = 0;
  std::int64_t injected = 0;
  std::int64_t delivered = 0;
  std::int64_t queued = 0;  // source and relay queues
  std::int64_t in_flight = 0;
};

struct Transmission {
  int plane = 0;
  double slot_start_ns = 0;
  double window_end_ns = 0;  // start of the reconfiguration tail
  int from = 0;
  int to = 0;
  std::int64_t flow = 0;
  int bytes = 0;
  double start_ns = 0;
  double end_ns = 0;
  bool final_hop = true;
};

// Hooks for tests and tracing; all default to no-ops.
class SimObserver {
 public:
  virtual ~SimObserver() = default;
  virtual void OnSlotBoundary(const ConservationSnapshot&) {}
  virtual void OnTransmit(const Transmission&) {}
  // Called at the end of every round-robin phase with each node's EWMA view.
  virtual void OnEstimates(double /*time_ns*/, const std::vector<SquareMatrix<double>>&) {}
  virtual void OnInstall(double /*time_ns*/, const PeriodicSchedule&) {}
};

struct SimInputs {
  std::vector<FlowArrival> trace;
  PeriodicSchedule schedule;
};

// Builds the workload and the initial schedule named by cfg.schedule.
SimInputs PrepareSimulation(const SimConfig& cfg);

// Throws Error{ConfigInvalid}.
SimReport RunSimulation(const SimConfig& cfg, SimObserver* observer = nullptr);
// Uses the given trace and schedule; cfg.schedule and workload fields are
// ignored except for estimation settings.
SimReport RunSimulation(const SimConfig& cfg, const SimInputs& inputs,
                        SimObserver* observer = nullptr);

// Nearest-rank percentile of a nonempty sample.
double Percentile(std::vector<double> values, double p);

std::string FlowsCsv(const SimReport& r);
std::string UtilizationCsv(const SimReport& r);
std::string UpdatesCsv(const SimReport& r);
std::string SummaryJson(const SimReport& r);
// Writes flows.csv, utilization.csv, updates.csv and summary.json.
void WriteSimReport(const SimReport& r, const std::string& dir);

}  // namespace vermilion

#endif  // VERMILION_SIMULATOR_H_
