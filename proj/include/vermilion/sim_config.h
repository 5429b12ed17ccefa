#ifndef VERMILION_SIM_CONFIG_H_
#define VERMILION_SIM_CONFIG_H_

#include <cstdint>
#include <string>

namespace vermilion {

enum class SimRouting { kDirect, kVlb };

// Simulation parameters. The text form is one `key = value` per line with
// '#' comments; keys match the field names below.
struct SimConfig {
  int n = 16;
  int degree = 4;
  double link_gbps = 100;
  int packet_bytes = 1500;
  SimRouting routing = SimRouting::kDirect;
  double load = 0.1;  // fraction of c * degree offered per source
  // builtin:heavy_tailed | constant:<bytes> | cdf:<path>
  std::string flow_size = "builtin:heavy_tailed";
  // uniform | permutation | matrix:<path>
  std::string pattern = "permutation";
  std::string arrivals = "poisson";  // poisson | constant
  double duration_s = 0.01;          // arrivals happen in [0, duration)
  double drain_s = 0;                // extra simulated time without arrivals
  std::uint64_t seed = 1;
  // vermilion | oblivious | greedy | file:<schedule.json>
  std::string schedule = "vermilion";
  int k = 3;
  double slot_ns = 4500;
  double reconfig_ns = 500;
  int greedy_slots = 0;  // 0: ceil(k * n / degree)
  bool estimation = false;
  double ewma_alpha = 0.5;
  double recompute_latency_s = 59e-6;
  std::int64_t short_threshold_bytes = 1000000;
  double sample_interval_ns = 10000;
  std::int64_t relay_buffer_bytes = 4000000;
  double propagation_ns = 0;

  double link_capacity() const { return link_gbps * 1e9; }
};

// Throws Error{ConfigInvalid} naming the offending key or line.
SimConfig ParseSimConfig(const std::string& text);
// Applies a single `key=value` override.
void SetSimConfigValue(SimConfig& cfg, const std::string& key, const std::string& value);
// Throws Error{ConfigInvalid} naming the first invalid field.
void ValidateSimConfig(const SimConfig& cfg);
// Canonical text form; parsing it yields an identical config.
std::string SimConfigToText(const SimConfig& cfg);

}  // namespace vermilion

#endif  // VERMILION_SIM_CONFIG_H_
