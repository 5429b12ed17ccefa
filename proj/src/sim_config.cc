#include "vermilion/sim_config.h"

#include <charconv>
#include <sstream>

#include "vermilion/error.h"
#include "vermilion/matrix_io.h"

namespace vermilion {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void Invalid(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::kConfigInvalid, key + ": " + why);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    Invalid(key, "cannot parse '" + value + "'");
  }
  return out;
}

bool ParseBool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  Invalid(key, "expected true or false, got '" + value + "'");
}

}  // namespace

void SetSimConfigValue(SimConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") cfg.n = ParseNumber<int>(key, value);
  else if (key == "degree") cfg.degree = ParseNumber<int>(key, value);
  else if (key == "link_gbps") cfg.link_gbps = ParseNumber<double>(key, value);
  else if (key == "packet_bytes") cfg.packet_bytes = ParseNumber<int>(key, value);
  else if (key == "routing") {
    if (value == "direct") cfg.routing = SimRouting::kDirect;
    else if (value == "vlb") cfg.routing = SimRouting::kVlb;
    else Invalid(key, "expected direct or vlb, got '" + value + "'");
  } else if (key == "load") cfg.load = ParseNumber<double>(key, value);
  else if (key == "flow_size") cfg.flow_size = value;
  else if (key == "pattern") cfg.pattern = value;
  else if (key == "arrivals") cfg.arrivals = value;
  else if (key == "duration_s") cfg.duration_s = ParseNumber<double>(key, value);
  else if (key == "drain_s") cfg.drain_s = ParseNumber<double>(key, value);
  else if (key == "seed") cfg.seed = ParseNumber<std::uint64_t>(key, value);
  else if (key == "schedule") cfg.schedule = value;
  else if (key == "k") cfg.k = ParseNumber<int>(key, value);
  else if (key == "slot_ns") cfg.slot_ns = ParseNumber<double>(key, value);
  else if (key == "reconfig_ns") cfg.reconfig_ns = ParseNumber<double>(key, value);
  else if (key == "greedy_slots") cfg.greedy_slots = ParseNumber<int>(key, value);
  else if (key == "estimation") cfg.estimation = ParseBool(key, value);
  else if (key == "ewma_alpha") cfg.ewma_alpha = ParseNumber<double>(key, value);
  else if (key == "recompute_latency_s") cfg.recompute_latency_s = ParseNumber<double>(key, value);
  else if (key == "short_threshold_bytes")
    cfg.short_threshold_bytes = ParseNumber<std::int64_t>(key, value);
  else if (key == "sample_interval_ns") cfg.sample_interval_ns = ParseNumber<double>(key, value);
  else if (key == "relay_buffer_bytes")
    cfg.relay_buffer_bytes = ParseNumber<std::int64_t>(key, value);
  else if (key == "propagation_ns") cfg.propagation_ns = ParseNumber<double>(key, value);
  else throw Error(ErrorCode::kConfigInvalid, "unknown key '" + key + "'");
}

SimConfig ParseSimConfig(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigInvalid,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    SetSimConfigValue(cfg, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
  }
  return cfg;
}

void ValidateSimConfig(const SimConfig& cfg) {
  if (cfg.n < 2) Invalid("n", "must be at least 2");
  if (cfg.degree < 1) Invalid("degree", "must be at least 1");
  if (!(cfg.link_gbps > 0)) Invalid("link_gbps", "must be positive");
  if (cfg.packet_bytes < 1) Invalid("packet_bytes", "must be positive");
  if (!(cfg.load > 0 && cfg.load <= 1)) Invalid("load", "must lie in (0, 1]");
  if (cfg.arrivals != "poisson" && cfg.arrivals != "constant") {
    Invalid("arrivals", "expected poisson or constant");
  }
  if (cfg.pattern != "uniform" && cfg.pattern != "permutation" &&
      cfg.pattern.rfind("matrix:", 0) != 0) {
    Invalid("pattern", "expected uniform, permutation or matrix:<path>");
  }
  if (cfg.schedule != "vermilion" && cfg.schedule != "oblivious" &&
      cfg.schedule != "greedy" && cfg.schedule.rfind("file:", 0) != 0) {
    Invalid("schedule", "expected vermilion, oblivious, greedy or file:<path>");
  }
  if (!(cfg.duration_s > 0)) Invalid("duration_s", "must be positive");
  if (!(cfg.drain_s >= 0)) Invalid("drain_s", "must be nonnegative");
  if (cfg.k < 2) Invalid("k", "must be at least 2");
  if (!(cfg.slot_ns > 0)) Invalid("slot_ns", "must be positive");
  if (!(cfg.reconfig_ns >= 0 && cfg.reconfig_ns < cfg.slot_ns)) {
    Invalid("reconfig_ns", "must lie in [0, slot_ns)");
  }
  const double window_bits = cfg.link_capacity() * (cfg.slot_ns - cfg.reconfig_ns) * 1e-9;
  if (cfg.packet_bytes * 8.0 > window_bits) {
    Invalid("packet_bytes", "a packet does not fit in one slot's transmission window");
  }
  if (cfg.greedy_slots < 0) Invalid("greedy_slots", "must be nonnegative");
  if (!(cfg.ewma_alpha > 0 && cfg.ewma_alpha <= 1)) Invalid("ewma_alpha", "must lie in (0, 1]");
  if (!(cfg.recompute_latency_s >= 0)) Invalid("recompute_latency_s", "must be nonnegative");
  if (cfg.estimation && cfg.schedule != "vermilion") {
    Invalid("estimation", "requires schedule = vermilion");
  }
  if (cfg.short_threshold_bytes < 0) Invalid("short_threshold_bytes", "must be nonnegative");
  if (!(cfg.sample_interval_ns > 0)) Invalid("sample_interval_ns", "must be positive");
  if (cfg.relay_buffer_bytes < cfg.packet_bytes) {
    Invalid("relay_buffer_bytes", "must hold at least one packet");
  }
  if (!(cfg.propagation_ns >= 0)) Invalid("propagation_ns", "must be nonnegative");
}

std::string SimConfigToText(const SimConfig& cfg) {
  std::ostringstream out;
  out << "n = " << cfg.n << "\n"
      << "degree = " << cfg.degree << "\n"
      << "link_gbps = " << FormatDouble(cfg.link_gbps) << "\n"
      << "packet_bytes = " << cfg.packet_bytes << "\n"
      << "routing = " << (cfg.routing == SimRouting::kDirect ? "direct" : "vlb") << "\n"
      << "load = " << FormatDouble(cfg.load) << "\n"
      << "flow_size = " << cfg.flow_size << "\n"
      << "pattern = " << cfg.pattern << "\n"
      << "arrivals = " << cfg.arrivals << "\n"
      << "duration_s = " << FormatDouble(cfg.duration_s) << "\n"
      << "drain_s = " << FormatDouble(cfg.drain_s) << "\n"
      << "seed = " << cfg.seed << "\n"
      << "schedule = " << cfg.schedule << "\n"
      << "k = " << cfg.k << "\n"
      << "slot_ns = " << FormatDouble(cfg.slot_ns) << "\n"
      << "reconfig_ns = " << FormatDouble(cfg.reconfig_ns) << "\n"
      << "greedy_slots = " << cfg.greedy_slots << "\n"
      << "estimation = " << (cfg.estimation ? "true" : "false") << "\n"
      << "ewma_alpha = " << FormatDouble(cfg.ewma_alpha) << "\n"
      << "recompute_latency_s = " << FormatDouble(cfg.recompute_latency_s) << "\n"
      << "short_threshold_bytes = " << cfg.short_threshold_bytes << "\n"
      << "sample_interval_ns = " << FormatDouble(cfg.sample_interval_ns) << "\n"
      << "relay_buffer_bytes = " << cfg.relay_buffer_bytes << "\n"
      << "propagation_ns = " << FormatDouble(cfg.propagation_ns) << "\n";
  return out.str();
}

}  // namespace vermilion
