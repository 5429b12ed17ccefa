#include "commands.h"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "manifest.h"
#include "vermilion/bvn.h"
#include "vermilion/error.h"
#include "vermilion/matrix_io.h"
#include "vermilion/rounding.h"
#include "vermilion/schedule.h"
#include "vermilion/schedule_io.h"
#include "vermilion/sim_config.h"
#include "vermilion/simulator.h"
#include "vermilion/throughput.h"
#include "vermilion/topology.h"

namespace vermilion::cli {
namespace {

namespace fs = std::filesystem;

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// Collects every option of a parsed subcommand, defaults included.
RunManifest Resolve(const CLI::App* sub) {
  RunManifest m;
  m.subcommand = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt == sub->get_help_ptr()) continue;
    std::vector<std::string> values;
    if (opt->count() > 0) {
      values = opt->results();
    } else if (const std::string& d = opt->get_default_str();
               !d.empty() && d != "[]" && d != "{}") {
      values.push_back(opt->get_default_str());
    } else {
      continue;
    }
    m.SetArg(opt->get_single_name(), std::move(values));
  }
  return m;
}

// Writes `content` to --out with a sibling manifest, or to stdout.
void Emit(const std::string& content, const std::string& out_path, const RunManifest& m,
          const Io& io) {
  if (out_path.empty()) {
    io.out << content;
    return;
  }
  WriteStringToFile(out_path, content);
  WriteStringToFile(out_path + ".manifest.json", ManifestToJson(m));
}

SlotTiming Timing(double slot_ns, double reconfig_ns) {
  SlotTiming t{slot_ns, reconfig_ns};
  t.Validate();
  return t;
}

// Hose-validated matrix; an explicit degree overrides the file's. The
// degree in use is recorded when the subcommand has a --degree flag.
TrafficMatrix LoadTraffic(const std::string& path, std::optional<int> degree, RunManifest& m,
                          bool record_degree = true) {
  RawMatrix raw = ReadMatrixFile(path);
  m.AddInput(path);
  if (!raw.link_capacity) throw Error(ErrorCode::kParse, path + ": link capacity c missing");
  if (degree) raw.degree = degree;
  if (!raw.degree) throw Error(ErrorCode::kParse, path + ": degree d missing");
  if (record_degree) m.SetArg("degree", {std::to_string(*raw.degree)});
  return ValidateHose(std::move(raw.entries), *raw.link_capacity, *raw.degree);
}

// --- schedule ---

struct ScheduleOpts {
  std::string matrix;
  int k = kDefaultK;
  std::optional<int> degree;
  double slot_ns = kDefaultSlotNs;
  double reconfig_ns = kDefaultReconfigNs;
  std::uint64_t seed = 1;
  std::string baseline = "vermilion";
  std::optional<int> n;
  std::optional<int> slots;
  std::string out;
};

int RunSchedule(const ScheduleOpts& o, RunManifest m, const Io& io) {
  const SlotTiming timing = Timing(o.slot_ns, o.reconfig_ns);
  m.seed = o.seed;
  PeriodicSchedule s;
  if (o.baseline == "rotornet") {
    int n = 0;
    if (o.n) {
      n = *o.n;
    } else if (!o.matrix.empty()) {
      n = ReadMatrixFile(o.matrix).entries.size();
      m.AddInput(o.matrix);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "rotornet baseline needs --n or --matrix");
    }
    const int degree = o.degree.value_or(1);
    m.SetArg("n", {std::to_string(n)});
    m.SetArg("degree", {std::to_string(degree)});
    s = BuildObliviousSchedule(n, degree, timing);
  } else {
    if (o.matrix.empty()) throw Error(ErrorCode::kInvalidArgument, "--matrix is required");
    const TrafficMatrix tm = LoadTraffic(o.matrix, o.degree, m);
    if (o.baseline == "greedy") {
      const int slots = o.slots.value_or((o.k * tm.size() + tm.degree() - 1) / tm.degree());
      m.SetArg("slots", {std::to_string(slots)});
      s = BuildGreedySchedule(tm, slots, timing);
    } else {
      s = BuildVermilionSchedule(tm, o.k, timing, o.seed);
    }
  }
  if (s.padding > 0) {
    io.err << "note: padded with " << s.padding << " idle matching(s) to fill " << s.degree
           << " planes\n";
  }
  Emit(ScheduleToJson(s), o.out, m, io);
  return kExitOk;
}

// --- round / topology ---

struct PipelineOpts {
  std::string matrix;
  int k = kDefaultK;
  std::optional<int> degree;
  std::uint64_t seed = 1;
  std::string out;
};

int RunRound(const PipelineOpts& o, RunManifest m, const Io& io) {
  const TrafficMatrix tm = LoadTraffic(o.matrix, o.degree, m);
  Emit(MatrixToCsv(RoundMatrix(Scale(Normalize(tm), o.k))), o.out, m, io);
  return kExitOk;
}

int RunTopology(const PipelineOpts& o, RunManifest m, const Io& io) {
  m.seed = o.seed;
  const TrafficMatrix tm = LoadTraffic(o.matrix, o.degree, m);
  const IntegerMatrix rounded = RoundMatrix(Scale(Normalize(tm), o.k));
  Emit(MatrixToCsv(BuildEmulated(rounded, o.k, o.seed).edge_mult), o.out, m, io);
  return kExitOk;
}

// --- throughput ---

struct ThroughputOpts {
  std::string matrix;
  std::string schedule;
  std::string routing = "direct";
  double epsilon = 0.02;
  bool certificate = false;
  std::string sweep;
  int n = 16;
  int degree = 4;
  int trials = 20;
  std::uint64_t seed = 1;
  int jobs = 1;
  double slot_ns = kDefaultSlotNs;
  double reconfig_ns = kDefaultReconfigNs;
  std::string out;
};

std::pair<int, int> ParseKRange(const std::string& spec) {
  // k=LO..HI
  const auto dots = spec.find("..");
  if (spec.rfind("k=", 0) != 0 || dots == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "--sweep expects k=LO..HI, got '" + spec + "'");
  }
  try {
    return {std::stoi(spec.substr(2, dots - 2)), std::stoi(spec.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kInvalidArgument, "--sweep expects k=LO..HI, got '" + spec + "'");
  }
}

int RunThroughput(const ThroughputOpts& o, RunManifest m, const Io& io) {
  if (!o.sweep.empty()) {
    const auto [lo, hi] = ParseKRange(o.sweep);
    if (lo < 2 || hi < lo) throw Error(ErrorCode::kInvalidK, "sweep needs 2 <= LO <= HI");
    m.seed = o.seed;
    const auto rows = ThroughputSweep(o.n, o.degree, lo, hi, o.trials, o.seed,
                                      Timing(o.slot_ns, o.reconfig_ns), o.jobs);
    std::ostringstream csv;
    csv << "k,min_theta,bound\n";
    for (const SweepRow& r : rows) {
      csv << r.k << ',' << FormatDouble(r.min_theta) << ',' << FormatDouble(r.bound) << '\n';
    }
    Emit(csv.str(), o.out, m, io);
    return kExitOk;
  }
  if (o.matrix.empty() || o.schedule.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--matrix and --schedule are required");
  }
  const TrafficMatrix tm = LoadTraffic(o.matrix, std::nullopt, m, false);
  const PeriodicSchedule s = ReadScheduleFile(o.schedule);
  m.AddInput(o.schedule);
  if (s.n != tm.size()) {
    throw Error(ErrorCode::kInvalidArgument, "schedule has " + std::to_string(s.n) +
                                                 " nodes, matrix has " +
                                                 std::to_string(tm.size()));
  }
  if (tm.IsZero()) throw Error(ErrorCode::kZeroDemand, "demand matrix is all zero");
  const CapacityMatrix cap = EmulatedCapacities(s, tm.link_capacity());
  const ThroughputReport r = o.routing == "multihop"
                                 ? MaxConcurrentFlow(cap, tm.entries(), o.epsilon)
                                 : SingleHopThroughput(tm, cap);
  Emit(ReportToJson(r, o.certificate), o.out, m, io);
  return kExitOk;
}

// --- simulate ---

struct SimulateOpts {
  std::string config;
  std::string out;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
};

// Rewrites `prefix:<relative path>` against the config's directory and
// records the file digest.
std::string AnchorPath(const std::string& value, const std::string& prefix,
                       const fs::path& base, RunManifest& m) {
  if (value.rfind(prefix, 0) != 0) return value;
  fs::path p = value.substr(prefix.size());
  if (p.is_relative()) p = (base / p).lexically_normal();
  m.AddInput(p.string());
  return prefix + p.string();
}

int RunSimulate(const SimulateOpts& o, RunManifest m, const Io& io) {
  SimConfig cfg = ParseSimConfig(ReadFileToString(o.config));
  m.AddInput(o.config);
  for (const std::string& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigInvalid, "--set expects key=value, got '" + kv + "'");
    }
    SetSimConfigValue(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed) cfg.seed = *o.seed;
  m.seed = cfg.seed;
  m.SetArg("seed", {std::to_string(cfg.seed)});
  const fs::path base = fs::path(o.config).parent_path();
  cfg.flow_size = AnchorPath(cfg.flow_size, "cdf:", base, m);
  cfg.pattern = AnchorPath(cfg.pattern, "matrix:", base, m);
  cfg.schedule = AnchorPath(cfg.schedule, "file:", base, m);
  const SimReport r = RunSimulation(cfg);
  WriteSimReport(r, o.out);
  WriteStringToFile((fs::path(o.out) / "config.txt").string(), SimConfigToText(cfg));
  WriteStringToFile((fs::path(o.out) / "manifest.json").string(), ManifestToJson(m));
  io.out << SummaryJson(r);
  return kExitOk;
}

// --- bvn ---

struct BvnOpts {
  std::string matrix;
  double tol = 1e-9;
  std::optional<double> quantum;
  std::vector<double> quantum_sweep;
  std::string out;
};

nlohmann::ordered_json QuantizationJson(const QuantizationReport& r, double quantum) {
  nlohmann::ordered_json j;
  j["quantum"] = quantum;
  j["schedule_length"] = r.schedule_length;
  j["dropped_terms"] = r.dropped_terms;
  j["dropped_mass"] = r.dropped_mass;
  j["total_mass"] = r.total_mass;
  j["absolute_error"] = r.absolute_error;
  j["copies"] = nlohmann::ordered_json::array();
  for (const QuantizedTerm& t : r.terms) j["copies"].push_back(t.copies);
  return j;
}

int RunBvn(const BvnOpts& o, RunManifest m, const Io& io) {
  const SquareMatrix<double> d = ReadMatrixFile(o.matrix).entries;
  m.AddInput(o.matrix);
  const std::vector<BvnTerm> terms = BvnDecompose(d, o.tol);
  if (!o.quantum_sweep.empty()) {
    std::ostringstream csv;
    csv << "quantum,schedule_length,dropped_terms,dropped_mass,absolute_error\n";
    for (double q : o.quantum_sweep) {
      const QuantizationReport r = BvnQuantize(terms, q).report;
      csv << FormatDouble(q) << ',' << r.schedule_length << ',' << r.dropped_terms << ','
          << FormatDouble(r.dropped_mass) << ',' << FormatDouble(r.absolute_error) << '\n';
    }
    Emit(csv.str(), o.out, m, io);
    return kExitOk;
  }
  const int n = d.size();
  const SquareMatrix<double> padded = PadToDoublyStochastic(d);
  SquareMatrix<double> rebuilt(n);
  double sum = 0;
  nlohmann::ordered_json jterms = nlohmann::ordered_json::array();
  for (const BvnTerm& t : terms) {
    sum += t.coefficient;
    for (int u = 0; u < n; ++u) rebuilt(u, t.permutation.dst[u]) += t.coefficient;
    jterms.push_back({{"coefficient", t.coefficient}, {"permutation", t.permutation.dst}});
  }
  double err = 0;
  for (std::size_t i = 0; i < rebuilt.data().size(); ++i) {
    err = std::max(err, std::abs(rebuilt.data()[i] - padded.data()[i]));
  }
  nlohmann::ordered_json j;
  j["n"] = n;
  j["term_count"] = terms.size();
  j["term_bound"] = n * n - 2 * n + 2;
  j["coefficient_sum"] = sum;
  j["max_reconstruction_error"] = err;
  j["terms"] = jterms;
  if (o.quantum) j["quantization"] = QuantizationJson(BvnQuantize(terms, *o.quantum).report, *o.quantum);
  Emit(j.dump(2) + "\n", o.out, m, io);
  return kExitOk;
}

// --- validate ---

struct ValidateOpts {
  std::string matrix;
  std::string schedule;
  std::string out;
};

int RunValidate(const ValidateOpts& o, RunManifest m, const Io& io) {
  if (o.matrix.empty() == o.schedule.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "give exactly one of --matrix or --schedule");
  }
  std::ostringstream report;
  if (!o.matrix.empty()) {
    const TrafficMatrix tm = LoadTraffic(o.matrix, std::nullopt, m, false);
    report << "ok: matrix n=" << tm.size() << " max_line_sum="
           << FormatDouble(MaxLineSum(tm.entries())) << " hose_bound="
           << FormatDouble(tm.node_capacity()) << "\n";
  } else {
    const PeriodicSchedule s = ReadScheduleFile(o.schedule);
    m.AddInput(o.schedule);
    report << "ok: schedule n=" << s.n << " d=" << s.degree << " k=" << s.k
           << " period=" << s.period() << " padding=" << s.padding
           << " duty=" << FormatDouble(s.duty_cycle()) << "\n";
  }
  Emit(report.str(), o.out, m, io);
  return kExitOk;
}

// --- generate ---

struct GenerateOpts {
  std::string pattern = "ring";
  int n = 4;
  double c = 1;
  int degree = 1;
  std::optional<double> rate;
  double skew = 0.5;
  std::uint64_t seed = 1;
  std::string out;
};

int RunGenerate(const GenerateOpts& o, RunManifest m, const Io& io) {
  if (o.n < 2) throw Error(ErrorCode::kInvalidArgument, "--n must be at least 2");
  const double rate = o.rate.value_or(o.c * o.degree);
  m.SetArg("rate", {FormatDouble(rate)});
  m.seed = o.seed;
  Rng rng(DeriveSeed(o.seed, "generate"));
  SquareMatrix<double> e;
  if (o.pattern == "ring") {
    e = RingDemand(o.n, rate);
  } else if (o.pattern == "permutation") {
    e = PermutationDemand(RandomDerangement(o.n, rng), rate);
  } else if (o.pattern == "uniform") {
    e = UniformDemand(o.n, rate);
  } else if (o.pattern == "skew") {
    e = SkewDemand(RandomDerangement(o.n, rng), o.skew, rate);
  } else {
    e = RandomSaturatedHose(o.n, rate, rng);
  }
  // Reject anything outside the hose model before writing it.
  ValidateHose(e, o.c, o.degree);
  Emit(MatrixToCsv(e, o.c, o.degree), o.out, m, io);
  return kExitOk;
}

// --- rerun ---

struct RerunOpts {
  std::string manifest;
  std::string out;
};

int RunRerun(const RerunOpts& o, const Io& io) {
  RunManifest m = ManifestFromJson(ReadFileToString(o.manifest));
  if (m.subcommand == "rerun") throw Error(ErrorCode::kParse, "manifest: cannot rerun a rerun");
  for (const auto& [path, digest] : m.inputs) {
    if (FileSha256(path) != digest) {
      throw Error(ErrorCode::kInvalidArgument, "input " + path + " changed since the manifest");
    }
  }
  if (!o.out.empty()) m.SetArg("out", {o.out});
  return RunCli(ManifestToArgs(m), io.out, io.err);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Io io{out, err};
  CLI::App app{"Traffic-aware periodic circuit schedules: synthesis, throughput, simulation.",
               kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  ScheduleOpts so;
  CLI::App* schedule = app.add_subcommand("schedule", "Build a periodic schedule");
  schedule->add_option("--matrix", so.matrix, "Traffic matrix (CSV or JSON)");
  schedule->add_option("--k", so.k, "Emulation parameter k >= 2");
  schedule->add_option("--degree", so.degree, "Number of switch planes (default: from matrix)");
  schedule->add_option("--slot-ns", so.slot_ns, "Slot duration");
  schedule->add_option("--reconfig-ns", so.reconfig_ns, "Reconfiguration delay");
  schedule->add_option("--seed", so.seed, "Seed for the topology fill");
  schedule->add_option("--baseline", so.baseline, "vermilion, rotornet or greedy")
      ->check(CLI::IsMember({"vermilion", "rotornet", "greedy"}));
  schedule->add_option("--n", so.n, "Node count for rotornet without a matrix");
  schedule->add_option("--slots", so.slots, "Greedy period length in slots");
  schedule->add_option("--out", so.out, "Output schedule JSON");

  PipelineOpts ro;
  CLI::App* round = app.add_subcommand("round", "Print the rounded scaled matrix");
  round->add_option("--matrix", ro.matrix, "Traffic matrix")->required();
  round->add_option("--k", ro.k, "Emulation parameter k >= 2");
  round->add_option("--degree", ro.degree, "Number of switch planes (default: from matrix)");
  round->add_option("--out", ro.out, "Output CSV");

  PipelineOpts to;
  CLI::App* topology = app.add_subcommand("topology", "Print the emulated multigraph");
  topology->add_option("--matrix", to.matrix, "Traffic matrix")->required();
  topology->add_option("--k", to.k, "Emulation parameter k >= 2");
  topology->add_option("--degree", to.degree, "Number of switch planes (default: from matrix)");
  topology->add_option("--seed", to.seed, "Seed for the topology fill");
  topology->add_option("--out", to.out, "Output CSV");

  ThroughputOpts tho;
  CLI::App* throughput = app.add_subcommand("throughput", "Throughput of a schedule, or a k sweep");
  throughput->add_option("--matrix", tho.matrix, "Demand matrix");
  throughput->add_option("--schedule", tho.schedule, "Schedule JSON");
  throughput->add_option("--routing", tho.routing, "direct or multihop")
      ->check(CLI::IsMember({"direct", "multihop"}));
  throughput->add_option("--epsilon", tho.epsilon, "Multihop accuracy in (0, 0.5]");
  throughput->add_option("--certificate", tho.certificate, "Include multihop path flows");
  throughput->add_option("--sweep", tho.sweep, "k=LO..HI over random saturated matrices");
  throughput->add_option("--n", tho.n, "Sweep node count");
  throughput->add_option("--degree", tho.degree, "Sweep plane count");
  throughput->add_option("--trials", tho.trials, "Sweep matrices per k");
  throughput->add_option("--seed", tho.seed, "Sweep seed");
  throughput->add_option("--jobs", tho.jobs, "Sweep worker threads");
  throughput->add_option("--slot-ns", tho.slot_ns, "Sweep slot duration");
  throughput->add_option("--reconfig-ns", tho.reconfig_ns, "Sweep reconfiguration delay");
  throughput->add_option("--out", tho.out, "Output file");

  SimulateOpts sio;
  CLI::App* simulate = app.add_subcommand("simulate", "Packet-level simulation");
  simulate->add_option("--config", sio.config, "key = value config file")->required();
  simulate->add_option("--out", sio.out, "Output directory")->required();
  simulate->add_option("--set", sio.sets, "Override a config key (key=value)");
  simulate->add_option("--seed", sio.seed, "Override the config seed");

  BvnOpts bo;
  CLI::App* bvn = app.add_subcommand("bvn", "Birkhoff-von Neumann decomposition");
  bvn->add_option("--matrix", bo.matrix, "Doubly substochastic matrix")->required();
  bvn->add_option("--tol", bo.tol, "Line-sum tolerance");
  bvn->add_option("--quantum", bo.quantum, "Slot quantum for the quantization report");
  bvn->add_option("--quantum-sweep", bo.quantum_sweep, "Quanta to tabulate as CSV")
      ->delimiter(',');
  bvn->add_option("--out", bo.out, "Output file");

  ValidateOpts vo;
  CLI::App* validate = app.add_subcommand("validate", "Check a matrix or schedule file");
  validate->add_option("--matrix", vo.matrix, "Traffic matrix");
  validate->add_option("--schedule", vo.schedule, "Schedule JSON");
  validate->add_option("--out", vo.out, "Output report");

  GenerateOpts go;
  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic demand matrix");
  generate->add_option("--pattern", go.pattern, "ring, permutation, uniform, skew or random-hose")
      ->check(CLI::IsMember({"ring", "permutation", "uniform", "skew", "random-hose"}));
  generate->add_option("--n", go.n, "Node count");
  generate->add_option("--c", go.c, "Link capacity (bits/s)");
  generate->add_option("--degree", go.degree, "Number of switch planes");
  generate->add_option("--rate", go.rate, "Row rate (default: c * degree)");
  generate->add_option("--skew", go.skew, "Permutation weight for the skew pattern");
  generate->add_option("--seed", go.seed, "Seed");
  generate->add_option("--out", go.out, "Output CSV");

  RerunOpts rro;
  CLI::App* rerun = app.add_subcommand("rerun", "Repeat a run from its manifest");
  rerun->add_option("--manifest", rro.manifest, "Manifest JSON")->required();
  rerun->add_option("--out", rro.out, "Replacement output path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (schedule->parsed()) return RunSchedule(so, Resolve(schedule), io);
    if (round->parsed()) return RunRound(ro, Resolve(round), io);
    if (topology->parsed()) return RunTopology(to, Resolve(topology), io);
    if (throughput->parsed()) return RunThroughput(tho, Resolve(throughput), io);
    if (simulate->parsed()) return RunSimulate(sio, Resolve(simulate), io);
    if (bvn->parsed()) return RunBvn(bo, Resolve(bvn), io);
    if (validate->parsed()) return RunValidate(vo, Resolve(validate), io);
    if (generate->parsed()) return RunGenerate(go, Resolve(generate), io);
    if (rerun->parsed()) return RunRerun(rro, io);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.internal() ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace vermilion::cli
