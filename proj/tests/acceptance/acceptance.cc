// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "manifest.h"
#include "test_util.h"
#include "vermilion/bvn.h"
#include "vermilion/decomposition.h"
#include "vermilion/matrix_io.h"
#include "vermilion/rounding.h"
#include "vermilion/schedule.h"
#include "vermilion/simulator.h"
#include "vermilion/throughput.h"
#include "vermilion/topology.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// n = 16 timing: slot is nine reconfiguration delays.
const SlotTiming kTiming{4500, 500};
constexpr double kDuty = 8.0 / 9.0;

Outcome AwareBound() {
  Rng rng(DeriveSeed(2024, "ac1"));
  const double c = 100e9;
  const double bound = AwareThroughputBound(3, kDuty);
  int violations = 0;
  double worst = 1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const TrafficMatrix m = ValidateHose(RandomSaturatedHose(16, c * 4, rng), c, 4);
    const PeriodicSchedule s = BuildVermilionSchedule(m, 3, kTiming, rng.Next());
    const double theta = SingleHopThroughput(m, EmulatedCapacities(s, c)).theta;
    worst = std::min(worst, theta);
    if (theta < bound) ++violations;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "min theta %.6f, bound %.6f, violations %d/200", worst, bound,
                violations);
  return {violations == 0, buf};
}

Outcome KSweep() {
  const std::vector<SweepRow> rows = ThroughputSweep(16, 4, 2, 8, 20, 7, kTiming);
  Outcome o;
  std::ostringstream d;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    d << "k=" << r.k << ":" << r.min_theta << " ";
    if (r.min_theta < r.bound - 1e-12 || r.min_theta > kDuty + 1e-12) o.pass = false;
    if (i > 0 && r.min_theta < rows[i - 1].min_theta - 1e-12) o.pass = false;
  }
  o.pass = o.pass && rows.size() == 7;
  o.detail = d.str();
  return o;
}

Outcome ObliviousAnchor() {
  const int n = 16;
  const PeriodicSchedule s = BuildObliviousSchedule(n, 1, kTiming);
  const CapacityMatrix cap = EmulatedCapacities(s, 1.0);
  const SquareMatrix<double> ring = RingDemand(n, 1.0);
  const ThroughputReport multi = MaxConcurrentFlow(cap, ring, 0.02);
  const double single = SingleHopThroughput(ring, cap).theta;
  const double target_single = kDuty / (n - 1);
  const bool multi_ok = std::abs(multi.theta - 0.5 * kDuty) <= 0.02 + 0.01 &&
                        CertificateViolation(cap, ring, multi) <= 1e-9;
  // Same rational value, computed two ways; allow one ulp of rounding.
  const bool single_ok = std::abs(single - target_single) <= 1e-15;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "multi-hop %.6f vs %.6f (upper %.6f); single-hop %.9f vs %.9f", multi.theta,
                0.5 * kDuty, multi.upper_bound, single, target_single);
  return {multi_ok && single_ok, buf};
}

Outcome RoundingOracle() {
  Rng rng(DeriveSeed(4, "ac4"));
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = i < 25 ? 3 : 4;
    SquareMatrix<double> m(n);
    for (double& x : m.data()) x = static_cast<double>(rng.Uniform(13)) * 0.25;
    const auto feasible = testing::EnumerateRoundings(m);
    if (feasible.count(testing::Flatten(RoundMatrix(m))) == 0) ++mismatches;
  }
  return {mismatches == 0, std::to_string(mismatches) + "/50 outside the feasible set"};
}

Outcome DecompositionCompleteness() {
  Rng rng(DeriveSeed(5, "ac5"));
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.Uniform(31));
    const int k = 2 + static_cast<int>(rng.Uniform(3));
    const SquareMatrix<double> raw =
        trial % 2 == 0 ? RandomSaturatedHose(n, 1.0, rng, 1 + static_cast<int>(rng.Uniform(4)))
                       : testing::RandomGridMatrix(n, 5, 1.0, rng);
    const IntegerMatrix rounded = RoundMatrix(Scale(Normalize(raw), k));
    const Multigraph g = BuildEmulated(rounded, k, rng.Next());
    const PhasedMatchings p = DecomposeStructured(g);
    IntegerMatrix uni(n, 0);
    for (const Matching& m : p.matchings) {
      for (int u = 0; u < n; ++u) ++uni(u, m.dst[u]);
    }
    if (uni != g.edge_mult || static_cast<int>(p.matchings.size()) != k * n) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/100 mismatched"};
}

Outcome BvnProperties() {
  Rng rng(DeriveSeed(6, "ac6"));
  int bad = 0;
  double worst_err = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.Uniform(12));
    SquareMatrix<double> d(n);
    const int parts = 1 + static_cast<int>(rng.Uniform(6));
    std::vector<double> w(parts);
    double total = 0;
    for (double& x : w) total += (x = 0.05 + rng.Uniform01());
    for (int p = 0; p < parts; ++p) {
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      rng.Shuffle(perm);
      for (int u = 0; u < n; ++u) d(u, perm[u]) += w[p] / total;
    }
    const std::vector<BvnTerm> terms = BvnDecompose(d);
    double sum = 0;
    SquareMatrix<double> rec(n);
    for (const BvnTerm& t : terms) {
      sum += t.coefficient;
      for (int u = 0; u < n; ++u) rec(u, t.permutation.dst[u]) += t.coefficient;
    }
    double err = 0;
    for (std::size_t i = 0; i < rec.data().size(); ++i) {
      err = std::max(err, std::abs(rec.data()[i] - d.data()[i]));
    }
    worst_err = std::max(worst_err, err);
    const auto limit = static_cast<std::size_t>(n * n - 2 * n + 2);
    if (std::abs(sum - 1) > 1e-9 || err > 1e-9 || terms.size() > limit) ++bad;
  }
  SquareMatrix<double> skewed(4);
  for (int u = 0; u < 4; ++u) {
    skewed(u, (u + 1) % 4) += 0.999;
    skewed(u, (u + 2) % 4) += 0.001;
  }
  const QuantizationReport q = BvnQuantize(BvnDecompose(skewed), 0.01).report;
  const bool pathology = q.schedule_length >= 100 || q.dropped_mass > 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/100 failing, worst reconstruction %.2e; {0.999,0.001}@0.01: length %d, "
                "dropped mass %.4f",
                bad, worst_err, q.schedule_length, q.dropped_mass);
  return {bad == 0 && pathology, buf};
}

SimConfig DirectionConfig(double load, bool aware) {
  SimConfig cfg;
  cfg.n = 16;
  cfg.degree = 4;
  cfg.load = load;
  cfg.pattern = "permutation";
  cfg.flow_size = "cdf:" + std::string(VERMILION_DATA_DIR) + "/heavy_tailed.cdf";
  cfg.duration_s = 0.02;
  cfg.schedule = aware ? "vermilion" : "oblivious";
  cfg.routing = aware ? SimRouting::kDirect : SimRouting::kVlb;
  return cfg;
}

Outcome SimulatorDirection() {
  Outcome o;
  std::ostringstream d;
  for (double load : {0.05, 0.40}) {
    const auto t0 = std::chrono::steady_clock::now();
    const SimReport aware = RunSimulation(DirectionConfig(load, true));
    const SimReport obl = RunSimulation(DirectionConfig(load, false));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool faster = aware.short_fct.count > 0 && obl.short_fct.count > 0 &&
                        aware.short_fct.p99_ns < obl.short_fct.p99_ns;
    o.pass = o.pass && faster && secs < 600;
    d << "load " << load << ": p99 short " << aware.short_fct.p99_ns / 1e3 << "us vs "
      << obl.short_fct.p99_ns / 1e3 << "us";
    if (load > 0.3) {
      o.pass = o.pass && aware.mean_utilization >= obl.mean_utilization;
      d << ", utilization " << aware.mean_utilization << " vs " << obl.mean_utilization;
    }
    d << "; ";
  }
  o.detail = d.str();
  return o;
}

class LoopWatcher : public SimObserver {
 public:
  void OnEstimates(double, const std::vector<SquareMatrix<double>>& views) override {
    ++periods;
    for (const auto& v : views) agree = agree && v == views[0];
  }
  void OnInstall(double, const PeriodicSchedule& s) override { installs.push_back(s); }

  int periods = 0;
  bool agree = true;
  std::vector<PeriodicSchedule> installs;
};

Outcome EstimationLoop() {
  SimConfig cfg;
  cfg.n = 16;
  cfg.degree = 4;
  cfg.load = 0.3;
  cfg.pattern = "permutation";
  cfg.arrivals = "constant";
  cfg.flow_size = "constant:20000";
  cfg.duration_s = 0.005;
  cfg.estimation = true;
  LoopWatcher w;
  RunSimulation(cfg, &w);
  // First swap index whose schedule equals its predecessor, then every later
  // swap must repeat it.
  std::size_t settle = 0;
  for (std::size_t i = 1; i < w.installs.size() && settle == 0; ++i) {
    if (w.installs[i] == w.installs[i - 1]) settle = i;
  }
  bool stable = settle > 0 && settle <= 3;
  for (std::size_t i = settle + 1; stable && i < w.installs.size(); ++i) {
    stable = w.installs[i] == w.installs[settle];
  }
  std::ostringstream d;
  d << w.periods << " periods, views identical: " << (w.agree ? "yes" : "no") << "; "
    << w.installs.size() << " swaps, fixed from swap " << settle;
  return {w.agree && w.periods > 0 && stable && w.installs.size() > 3, d.str()};
}

// Runs a subcommand that writes `<out>` and `<out>.manifest.json` (or
// `<out>/manifest.json` for simulate), then reruns the manifest three times.
bool RerunIdentical(const std::string& name, std::vector<std::string> args,
                    const fs::path& dir, bool directory_output, std::string& note) {
  std::ostringstream sink, err;
  const fs::path first = dir / (name + "_0");
  args.push_back("--out");
  args.push_back(first.string());
  if (cli::RunCli(args, sink, err) != 0) {
    note += name + " failed: " + err.str();
    return false;
  }
  const auto digest = [&](const fs::path& out) {
    if (!directory_output) return cli::FileSha256(out.string());
    std::string all;
    for (const char* f : {"flows.csv", "utilization.csv", "updates.csv", "summary.json"}) {
      all += cli::FileSha256((out / f).string());
    }
    return all;
  };
  const std::string manifest =
      directory_output ? (first / "manifest.json").string() : first.string() + ".manifest.json";
  const std::string want = digest(first);
  for (int run = 1; run <= 3; ++run) {
    const fs::path out = dir / (name + "_" + std::to_string(run));
    std::ostringstream o, e;
    if (cli::RunCli({"rerun", "--manifest", manifest, "--out", out.string()}, o, e) != 0 ||
        digest(out) != want) {
      note += name + " diverged on rerun " + std::to_string(run) + "; ";
      return false;
    }
  }
  return true;
}

Outcome CliDeterminism() {
  const fs::path dir = fs::temp_directory_path() / "vermilion_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string matrix = (dir / "hose.csv").string();
  const std::string ring = (dir / "ring.csv").string();
  const std::string schedule = (dir / "sched.json").string();
  const std::string stoch = (dir / "stoch.csv").string();
  const std::string config = (dir / "sim.cfg").string();
  std::ostringstream sink, err;
  cli::RunCli({"generate", "--pattern", "random-hose", "--n", "8", "--degree", "2", "--seed",
               "3", "--out", matrix},
              sink, err);
  cli::RunCli({"generate", "--pattern", "ring", "--n", "8", "--degree", "2", "--out", ring},
              sink, err);
  cli::RunCli({"schedule", "--matrix", matrix, "--out", schedule}, sink, err);
  cli::RunCli({"generate", "--pattern", "random-hose", "--n", "5", "--seed", "9", "--out", stoch},
              sink, err);
  WriteStringToFile(config,
                    "n = 8\ndegree = 2\nload = 0.3\nrouting = vlb\nschedule = oblivious\n"
                    "duration_s = 0.0005\n");

  const std::vector<std::tuple<std::string, std::vector<std::string>, bool>> cases = {
      {"generate", {"generate", "--pattern", "skew", "--n", "6", "--seed", "5"}, false},
      {"schedule", {"schedule", "--matrix", matrix, "--k", "3"}, false},
      {"rotornet", {"schedule", "--baseline", "rotornet", "--n", "8", "--degree", "2"}, false},
      {"greedy", {"schedule", "--baseline", "greedy", "--matrix", matrix}, false},
      {"round", {"round", "--matrix", matrix}, false},
      {"topology", {"topology", "--matrix", matrix, "--seed", "4"}, false},
      {"throughput",
       {"throughput", "--matrix", ring, "--schedule", schedule, "--routing", "multihop",
        "--certificate", "true"},
       false},
      {"sweep", {"throughput", "--sweep", "k=2..4", "--n", "8", "--degree", "2", "--trials", "3"},
       false},
      {"bvn", {"bvn", "--matrix", stoch, "--quantum", "0.05"}, false},
      {"validate", {"validate", "--schedule", schedule}, false},
      {"simulate", {"simulate", "--config", config, "--set", "seed=7"}, true},
  };
  std::string note;
  int ok = 0;
  for (const auto& [name, args, is_dir] : cases) {
    ok += RerunIdentical(name, args, dir, is_dir, note);
  }
  fs::remove_all(dir);
  return {ok == static_cast<int>(cases.size()),
          std::to_string(ok) + "/" + std::to_string(cases.size()) +
              " subcommand runs byte-identical over 3 reruns" + (note.empty() ? "" : "; " + note)};
}

}  // namespace
}  // namespace vermilion

int main() {
  using vermilion::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 aware single-hop bound", vermilion::AwareBound},
      {"AC2 k sweep", vermilion::KSweep},
      {"AC3 oblivious anchor", vermilion::ObliviousAnchor},
      {"AC4 rounding oracle", vermilion::RoundingOracle},
      {"AC5 decomposition completeness", vermilion::DecompositionCompleteness},
      {"AC6 bvn properties", vermilion::BvnProperties},
      {"AC7 simulator direction", vermilion::SimulatorDirection},
      {"AC8 estimation loop", vermilion::EstimationLoop},
      {"AC9 cli determinism", vermilion::CliDeterminism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
