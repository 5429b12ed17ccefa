#include "vermilion/schedule.h"

#include <algorithm>
#include <string>

#include "vermilion/error.h"

namespace vermilion {

void SlotTiming::Validate() const {
  if (!(slot_ns > 0)) throw Error(ErrorCode::kInvalidArgument, "slot duration must be positive");
  if (!(reconfig_ns >= 0) || !(reconfig_ns < slot_ns)) {
    throw Error(ErrorCode::kInvalidArgument,
                "reconfiguration delay must satisfy 0 <= reconfig < slot");
  }
}

void ValidateSchedule(const PeriodicSchedule& s) {
  s.timing.Validate();
  if (s.n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (s.degree < 1) throw Error(ErrorCode::kInvalidArgument, "degree must be >= 1");
  if (static_cast<int>(s.planes.size()) != s.degree ||
      static_cast<int>(s.phases.size()) != s.degree) {
    throw Error(ErrorCode::kInvalidArgument, "plane count differs from degree");
  }
  const int period = s.period();
  if (period < 1) throw Error(ErrorCode::kInvalidArgument, "empty schedule");
  for (int p = 0; p < s.degree; ++p) {
    if (static_cast<int>(s.planes[p].size()) != period ||
        static_cast<int>(s.phases[p].size()) != period) {
      throw Error(ErrorCode::kInvalidArgument,
                  "plane " + std::to_string(p) + " has a different period");
    }
    for (int t = 0; t < period; ++t) {
      const Matching& m = s.planes[p][t];
      if (m.size() != s.n || !m.IsBijection()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "plane " + std::to_string(p) + " slot " + std::to_string(t) +
                        " is not a permutation of 0..n-1");
      }
    }
  }
}

PeriodicSchedule AssemblePlanes(const PhasedMatchings& sequence, int n, int degree,
                                int k, const SlotTiming& timing, std::uint64_t seed,
                                Phase padding_phase) {
  timing.Validate();
  if (degree < 1) throw Error(ErrorCode::kInvalidArgument, "degree must be >= 1");
  PeriodicSchedule s;
  s.n = n;
  s.degree = degree;
  s.k = k;
  s.timing = timing;
  s.seed = seed;
  const int count = static_cast<int>(sequence.matchings.size());
  const int period = std::max(1, (count + degree - 1) / degree);
  s.padding = period * degree - count;
  s.planes.assign(degree, std::vector<Matching>(period, Matching::Identity(n)));
  s.phases.assign(degree, std::vector<Phase>(period, padding_phase));
  for (int i = 0; i < count; ++i) {
    s.planes[i % degree][i / degree] = sequence.matchings[i];
    s.phases[i % degree][i / degree] = sequence.phases[i];
  }
  return s;
}

VermilionPipeline RunVermilionPipeline(const NormalizedMatrix& normalized, int k,
                                       std::uint64_t fill_seed) {
  VermilionPipeline p;
  p.normalized = normalized;
  p.scaled = Scale(normalized, k);
  p.rounded = RoundMatrix(p.scaled);
  p.graph = BuildEmulated(p.rounded, k, fill_seed);
  p.sequence = DecomposeStructured(p.graph);
  return p;
}

PeriodicSchedule BuildVermilionSchedule(const NormalizedMatrix& normalized, int k,
                                        int degree, const SlotTiming& timing,
                                        std::uint64_t seed) {
  const VermilionPipeline p = RunVermilionPipeline(normalized, k, seed);
  return AssemblePlanes(p.sequence, normalized.entries.size(), degree, k, timing,
                        seed, Phase::kAware);
}

PeriodicSchedule BuildVermilionSchedule(const TrafficMatrix& m, int k,
                                        const SlotTiming& timing, std::uint64_t seed) {
  return BuildVermilionSchedule(Normalize(m), k, m.degree(), timing, seed);
}

PeriodicSchedule BuildObliviousSchedule(int n, int degree, const SlotTiming& timing) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "oblivious schedule needs n >= 2");
  PhasedMatchings seq;
  for (int shift = 1; shift < n; ++shift) {
    seq.matchings.push_back(Matching::Rotation(n, shift));
    seq.phases.push_back(Phase::kOblivious);
  }
  return AssemblePlanes(seq, n, degree, 0, timing, 0, Phase::kOblivious);
}

PeriodicSchedule BuildGreedySchedule(const TrafficMatrix& m, int slots,
                                     const SlotTiming& timing) {
  if (slots < 1) throw Error(ErrorCode::kInvalidArgument, "greedy needs >= 1 slot");
  timing.Validate();
  const int n = m.size();
  const int degree = m.degree();
  const double slot_s = timing.slot_ns * 1e-9;
  const double service = m.link_capacity() * slot_s * timing.duty_cycle();
  SquareMatrix<double> residual(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) residual(u, v) = m(u, v) * slots * slot_s;
  }
  PhasedMatchings seq;
  SquareMatrix<double> weights(n);
  for (int i = 0; i < slots * degree; ++i) {
    // Normalized to slot units; the diagonal (idle) is worth nothing and
    // zero-residual pairs tie with it.
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) weights(u, v) = u == v ? 0.0 : residual(u, v) / service;
    }
    Matching match{MaxWeightAssignment(weights)};
    for (int u = 0; u < n; ++u) {
      const int v = match.dst[u];
      if (u != v) residual(u, v) = std::max(0.0, residual(u, v) - service);
    }
    seq.matchings.push_back(std::move(match));
    seq.phases.push_back(Phase::kAware);
  }
  return AssemblePlanes(seq, n, degree, 0, timing, 0, Phase::kAware);
}

IntegerMatrix PairCounts(const PeriodicSchedule& s) {
  IntegerMatrix counts(s.n, 0);
  for (const auto& plane : s.planes) {
    for (const Matching& m : plane) {
      for (int u = 0; u < s.n; ++u) {
        if (m.dst[u] != u) ++counts(u, m.dst[u]);
      }
    }
  }
  return counts;
}

CapacityMatrix EmulatedCapacities(const PeriodicSchedule& s, double link_capacity) {
  const IntegerMatrix counts = PairCounts(s);
  CapacityMatrix out{SquareMatrix<double>(s.n)};
  const double per_slot = link_capacity * s.duty_cycle() / s.period();
  for (int u = 0; u < s.n; ++u) {
    for (int v = 0; v < s.n; ++v) out.cap(u, v) = counts(u, v) * per_slot;
  }
  return out;
}

}  // namespace vermilion
