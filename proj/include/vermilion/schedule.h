#ifndef VERMILION_SCHEDULE_H_
#define VERMILION_SCHEDULE_H_

#include <cstdint>
#include <vector>

#include "vermilion/decomposition.h"
#include "vermilion/matching.h"
#include "vermilion/rounding.h"
#include "vermilion/topology.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {

inline constexpr int kDefaultK = 3;
inline constexpr double kDefaultReconfigNs = 500.0;
inline constexpr double kDefaultSlotNs = 9 * kDefaultReconfigNs;

struct SlotTiming {
  double slot_ns = kDefaultSlotNs;
  // Tail of every slot during which circuits change and nothing is sent.
  double reconfig_ns = kDefaultReconfigNs;

  double duty_cycle() const { return 1.0 - reconfig_ns / slot_ns; }
  // Throws Error{InvalidArgument} unless 0 <= reconfig_ns < slot_ns.
  void Validate() const;
  bool operator==(const SlotTiming&) const = default;
};

// A periodic circuit schedule over `degree` parallel switch planes. Matching
// number i of the generating sequence runs on plane i % degree in slot
// i / degree.
struct PeriodicSchedule {
  int n = 0;
  int degree = 1;
  int k = 0;  // 0 for baselines
  SlotTiming timing;
  std::uint64_t seed = 0;
  std::vector<std::vector<Matching>> planes;  // [plane][slot]
  std::vector<std::vector<Phase>> phases;     // [plane][slot]
  // Identity matchings appended so the sequence length divides by degree.
  int padding = 0;

  int period() const { return planes.empty() ? 0 : static_cast<int>(planes[0].size()); }
  double duty_cycle() const { return timing.duty_cycle(); }
  bool operator==(const PeriodicSchedule&) const = default;
};

// Throws Error{InvalidArgument} naming the first broken invariant.
void ValidateSchedule(const PeriodicSchedule& s);

// Lays out a matching sequence across planes, padding with identity
// matchings (tagged `padding_phase`) up to a multiple of `degree`.
PeriodicSchedule AssemblePlanes(const PhasedMatchings& sequence, int n, int degree,
                                int k, const SlotTiming& timing, std::uint64_t seed,
                                Phase padding_phase);

// Every intermediate of the traffic-aware construction.
struct VermilionPipeline {
  NormalizedMatrix normalized;
  ScaledMatrix scaled;
  IntegerMatrix rounded;
  Multigraph graph;
  PhasedMatchings sequence;
};

// normalize -> scale -> round -> emulated multigraph -> structured
// decomposition. `fill_seed` drives the configuration-model fill.
VermilionPipeline RunVermilionPipeline(const NormalizedMatrix& normalized, int k,
                                       std::uint64_t fill_seed);

PeriodicSchedule BuildVermilionSchedule(const TrafficMatrix& m, int k,
                                        const SlotTiming& timing, std::uint64_t seed);
PeriodicSchedule BuildVermilionSchedule(const NormalizedMatrix& normalized, int k,
                                        int degree, const SlotTiming& timing,
                                        std::uint64_t seed);

// The n - 1 rotations (RotorNet-style round robin).
PeriodicSchedule BuildObliviousSchedule(int n, int degree, const SlotTiming& timing);

// Repeated maximum-weight matchings on residual demand. Each matched
// off-diagonal pair is credited one slot of service, c * slot * duty bits,
// against its demand over the period (rate * slots * slot duration).
PeriodicSchedule BuildGreedySchedule(const TrafficMatrix& m, int slots,
                                     const SlotTiming& timing);

// Emulated pair capacity in bits/s: appearances over one period (summed over
// planes) * c * duty / period. Idle slots contribute nothing.
struct CapacityMatrix {
  SquareMatrix<double> cap;
};

CapacityMatrix EmulatedCapacities(const PeriodicSchedule& s, double link_capacity);

// Number of times each ordered pair is connected over one period.
IntegerMatrix PairCounts(const PeriodicSchedule& s);

}  // namespace vermilion

#endif  // VERMILION_SCHEDULE_H_
