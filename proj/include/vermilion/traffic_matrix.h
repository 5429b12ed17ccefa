#ifndef VERMILION_TRAFFIC_MATRIX_H_
#define VERMILION_TRAFFIC_MATRIX_H_

#include <cstdint>

#include "vermilion/rng.h"
#include "vermilion/square_matrix.h"

namespace vermilion {

// Demand rates (bits/second) between node pairs that respect the hose model:
// every row and column sum is at most link_capacity * degree. Instances are
// only obtainable through ValidateHose.
class TrafficMatrix {
 public:
  int size() const { return entries_.size(); }
  const SquareMatrix<double>& entries() const { return entries_; }
  double operator()(int src, int dst) const { return entries_(src, dst); }
  double link_capacity() const { return link_capacity_; }
  int degree() const { return degree_; }
  // c * d_hat: the per-node hose bound.
  double node_capacity() const { return link_capacity_ * degree_; }
  bool IsZero() const;

 private:
  friend TrafficMatrix ValidateHose(SquareMatrix<double> raw,
                                    double link_capacity, int degree);
  TrafficMatrix(SquareMatrix<double> entries, double link_capacity, int degree)
      : entries_(std::move(entries)),
        link_capacity_(link_capacity),
        degree_(degree) {}

  SquareMatrix<double> entries_;
  double link_capacity_ = 0;
  int degree_ = 0;
};

// Entries scaled so that the largest row or column sum is at most 1.
struct NormalizedMatrix {
  SquareMatrix<double> entries;
  // The scalar the input was divided by (0 for the zero matrix).
  double divisor = 0;
};

// Normalized entries multiplied by (k - 1) * n.
struct ScaledMatrix {
  SquareMatrix<double> entries;
  int k = 0;
};

// Throws Error{NegativeEntry | NonzeroDiagonal | HoseViolation |
// InvalidArgument}. Row and column sums may exceed c * d_hat by at most
// 1e-9 * c * d_hat.
TrafficMatrix ValidateHose(SquareMatrix<double> raw, double link_capacity,
                           int degree);

NormalizedMatrix Normalize(const TrafficMatrix& m);
// Same transformation for any nonnegative matrix; used where the absolute
// scale is meaningless (e.g. quantized traffic estimates).
NormalizedMatrix Normalize(const SquareMatrix<double>& raw);

// Throws Error{InvalidK} when k < 2.
ScaledMatrix Scale(const NormalizedMatrix& normalized, int k);

// Largest row or column sum.
double MaxLineSum(const SquareMatrix<double>& m);

// --- Demand generators. All emit a zero diagonal. ---

// u -> (u + 1) mod n at `rate`.
SquareMatrix<double> RingDemand(int n, double rate);
// u -> perm[u] at `rate`.
SquareMatrix<double> PermutationDemand(const std::vector<int>& perm,
                                       double rate);
// rate / (n - 1) on every off-diagonal pair, so each row sums to `rate`.
SquareMatrix<double> UniformDemand(int n, double rate);
// Mix of a permutation (weight `skew`) and uniform all-to-all (1 - skew),
// rows summing to `rate`.
SquareMatrix<double> SkewDemand(const std::vector<int>& perm, double skew,
                                double rate);
// Random permutation without fixed points.
std::vector<int> RandomDerangement(int n, Rng& rng);
// Convex combination of `terms` random derangements scaled by `rate`; every
// row and column sums to `rate` (a saturated hose matrix).
SquareMatrix<double> RandomSaturatedHose(int n, double rate, Rng& rng,
                                         int terms = 0);

}  // namespace vermilion

#endif  // VERMILION_TRAFFIC_MATRIX_H_
