#ifndef VERMILION_BVN_H_
#define VERMILION_BVN_H_

#include <vector>

#include "vermilion/matching.h"
#include "vermilion/square_matrix.h"

namespace vermilion {

struct BvnTerm {
  double coefficient = 0;
  Matching permutation;
};

// Completes a doubly substochastic matrix to a doubly stochastic one: row and
// column deficits are first paired greedily on off-diagonal cells in
// ascending (row, col) order, then on the diagonal.
SquareMatrix<double> PadToDoublyStochastic(const SquareMatrix<double>& d);

// Birkhoff-von Neumann decomposition of the padded matrix. Each step takes
// the permutation whose smallest entry is largest (bottleneck matching), so
// every coefficient equals the minimum entry on its permutation at
// extraction time and at least one entry is zeroed per step, which bounds the
// term count by n^2 - 2n + 2.
// Throws Error{NotSubstochastic} when an entry is negative or a line sum
// exceeds 1 + tol.
std::vector<BvnTerm> BvnDecompose(const SquareMatrix<double>& d, double tol = 1e-9);

struct QuantizedTerm {
  double coefficient = 0;
  int copies = 0;
};

struct QuantizationReport {
  std::vector<QuantizedTerm> terms;
  int schedule_length = 0;
  int dropped_terms = 0;
  double dropped_mass = 0;  // total coefficient of terms rounded to 0 slots
  double total_mass = 0;
  // Sum over terms of |copies * quantum - coefficient|.
  double absolute_error = 0;
};

struct QuantizedSchedule {
  std::vector<Matching> matchings;
  QuantizationReport report;
};

// Expands each term to round(coefficient / quantum) copies, rounding half away
// from zero. Throws Error{InvalidArgument} if quantum <= 0.
QuantizedSchedule BvnQuantize(const std::vector<BvnTerm>& terms, double quantum);

}  // namespace vermilion

#endif  // VERMILION_BVN_H_
