#ifndef VERMILION_ROUNDING_H_
#define VERMILION_ROUNDING_H_

#include <cstdint>

#include "vermilion/square_matrix.h"
#include "vermilion/traffic_matrix.h"

namespace vermilion {

// Edge multiplicities produced by rounding a ScaledMatrix.
using IntegerMatrix = SquareMatrix<std::int64_t>;

// Values within this relative distance of an integer are treated as that
// integer when computing floors and ceilings.
inline constexpr double kIntegralTolerance = 1e-9;

std::int64_t FloorSnapped(double x);
std::int64_t CeilSnapped(double x);

// Controlled rounding: every entry moves to its floor or ceiling, and so does
// every row and column sum. Entries that are already integral stay fixed.
// The result is a feasible integral flow through
//   source -> row_i -> col_j -> sink
// with floor/ceil bounds on each arc, found with max-flow after the standard
// lower-bound reduction. Throws Error{Infeasible} only on an internal bug.
IntegerMatrix RoundMatrix(const ScaledMatrix& scaled);
IntegerMatrix RoundMatrix(const SquareMatrix<double>& values);

}  // namespace vermilion

#endif  // VERMILION_ROUNDING_H_
