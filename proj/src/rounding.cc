#include "vermilion/rounding.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vermilion/error.h"
#include "vermilion/max_flow.h"

namespace vermilion {
namespace {

bool NearInteger(double x) {
  return std::abs(x - std::round(x)) <=
         kIntegralTolerance * std::max(1.0, std::abs(x));
}

struct Bounds {
  std::int64_t lo;
  std::int64_t hi;
};

Bounds BoundsOf(double x) { return {FloorSnapped(x), CeilSnapped(x)}; }

}  // namespace

std::int64_t FloorSnapped(double x) {
  return static_cast<std::int64_t>(NearInteger(x) ? std::round(x) : std::floor(x));
}

std::int64_t CeilSnapped(double x) {
  return static_cast<std::int64_t>(NearInteger(x) ? std::round(x) : std::ceil(x));
}

IntegerMatrix RoundMatrix(const ScaledMatrix& scaled) {
  return RoundMatrix(scaled.entries);
}

IntegerMatrix RoundMatrix(const SquareMatrix<double>& values) {
  const int n = values.size();
  // Node layout: source, rows, columns, sink, then the auxiliary pair used
  // by the lower-bound reduction.
  const int source = 0;
  const auto row_node = [](int i) { return 1 + i; };
  const auto col_node = [n](int j) { return 1 + n + j; };
  const int sink = 2 * n + 1;
  const int aux_source = 2 * n + 2;
  const int aux_sink = 2 * n + 3;

  FlowNetwork net(2 * n + 4);
  std::vector<std::int64_t> excess(2 * n + 4, 0);
  IntegerMatrix result(n, 0);
  SquareMatrix<int> entry_arc(n, -1);

  const auto add_bounded = [&](int from, int to, Bounds b) {
    excess[to] += b.lo;
    excess[from] -= b.lo;
    return b.hi > b.lo ? net.AddArc(from, to, b.hi - b.lo) : -1;
  };

  for (int i = 0; i < n; ++i) add_bounded(source, row_node(i), BoundsOf(values.RowSum(i)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = values(i, j);
      if (x < 0) throw Error(ErrorCode::kInvalidArgument, "negative entry");
      const Bounds b = BoundsOf(x);
      result(i, j) = b.lo;
      entry_arc(i, j) = add_bounded(row_node(i), col_node(j), b);
    }
  }
  for (int j = 0; j < n; ++j) add_bounded(col_node(j), sink, BoundsOf(values.ColSum(j)));
  net.AddArc(sink, source, std::numeric_limits<std::int64_t>::max() / 4);

  std::int64_t required = 0;
  for (int node = 0; node < 2 * n + 2; ++node) {
    if (excess[node] > 0) {
      net.AddArc(aux_source, node, excess[node]);
      required += excess[node];
    } else if (excess[node] < 0) {
      net.AddArc(node, aux_sink, -excess[node]);
    }
  }
  if (net.MaxFlow(aux_source, aux_sink) != required) {
    throw Error(ErrorCode::kInfeasible,
                "no integral rounding satisfies the floor/ceil bounds");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (entry_arc(i, j) >= 0) result(i, j) += net.Flow(entry_arc(i, j));
    }
  }
  return result;
}

}  // namespace vermilion
