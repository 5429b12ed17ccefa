#include "vermilion/bvn.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vermilion/error.h"

namespace vermilion {
namespace {

// Entries at or below this are treated as exhausted during decomposition.
constexpr double kZeroClamp = 1e-13;

std::optional<std::vector<int>> MatchingAbove(const SquareMatrix<double>& m,
                                              double threshold) {
  const int n = m.size();
  std::vector<std::vector<int>> adjacency(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (m(u, v) >= threshold && m(u, v) > kZeroClamp) adjacency[u].push_back(v);
    }
  }
  return FindPerfectMatching(adjacency);
}

}  // namespace

SquareMatrix<double> PadToDoublyStochastic(const SquareMatrix<double>& d) {
  const int n = d.size();
  SquareMatrix<double> out = d;
  std::vector<double> row_gap(n), col_gap(n);
  for (int i = 0; i < n; ++i) {
    row_gap[i] = std::max(0.0, 1.0 - d.RowSum(i));
    col_gap[i] = std::max(0.0, 1.0 - d.ColSum(i));
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if ((pass == 0) == (i == j)) continue;
        const double add = std::min(row_gap[i], col_gap[j]);
        if (add <= 0) continue;
        out(i, j) += add;
        row_gap[i] -= add;
        col_gap[j] -= add;
      }
    }
  }
  return out;
}

std::vector<BvnTerm> BvnDecompose(const SquareMatrix<double>& d, double tol) {
  const int n = d.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (d(i, j) < 0 || !std::isfinite(d(i, j))) {
        std::ostringstream msg;
        msg << "entry (" << i << "," << j << ") = " << d(i, j);
        throw Error(ErrorCode::kNotSubstochastic, msg.str());
      }
    }
    if (d.RowSum(i) > 1 + tol || d.ColSum(i) > 1 + tol) {
      throw Error(ErrorCode::kNotSubstochastic,
                  "line " + std::to_string(i) + " sums above 1");
    }
  }
  SquareMatrix<double> remaining = PadToDoublyStochastic(d);
  std::vector<BvnTerm> terms;
  const std::size_t max_terms = static_cast<std::size_t>(n) * n;
  while (terms.size() < max_terms) {
    std::vector<double> levels;
    for (double v : remaining.data()) {
      if (v > kZeroClamp) levels.push_back(v);
    }
    if (levels.empty()) break;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    // Largest threshold that still admits a perfect matching.
    std::size_t lo = 0, hi = levels.size();
    std::optional<std::vector<int>> best = MatchingAbove(remaining, levels[0]);
    if (!best) break;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (auto m = MatchingAbove(remaining, levels[mid])) {
        lo = mid;
        best = std::move(m);
      } else {
        hi = mid;
      }
    }
    double lambda = remaining(0, (*best)[0]);
    for (int u = 1; u < n; ++u) lambda = std::min(lambda, remaining(u, (*best)[u]));
    for (int u = 0; u < n; ++u) {
      double& cell = remaining(u, (*best)[u]);
      cell -= lambda;
      if (cell <= kZeroClamp) cell = 0;
    }
    terms.push_back({lambda, Matching{std::move(*best)}});
  }
  return terms;
}

QuantizedSchedule BvnQuantize(const std::vector<BvnTerm>& terms, double quantum) {
  if (!(quantum > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "quantum must be positive");
  }
  QuantizedSchedule out;
  for (const BvnTerm& term : terms) {
    const int copies = static_cast<int>(std::round(term.coefficient / quantum));
    out.report.terms.push_back({term.coefficient, copies});
    out.report.total_mass += term.coefficient;
    out.report.absolute_error += std::abs(copies * quantum - term.coefficient);
    if (copies == 0) {
      ++out.report.dropped_terms;
      out.report.dropped_mass += term.coefficient;
    }
    for (int c = 0; c < copies; ++c) out.matchings.push_back(term.permutation);
  }
  out.report.schedule_length = static_cast<int>(out.matchings.size());
  return out;
}

}  // namespace vermilion
