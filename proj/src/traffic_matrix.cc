#include "vermilion/traffic_matrix.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vermilion/error.h"

namespace vermilion {

bool TrafficMatrix::IsZero() const {
  for (double v : entries_.data()) {
    if (v != 0.0) return false;
  }
  return true;
}

TrafficMatrix ValidateHose(SquareMatrix<double> raw, double link_capacity,
                           int degree) {
  const int n = raw.size();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "empty matrix");
  if (!(link_capacity > 0) || !std::isfinite(link_capacity)) {
    throw Error(ErrorCode::kInvalidArgument, "link capacity must be positive");
  }
  if (degree < 1) throw Error(ErrorCode::kInvalidArgument, "degree must be >= 1");
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const double x = raw(u, v);
      if (!std::isfinite(x)) {
        std::ostringstream msg;
        msg << "entry (" << u << "," << v << ") is not finite";
        throw Error(ErrorCode::kInvalidArgument, msg.str());
      }
      if (x < 0) {
        std::ostringstream msg;
        msg << "entry (" << u << "," << v << ") = " << x;
        throw Error(ErrorCode::kNegativeEntry, msg.str());
      }
    }
    if (raw(u, u) != 0.0) {
      std::ostringstream msg;
      msg << "entry (" << u << "," << u << ") = " << raw(u, u);
      throw Error(ErrorCode::kNonzeroDiagonal, msg.str());
    }
  }
  const double bound = link_capacity * degree;
  const double slack = 1e-9 * bound;
  for (int u = 0; u < n; ++u) {
    for (int axis = 0; axis < 2; ++axis) {
      const double sum = axis == 0 ? raw.RowSum(u) : raw.ColSum(u);
      if (sum > bound + slack) {
        std::ostringstream msg;
        msg << (axis == 0 ? "row " : "column ") << u << " sums to " << sum
            << " > c*d = " << bound;
        throw Error(ErrorCode::kHoseViolation, msg.str());
      }
    }
  }
  return TrafficMatrix(std::move(raw), link_capacity, degree);
}

double MaxLineSum(const SquareMatrix<double>& m) {
  double best = 0;
  for (int i = 0; i < m.size(); ++i) {
    best = std::max({best, m.RowSum(i), m.ColSum(i)});
  }
  return best;
}

NormalizedMatrix Normalize(const SquareMatrix<double>& raw) {
  NormalizedMatrix out{raw, MaxLineSum(raw)};
  if (out.divisor > 0) {
    for (double& v : out.entries.data()) v /= out.divisor;
  }
  return out;
}

NormalizedMatrix Normalize(const TrafficMatrix& m) {
  return Normalize(m.entries());
}

ScaledMatrix Scale(const NormalizedMatrix& normalized, int k) {
  if (k < 2) {
    throw Error(ErrorCode::kInvalidK, "k must be >= 2, got " + std::to_string(k));
  }
  ScaledMatrix out{normalized.entries, k};
  const double factor =
      static_cast<double>(k - 1) * static_cast<double>(out.entries.size());
  for (double& v : out.entries.data()) v *= factor;
  return out;
}

SquareMatrix<double> RingDemand(int n, double rate) {
  SquareMatrix<double> m(n);
  if (n < 2) return m;
  for (int u = 0; u < n; ++u) m(u, (u + 1) % n) = rate;
  return m;
}

SquareMatrix<double> PermutationDemand(const std::vector<int>& perm,
                                       double rate) {
  const int n = static_cast<int>(perm.size());
  SquareMatrix<double> m(n);
  for (int u = 0; u < n; ++u) {
    if (perm[u] != u) m(u, perm[u]) = rate;
  }
  return m;
}

SquareMatrix<double> UniformDemand(int n, double rate) {
  SquareMatrix<double> m(n);
  if (n < 2) return m;
  const double each = rate / (n - 1);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) m(u, v) = each;
    }
  }
  return m;
}

SquareMatrix<double> SkewDemand(const std::vector<int>& perm, double skew,
                                double rate) {
  const int n = static_cast<int>(perm.size());
  SquareMatrix<double> m = UniformDemand(n, (1.0 - skew) * rate);
  for (int u = 0; u < n; ++u) {
    if (perm[u] != u) m(u, perm[u]) += skew * rate;
  }
  return m;
}

std::vector<int> RandomDerangement(int n, Rng& rng) {
  std::vector<int> perm(n);
  if (n < 2) {
    for (int i = 0; i < n; ++i) perm[i] = i;
    return perm;
  }
  while (true) {
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.Shuffle(perm);
    bool fixed_point = false;
    for (int i = 0; i < n && !fixed_point; ++i) fixed_point = perm[i] == i;
    if (!fixed_point) return perm;
  }
}

SquareMatrix<double> RandomSaturatedHose(int n, double rate, Rng& rng,
                                         int terms) {
  if (terms <= 0) terms = n;
  std::vector<double> weights(terms);
  double total = 0;
  for (double& w : weights) {
    w = 0.05 + rng.Uniform01();
    total += w;
  }
  SquareMatrix<double> m(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> perm = RandomDerangement(n, rng);
    const double w = rate * weights[t] / total;
    for (int u = 0; u < n; ++u) m(u, perm[u]) += w;
  }
  return m;
}

}  // namespace vermilion
