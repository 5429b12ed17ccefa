#ifndef VERMILION_SQUARE_MATRIX_H_
#define VERMILION_SQUARE_MATRIX_H_

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace vermilion {

// Dense row-major n x n matrix. Row index is the source node, column index
// the destination node throughout the library.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, T fill = T{})
      : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

  int size() const { return n_; }

  T& operator()(int row, int col) {
    assert(row >= 0 && row < n_ && col >= 0 && col < n_);
    return data_[static_cast<std::size_t>(row) * n_ + col];
  }
  const T& operator()(int row, int col) const {
    assert(row >= 0 && row < n_ && col >= 0 && col < n_);
    return data_[static_cast<std::size_t>(row) * n_ + col];
  }

  std::span<T> row(int r) {
    return {data_.data() + static_cast<std::size_t>(r) * n_,
            static_cast<std::size_t>(n_)};
  }
  std::span<const T> row(int r) const {
    return {data_.data() + static_cast<std::size_t>(r) * n_,
            static_cast<std::size_t>(n_)};
  }

  T RowSum(int r) const {
    T sum{};
    for (const T& v : row(r)) sum += v;
    return sum;
  }
  T ColSum(int c) const {
    T sum{};
    for (int r = 0; r < n_; ++r) sum += (*this)(r, c);
    return sum;
  }
  T Total() const {
    T sum{};
    for (const T& v : data_) sum += v;
    return sum;
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<T> data_;
};

}  // namespace vermilion

#endif  // VERMILION_SQUARE_MATRIX_H_
