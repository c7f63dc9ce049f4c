#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rewardroute {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline constexpr int kUnassigned = -1;

// Hungarian algorithm (shortest augmenting paths with potentials, O(n^2 m)).
// Returns, for every row, the assigned column or kUnassigned. Every row is
// assigned when rows <= cols, every column otherwise; the total cost of the
// assigned pairs is minimal.
std::vector<int> min_cost_assignment(const Matrix& cost);

// Same, maximizing the summed weight.
std::vector<int> max_weight_assignment(const Matrix& weight);

}  // namespace rewardroute
