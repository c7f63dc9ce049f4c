#include "rewardroute/assignment.hpp"

#include <limits>

namespace rewardroute {
namespace {

// Rectangular Kuhn-Munkres for rows <= cols, 1-based internally.
std::vector<int> solve_rows_le_cols(const Matrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> assignment(n, kUnassigned);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) assignment[p[j] - 1] = static_cast<int>(j - 1);
  }
  return assignment;
}

}  // namespace

std::vector<int> min_cost_assignment(const Matrix& cost) {
  if (cost.rows() == 0) return {};
  if (cost.cols() == 0) return std::vector<int>(cost.rows(), kUnassigned);
  if (cost.rows() <= cost.cols()) return solve_rows_le_cols(cost);

  Matrix transposed(cost.cols(), cost.rows());
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    for (std::size_t c = 0; c < cost.cols(); ++c) transposed(c, r) = cost(r, c);
  }
  std::vector<int> by_col = solve_rows_le_cols(transposed);
  std::vector<int> assignment(cost.rows(), kUnassigned);
  for (std::size_t c = 0; c < by_col.size(); ++c) {
    if (by_col[c] != kUnassigned) assignment[static_cast<std::size_t>(by_col[c])] = static_cast<int>(c);
  }
  return assignment;
}

std::vector<int> max_weight_assignment(const Matrix& weight) {
  Matrix cost(weight.rows(), weight.cols());
  for (std::size_t r = 0; r < weight.rows(); ++r) {
    for (std::size_t c = 0; c < weight.cols(); ++c) cost(r, c) = -weight(r, c);
  }
  return min_cost_assignment(cost);
}

}  // namespace rewardroute
