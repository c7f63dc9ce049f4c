#pragma once

// Independent reference implementations the library is checked against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "rewardroute/geometry.hpp"

namespace oracle {

// Exhaustive search over injective assignments of the smaller side into the
// larger one. Picks the assignment with the greatest summed IoU and returns
// its thresholded F1.
inline double grounding_f1(const std::vector<rewardroute::BBox>& preds,
                           const std::vector<rewardroute::BBox>& golds, double threshold = 0.5) {
  if (preds.empty() && golds.empty()) return 1.0;
  if (preds.empty() || golds.empty()) return 0.0;
  const bool transpose = preds.size() > golds.size();
  const auto& small = transpose ? golds : preds;
  const auto& large = transpose ? preds : golds;

  std::vector<int> cols(large.size());
  std::iota(cols.begin(), cols.end(), 0);
  double best_sum = -1.0;
  int best_tp = 0;
  // Every permutation of the large side; its prefix is the assignment.
  do {
    double sum = 0.0;
    int tp = 0;
    for (std::size_t i = 0; i < small.size(); ++i) {
      double v = rewardroute::iou(small[i], large[static_cast<std::size_t>(cols[i])]);
      sum += v;
      if (v >= threshold) ++tp;
    }
    if (sum > best_sum + 1e-12) {
      best_sum = sum;
      best_tp = tp;
    }
  } while (std::next_permutation(cols.begin(), cols.end()));
  return 2.0 * best_tp / static_cast<double>(preds.size() + golds.size());
}

// Central difference of f at x along coordinate k.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x, std::size_t k, double h) {
  const double x0 = x[k];
  x[k] = x0 + h;
  double up = f(x);
  x[k] = x0 - h;
  double down = f(x);
  return (up - down) / (2.0 * h);
}

// alpha with max(v^alpha) / min(v^alpha) == spread, by bisection.
inline double bisect_alpha(const std::vector<double>& values, double spread) {
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double ratio = *hi_it / *lo_it;
  double lo = 0.0, hi = 1.0;
  while (std::pow(ratio, hi) < spread) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (std::pow(ratio, mid) < spread) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline rewardroute::BBox random_box(std::mt19937_64& rng, int extent = 1000) {
  std::uniform_int_distribution<int> coord(0, extent);
  int x1 = coord(rng), x2 = coord(rng), y1 = coord(rng), y2 = coord(rng);
  if (x1 > x2) std::swap(x1, x2);
  if (y1 > y2) std::swap(y1, y2);
  return rewardroute::BBox{x1, y1, x2, y2, rewardroute::CoordinateSpace::kNormalized1000};
}

// A box near `b`, so that matches above the threshold actually occur.
inline rewardroute::BBox jitter_box(std::mt19937_64& rng, const rewardroute::BBox& b, int amount) {
  std::uniform_int_distribution<int> d(-amount, amount);
  auto clamp = [](int v) { return std::clamp(v, 0, 1000); };
  int x1 = clamp(b.x1 + d(rng)), x2 = clamp(b.x2 + d(rng));
  int y1 = clamp(b.y1 + d(rng)), y2 = clamp(b.y2 + d(rng));
  if (x1 > x2) std::swap(x1, x2);
  if (y1 > y2) std::swap(y1, y2);
  return rewardroute::BBox{x1, y1, x2, y2, rewardroute::CoordinateSpace::kNormalized1000};
}

}  // namespace oracle
