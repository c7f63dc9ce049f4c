#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rewardroute/assignment.hpp"
#include "rewardroute/errors.hpp"
#include "rewardroute/geometry.hpp"

using namespace rewardroute;

namespace {

BBox box(int x1, int y1, int x2, int y2) { return make_box(x1, y1, x2, y2, CoordinateSpace::kNormalized1000); }

double total(const Matrix& m, const std::vector<int>& assign) {
  double s = 0;
  for (std::size_t r = 0; r < assign.size(); ++r) {
    if (assign[r] != kUnassigned) s += m(r, static_cast<std::size_t>(assign[r]));
  }
  return s;
}

}  // namespace

TEST(Iou, Examples) {
  EXPECT_EQ(iou(box(0, 0, 100, 100), box(0, 0, 100, 100)), 1.0);
  EXPECT_EQ(iou(box(0, 0, 10, 10), box(20, 20, 30, 30)), 0.0);
  EXPECT_DOUBLE_EQ(iou(box(0, 0, 100, 100), box(50, 0, 150, 100)), 1.0 / 3.0);
  EXPECT_EQ(iou(box(5, 5, 5, 50), box(0, 0, 100, 100)), 0.0);
}

TEST(Iou, SymmetricAndTranslationInvariant) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    BBox a = oracle::random_box(rng, 800), b = oracle::random_box(rng, 800);
    EXPECT_EQ(iou(a, b), iou(b, a));
    BBox a2{a.x1 + 100, a.y1 + 50, a.x2 + 100, a.y2 + 50, a.space};
    BBox b2{b.x1 + 100, b.y1 + 50, b.x2 + 100, b.y2 + 50, b.space};
    EXPECT_DOUBLE_EQ(iou(a, b), iou(a2, b2));
  }
}

TEST(Iou, SpaceMismatch) {
  BBox px = make_box(0, 0, 10, 10, CoordinateSpace::kAbsolutePixels);
  EXPECT_THROW(iou(box(0, 0, 10, 10), px), SpaceMismatch);
}

TEST(MakeBox, Validation) {
  EXPECT_THROW(box(10, 0, 5, 5), InvalidArgument);
  EXPECT_THROW(box(0, 0, 1001, 5), InvalidArgument);
  EXPECT_NO_THROW(make_box(0, 0, 4000, 3000, CoordinateSpace::kAbsolutePixels));
}

TEST(Contains, BoundaryInclusive) {
  BBox b = box(100, 100, 200, 200);
  EXPECT_TRUE(contains(b, {150, 150}));
  EXPECT_FALSE(contains(b, {250, 250}));
  EXPECT_TRUE(contains(b, {200, 200}));
  EXPECT_TRUE(contains(b, {100, 150}));
}

TEST(CoordinateSpace, Names) {
  EXPECT_EQ(parse_coordinate_space("normalized-0-1000"), CoordinateSpace::kNormalized1000);
  EXPECT_EQ(parse_coordinate_space("absolute-pixels"), CoordinateSpace::kAbsolutePixels);
  EXPECT_FALSE(parse_coordinate_space("percent").has_value());
}

TEST(Assignment, SquareMinCost) {
  Matrix m(3, 3);
  double v[3][3] = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = v[r][c];
  std::vector<int> a = min_cost_assignment(m);
  EXPECT_EQ(total(m, a), 5.0);
}

TEST(Assignment, RectangularMatchesBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(rng);
    std::vector<int> a = max_weight_assignment(m);
    ASSERT_EQ(a.size(), rows);
    std::size_t assigned = 0;
    std::vector<bool> used(cols, false);
    for (int c : a) {
      if (c == kUnassigned) continue;
      ASSERT_FALSE(used[static_cast<std::size_t>(c)]);
      used[static_cast<std::size_t>(c)] = true;
      ++assigned;
    }
    EXPECT_EQ(assigned, std::min(rows, cols));

    // Exhaustive optimum over injections of the smaller side.
    double best = -1;
    if (rows <= cols) {
      std::vector<int> perm(cols);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        double s = 0;
        for (std::size_t r = 0; r < rows; ++r) s += m(r, static_cast<std::size_t>(perm[r]));
        best = std::max(best, s);
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      std::vector<int> perm(rows);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        double s = 0;
        for (std::size_t c = 0; c < cols; ++c) s += m(static_cast<std::size_t>(perm[c]), c);
        best = std::max(best, s);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    EXPECT_NEAR(total(m, a), best, 1e-12);
  }
}

TEST(Assignment, Empty) {
  EXPECT_TRUE(max_weight_assignment(Matrix(0, 3)).empty());
  std::vector<int> a = max_weight_assignment(Matrix(2, 0));
  EXPECT_EQ(a, (std::vector<int>{kUnassigned, kUnassigned}));
}
