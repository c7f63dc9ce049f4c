#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace rewardroute {

enum class CoordinateSpace {
  kNormalized1000,  // Qwen-style, every coordinate in [0, 1000]
  kAbsolutePixels,
};

std::string_view to_string(CoordinateSpace space);
std::optional<CoordinateSpace> parse_coordinate_space(std::string_view name);

inline constexpr int kNormalizedExtent = 1000;

// Axis-aligned box with inclusive corners (x1, y1) and (x2, y2).
struct BBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;
  CoordinateSpace space = CoordinateSpace::kNormalized1000;

  long long area() const { return static_cast<long long>(x2 - x1) * (y2 - y1); }
  bool operator==(const BBox&) const = default;
};

// Validating constructor: throws InvalidArgument when x1 > x2, y1 > y2, or a
// normalized coordinate leaves [0, 1000].
BBox make_box(int x1, int y1, int x2, int y2, CoordinateSpace space);

struct Point {
  double x = 0;
  double y = 0;
};

// Intersection over union; zero-area boxes give 0. Throws SpaceMismatch.
double iou(const BBox& a, const BBox& b);

// Boundary-inclusive containment test.
bool contains(const BBox& box, Point p);

}  // namespace rewardroute
