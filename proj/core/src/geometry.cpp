#include "rewardroute/geometry.hpp"

#include <algorithm>
#include <string>

#include "rewardroute/errors.hpp"

namespace rewardroute {

std::string_view to_string(CoordinateSpace space) {
  return space == CoordinateSpace::kNormalized1000 ? "normalized-0-1000" : "absolute-pixels";
}

std::optional<CoordinateSpace> parse_coordinate_space(std::string_view name) {
  if (name == "normalized-0-1000") return CoordinateSpace::kNormalized1000;
  if (name == "absolute-pixels") return CoordinateSpace::kAbsolutePixels;
  return std::nullopt;
}

BBox make_box(int x1, int y1, int x2, int y2, CoordinateSpace space) {
  if (x1 > x2 || y1 > y2) {
    throw InvalidArgument("box corners out of order: [" + std::to_string(x1) + "," +
                          std::to_string(y1) + "," + std::to_string(x2) + "," +
                          std::to_string(y2) + "]");
  }
  if (space == CoordinateSpace::kNormalized1000) {
    for (int v : {x1, y1, x2, y2}) {
      if (v < 0 || v > kNormalizedExtent) {
        throw InvalidArgument("normalized coordinate outside [0, 1000]: " + std::to_string(v));
      }
    }
  }
  return BBox{x1, y1, x2, y2, space};
}

double iou(const BBox& a, const BBox& b) {
  if (a.space != b.space) throw SpaceMismatch("iou over boxes in different coordinate spaces");
  long long area_a = a.area();
  long long area_b = b.area();
  if (area_a <= 0 || area_b <= 0) return 0.0;
  long long w = std::max(0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  long long h = std::max(0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  long long inter = w * h;
  long long uni = area_a + area_b - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

bool contains(const BBox& box, Point p) {
  return p.x >= box.x1 && p.x <= box.x2 && p.y >= box.y1 && p.y <= box.y2;
}

}  // namespace rewardroute
