// Prediction-side extraction: turning a model response into the value each
// verifier compares against its ground truth.

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "rewardroute/verifiers.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

struct NumberToken {
  double value;
  bool integral;
};

std::vector<NumberToken> scan_numbers(std::string_view text) {
  std::vector<NumberToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    bool negative = text[i] == '-' && i + 1 < text.size() && detail::is_digit(text[i + 1]) &&
                    (i == 0 || !detail::is_digit(text[i - 1]));
    if (!negative && !detail::is_digit(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (negative) ++i;
    while (i < text.size() && detail::is_digit(text[i])) ++i;
    bool integral = true;
    if (i + 1 < text.size() && text[i] == '.' && detail::is_digit(text[i + 1])) {
      integral = false;
      ++i;
      while (i < text.size() && detail::is_digit(text[i])) ++i;
    }
    std::string token(text.substr(start, i - start));
    out.push_back({std::strtod(token.c_str(), nullptr), integral});
  }
  return out;
}

int to_coordinate(double v) { return static_cast<int>(std::lround(v)); }

std::optional<std::string> field_text(const nlohmann::json& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return v.dump();
}

}  // namespace

std::string prediction_text(const ParsedResponse& parsed, std::string_view response) {
  if (!parsed.boxed.empty()) return std::string(detail::trim(parsed.boxed.back()));
  if (parsed.answer) return std::string(detail::trim(*parsed.answer));
  std::vector<std::string> boxed = extract_boxed(response);
  if (!boxed.empty()) return std::string(detail::trim(boxed.back()));
  return std::string(detail::trim(response));
}

std::string unbox(std::string_view text) {
  std::string_view t = detail::trim(text);
  if (!t.starts_with("\\boxed{")) return std::string(t);
  std::vector<std::string> inner = extract_boxed(t);
  if (inner.size() == 1 && t.size() == inner.front().size() + 8) {
    return std::string(detail::trim(inner.front()));
  }
  return std::string(t);
}

std::vector<long long> parse_integer_list(std::string_view text) {
  std::vector<long long> out;
  for (const NumberToken& n : scan_numbers(text)) {
    if (!n.integral) return {};
    out.push_back(static_cast<long long>(n.value));
  }
  return out;
}

std::optional<WebAction> parse_web_action(std::string_view text) {
  for (std::string_view span : detail::json_object_spans(text)) {
    nlohmann::json j = nlohmann::json::parse(span, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    WebAction action;
    bool any_key = false;
    for (const auto& [key, value] : j.items()) {
      std::string k = detail::lower(key);
      if (k == "action") action.action = field_text(value);
      else if (k == "mark") action.mark = field_text(value);
      else if (k == "value") action.value = field_text(value);
      else continue;
      any_key = true;
    }
    if (any_key) return action;
  }
  return std::nullopt;
}

std::optional<std::vector<BBox>> parse_boxes(std::string_view text, CoordinateSpace space) {
  std::vector<NumberToken> numbers = scan_numbers(text);
  if (numbers.size() % 4 != 0) return std::nullopt;
  std::vector<BBox> boxes;
  for (std::size_t i = 0; i < numbers.size(); i += 4) {
    int x1 = to_coordinate(numbers[i].value);
    int y1 = to_coordinate(numbers[i + 1].value);
    int x2 = to_coordinate(numbers[i + 2].value);
    int y2 = to_coordinate(numbers[i + 3].value);
    if (x1 > x2) std::swap(x1, x2);
    if (y1 > y2) std::swap(y1, y2);
    if (space == CoordinateSpace::kNormalized1000) {
      auto clamp = [](int v) { return std::clamp(v, 0, kNormalizedExtent); };
      x1 = clamp(x1), y1 = clamp(y1), x2 = clamp(x2), y2 = clamp(y2);
    }
    boxes.push_back(BBox{x1, y1, x2, y2, space});
  }
  return boxes;
}

std::optional<Point> parse_point(std::string_view text) {
  std::vector<NumberToken> numbers = scan_numbers(text);
  if (numbers.size() == 2) return Point{numbers[0].value, numbers[1].value};
  if (numbers.size() == 4) {
    return Point{(numbers[0].value + numbers[2].value) / 2, (numbers[1].value + numbers[3].value) / 2};
  }
  return std::nullopt;
}

}  // namespace rewardroute
