#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rewardroute/constraints.hpp"
#include "rewardroute/decimal.hpp"
#include "rewardroute/geometry.hpp"
#include "rewardroute/response_parser.hpp"

namespace rewardroute {

enum class TaskRoute {
  kStringMatch,
  kMultipleChoice,
  kNumeric,
  kListStringMatch,
  kOrdering,
  kWebAction,
  kGrounding,
  kClicking,
  kInstructionFollowing,
  kLlmJudge,
};

std::string_view to_string(TaskRoute route);

// Resolves a route name, including aliases ("counting", "search").
std::optional<TaskRoute> parse_route(std::string_view name);

std::span<const TaskRoute> all_routes();
std::span<const std::pair<std::string_view, TaskRoute>> route_aliases();

// Boxed-count rule used by the format reward for this route.
AnswerKind answer_kind(TaskRoute route);

// ---------------------------------------------------------------------------
// Ground-truth payloads, one per route.

struct TextGold {
  std::string text;
  bool operator==(const TextGold&) const = default;
};

struct ChoiceGold {
  char letter = 'A';
  bool operator==(const ChoiceGold&) const = default;
};

struct NumericGold {
  Decimal value;
  std::optional<double> tolerance;  // relative, scaled by max(1, |gold|)
  bool operator==(const NumericGold&) const = default;
};

struct StringSetGold {
  std::vector<std::string> accepted;
  bool operator==(const StringSetGold&) const = default;
};

struct OrderingGold {
  std::vector<long long> sequence;
  bool operator==(const OrderingGold&) const = default;
};

struct WebAction {
  std::optional<std::string> action;
  std::optional<std::string> mark;
  std::optional<std::string> value;
  bool operator==(const WebAction&) const = default;
};

struct BoxListGold {
  std::vector<BBox> boxes;
  bool operator==(const BoxListGold&) const = default;
};

struct RegionGold {
  BBox region;
  bool operator==(const RegionGold&) const = default;
};

struct InstructionGold {
  std::vector<ConstraintSpec> constraints;
  std::optional<std::string> reference;  // enables the judge blend
};

struct JudgeReference {
  std::string reference;
  bool operator==(const JudgeReference&) const = default;
};

using GroundTruthPayload =
    std::variant<TextGold, ChoiceGold, NumericGold, StringSetGold, OrderingGold, WebAction,
                 BoxListGold, RegionGold, InstructionGold, JudgeReference>;

struct GroundTruth {
  TaskRoute route = TaskRoute::kStringMatch;
  GroundTruthPayload payload;
};

// Throws InvalidPayload when the payload alternative does not fit the route.
void check_payload(const GroundTruth& gt);

// Score plus a short human-readable diagnostic.
struct Verdict {
  double score = 0.0;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Verifiers. `pred` is the extracted prediction text; a `\boxed{...}` wrapper
// left in it is unwrapped first.

double verify_string_match(std::string_view pred, std::string_view gold);
Verdict verify_multiple_choice(std::string_view pred, char gold);
Verdict verify_numeric(std::string_view pred, const Decimal& gold,
                       std::optional<double> tolerance = std::nullopt);
double verify_list_string_match(std::string_view pred, std::span<const std::string> gold);
double verify_ordering(std::span<const long long> pred, std::span<const long long> gold);
double verify_web_action(const WebAction& pred, const WebAction& gold);

inline constexpr double kGroundingIouThreshold = 0.5;
inline constexpr double kOrderingPartialCredit = 0.2;

double verify_grounding(std::span<const BBox> preds, std::span<const BBox> golds,
                        double threshold = kGroundingIouThreshold);
double verify_clicking(Point click, const BBox& gold);
double verify_instruction_following(std::string_view text, std::span<const ConstraintSpec> constraints);

// Route-agnostic baseline: stripped case-insensitive equality, then numeric
// equivalence of constant expressions, then option letters.
double unified_verify(std::string_view pred, std::string_view gold);

// ---------------------------------------------------------------------------
// Prediction extraction.

// The text a verifier sees: the last boxed expression of the answer block,
// else the answer block, else the last boxed expression anywhere, else the
// whole response. Always trimmed.
std::string prediction_text(const ParsedResponse& parsed, std::string_view response);

// Strips one enclosing `\boxed{...}` if the text is exactly that.
std::string unbox(std::string_view text);

// Integers in order ("[3, 1, 2]", "3 > 1 > 2"). Empty when none.
std::vector<long long> parse_integer_list(std::string_view text);

// First JSON object in the text carrying ACTION/MARK/VALUE keys
// (case-insensitive). Numbers are rendered as strings.
std::optional<WebAction> parse_web_action(std::string_view text);

// Boxes from a flat list of numbers, four per box ("[10,20,30,40]",
// "[[..],[..]]", "(10,20),(30,40)"). Corners are reordered and, in the
// normalized space, clamped to [0, 1000]. nullopt when the number count is
// not a multiple of four.
std::optional<std::vector<BBox>> parse_boxes(std::string_view text, CoordinateSpace space);

// A click point: two numbers, or the center of a four-number box.
std::optional<Point> parse_point(std::string_view text);

}  // namespace rewardroute
