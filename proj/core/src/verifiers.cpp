#include "rewardroute/verifiers.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rewardroute/assignment.hpp"
#include "rewardroute/canonicalizer.hpp"
#include "rewardroute/errors.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

constexpr std::array<std::pair<TaskRoute, std::string_view>, 10> kRouteNames = {{
    {TaskRoute::kStringMatch, "string_match"},
    {TaskRoute::kMultipleChoice, "multiple_choice"},
    {TaskRoute::kNumeric, "numeric"},
    {TaskRoute::kListStringMatch, "list_string_match"},
    {TaskRoute::kOrdering, "ordering"},
    {TaskRoute::kWebAction, "web_action"},
    {TaskRoute::kGrounding, "grounding"},
    {TaskRoute::kClicking, "clicking"},
    {TaskRoute::kInstructionFollowing, "instruction_following"},
    {TaskRoute::kLlmJudge, "llm_judge"},
}};

constexpr std::array<TaskRoute, 10> kRoutes = {
    TaskRoute::kStringMatch, TaskRoute::kMultipleChoice, TaskRoute::kNumeric,
    TaskRoute::kListStringMatch, TaskRoute::kOrdering, TaskRoute::kWebAction,
    TaskRoute::kGrounding, TaskRoute::kClicking, TaskRoute::kInstructionFollowing,
    TaskRoute::kLlmJudge,
};

constexpr std::array<std::pair<std::string_view, TaskRoute>, 2> kAliases = {{
    {"counting", TaskRoute::kNumeric},
    {"search", TaskRoute::kStringMatch},
}};

bool field_matches(const std::optional<std::string>& pred, const std::optional<std::string>& gold) {
  return pred && normalize_string(*pred) == normalize_string(*gold);
}

}  // namespace

std::string_view to_string(TaskRoute route) {
  for (const auto& [r, name] : kRouteNames) {
    if (r == route) return name;
  }
  return "";
}

std::optional<TaskRoute> parse_route(std::string_view name) {
  for (const auto& [r, n] : kRouteNames) {
    if (n == name) return r;
  }
  for (const auto& [alias, r] : kAliases) {
    if (alias == name) return r;
  }
  return std::nullopt;
}

std::span<const TaskRoute> all_routes() { return kRoutes; }

std::span<const std::pair<std::string_view, TaskRoute>> route_aliases() { return kAliases; }

AnswerKind answer_kind(TaskRoute route) {
  switch (route) {
    case TaskRoute::kGrounding:
    case TaskRoute::kClicking: return AnswerKind::kGroundingLike;
    case TaskRoute::kInstructionFollowing:
    case TaskRoute::kLlmJudge: return AnswerKind::kOpenEnded;
    default: return AnswerKind::kDiscreteSymbolic;
  }
}

void check_payload(const GroundTruth& gt) {
  std::size_t expected = 0;
  switch (gt.route) {
    case TaskRoute::kStringMatch: expected = 0; break;
    case TaskRoute::kMultipleChoice: expected = 1; break;
    case TaskRoute::kNumeric: expected = 2; break;
    case TaskRoute::kListStringMatch: expected = 3; break;
    case TaskRoute::kOrdering: expected = 4; break;
    case TaskRoute::kWebAction: expected = 5; break;
    case TaskRoute::kGrounding: expected = 6; break;
    case TaskRoute::kClicking: expected = 7; break;
    case TaskRoute::kInstructionFollowing: expected = 8; break;
    case TaskRoute::kLlmJudge: expected = 9; break;
  }
  std::string route(to_string(gt.route));
  if (gt.payload.index() != expected) throw InvalidPayload("payload does not match route " + route);

  if (const auto* set = std::get_if<StringSetGold>(&gt.payload); set && set->accepted.empty()) {
    throw InvalidPayload("list_string_match needs at least one accepted string");
  }
  if (const auto* order = std::get_if<OrderingGold>(&gt.payload)) {
    std::vector<long long> sorted = order->sequence;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidPayload("ordering gold must be a non-empty list of distinct integers");
    }
  }
  if (const auto* action = std::get_if<WebAction>(&gt.payload);
      action && !action->action && !action->mark && !action->value) {
    throw InvalidPayload("web_action gold needs at least one non-null field");
  }
  if (const auto* ins = std::get_if<InstructionGold>(&gt.payload); ins && ins->constraints.empty()) {
    throw InvalidPayload("instruction_following needs at least one constraint");
  }
  if (const auto* boxes = std::get_if<BoxListGold>(&gt.payload); boxes && !boxes->boxes.empty()) {
    for (const BBox& b : boxes->boxes) {
      if (b.space != boxes->boxes.front().space) throw InvalidPayload("mixed coordinate spaces in gold boxes");
    }
  }
}

double verify_string_match(std::string_view pred, std::string_view gold) {
  return normalize_string(unbox(pred)) == normalize_string(gold) ? 1.0 : 0.0;
}

Verdict verify_multiple_choice(std::string_view pred, char gold) {
  std::optional<char> letter = extract_choice_letter(unbox(pred));
  if (!letter) return {0.0, "no single option letter in prediction"};
  char g = detail::to_upper(gold);
  if (*letter == g) return {1.0, std::string("choice ") + g};
  return {0.0, std::string("choice ") + *letter + " != " + g};
}

Verdict verify_numeric(std::string_view pred, const Decimal& gold, std::optional<double> tolerance) {
  ExpressionValue value;
  try {
    value = parse_numeric_prediction(unbox(pred));
  } catch (const Error& e) {
    return {0.0, std::string("numeric parse failed: ") + e.what()};
  }
  if (tolerance) {
    double p = value.value.to_double();
    double g = gold.to_double();
    double limit = *tolerance * std::max(1.0, std::fabs(g));
    bool ok = std::fabs(p - g) <= limit;
    return {ok ? 1.0 : 0.0, "|pred - gold| = " + std::to_string(std::fabs(p - g))};
  }
  Decimal p = Decimal::round(value.value, kFractionDigits);
  Decimal g = Decimal::round(gold.to_rational(), kFractionDigits);
  if (p == g) return {1.0, "numeric " + g.to_string()};
  return {0.0, "numeric " + p.to_string() + " != " + g.to_string()};
}

double verify_list_string_match(std::string_view pred, std::span<const std::string> gold) {
  std::string p = normalize_string(unbox(pred));
  return std::any_of(gold.begin(), gold.end(),
                     [&](const std::string& g) { return normalize_string(g) == p; })
             ? 1.0
             : 0.0;
}

double verify_ordering(std::span<const long long> pred, std::span<const long long> gold) {
  if (std::equal(pred.begin(), pred.end(), gold.begin(), gold.end())) return 1.0;
  if (pred.size() == gold.size() && std::is_permutation(pred.begin(), pred.end(), gold.begin())) {
    return kOrderingPartialCredit;
  }
  return 0.0;
}

double verify_web_action(const WebAction& pred, const WebAction& gold) {
  int total = 0;
  int matched = 0;
  auto tally = [&](const std::optional<std::string>& p, const std::optional<std::string>& g) {
    if (!g) return;
    ++total;
    if (field_matches(p, g)) ++matched;
  };
  tally(pred.action, gold.action);
  tally(pred.mark, gold.mark);
  tally(pred.value, gold.value);
  if (total == 0) return 0.0;
  return static_cast<double>(matched) / total;
}

double verify_grounding(std::span<const BBox> preds, std::span<const BBox> golds, double threshold) {
  if (preds.empty() && golds.empty()) return 1.0;
  if (preds.empty() || golds.empty()) return 0.0;

  Matrix overlap(preds.size(), golds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = 0; j < golds.size(); ++j) overlap(i, j) = iou(preds[i], golds[j]);
  }
  std::vector<int> match = max_weight_assignment(overlap);
  int tp = 0;
  for (std::size_t i = 0; i < match.size(); ++i) {
    if (match[i] != kUnassigned && overlap(i, static_cast<std::size_t>(match[i])) >= threshold) ++tp;
  }
  return 2.0 * tp / static_cast<double>(preds.size() + golds.size());
}

double verify_clicking(Point click, const BBox& gold) { return contains(gold, click) ? 1.0 : 0.0; }

double verify_instruction_following(std::string_view text, std::span<const ConstraintSpec> constraints) {
  if (constraints.empty()) throw InvalidArgument("no constraints to check");
  auto satisfied = std::count_if(constraints.begin(), constraints.end(),
                                 [&](const ConstraintSpec& c) { return check_constraint(text, c); });
  return static_cast<double>(satisfied) / static_cast<double>(constraints.size());
}

double unified_verify(std::string_view pred, std::string_view gold) {
  std::string p = detail::lower(detail::trim(pred));
  std::string g = detail::lower(detail::trim(gold));
  if (p == g) return 1.0;

  try {
    ExpressionValue pv = parse_numeric_prediction(p);
    ExpressionValue gv = parse_numeric_prediction(g);
    if (pv.value == gv.value) return 1.0;
    if ((pv.used_division || gv.used_division) &&
        Decimal::round(pv.value, kFractionDigits) == Decimal::round(gv.value, kFractionDigits)) {
      return 1.0;
    }
    return 0.0;
  } catch (const Error&) {
  }

  auto pl = extract_choice_letter(p);
  auto gl = extract_choice_letter(g);
  if (pl && gl && *pl == *gl) return 1.0;
  return 0.0;
}

}  // namespace rewardroute
