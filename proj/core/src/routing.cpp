#include "rewardroute/routing.hpp"

#include <sstream>

#include "rewardroute/errors.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

// Text an open-ended answer is judged on: the answer block, else everything.
std::string open_text(const ParsedResponse& parsed, std::string_view response) {
  if (parsed.answer) return std::string(detail::trim(*parsed.answer));
  return std::string(detail::trim(response));
}

JudgeOutcome ask_judge(const ScoredSample& sample, Judge* judge, std::string answer,
                       const std::string& reference) {
  if (!judge) {
    throw MissingJudge("sample '" + sample.id + "' needs a judge but none is configured");
  }
  JudgeRequest req{sample.prompt.value_or(""), std::move(answer), reference};
  return judge->evaluate(req, sample.id);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool needs_judge(const ScoredSample& sample) {
  if (sample.ground_truth.route == TaskRoute::kLlmJudge) return true;
  const auto* ins = std::get_if<InstructionGold>(&sample.ground_truth.payload);
  return ins && ins->reference.has_value();
}

Verdict route_accuracy(const ScoredSample& sample, const ParsedResponse& parsed, Judge* judge,
                       const ScoringOptions& options) {
  const GroundTruth& gt = sample.ground_truth;
  check_payload(gt);
  const std::string pred = prediction_text(parsed, sample.response);
  const CoordinateSpace space = sample.coordinate_space.value_or(options.coordinate_space);

  switch (gt.route) {
    case TaskRoute::kStringMatch: {
      const auto& g = std::get<TextGold>(gt.payload);
      return {verify_string_match(pred, g.text), "string match"};
    }
    case TaskRoute::kMultipleChoice:
      return verify_multiple_choice(pred, std::get<ChoiceGold>(gt.payload).letter);
    case TaskRoute::kNumeric: {
      const auto& g = std::get<NumericGold>(gt.payload);
      return verify_numeric(pred, g.value, g.tolerance);
    }
    case TaskRoute::kListStringMatch: {
      const auto& g = std::get<StringSetGold>(gt.payload);
      return {verify_list_string_match(pred, g.accepted), "any-of match"};
    }
    case TaskRoute::kOrdering: {
      std::vector<long long> seq = parse_integer_list(pred);
      if (seq.empty()) return {0.0, "no integer sequence in prediction"};
      double s = verify_ordering(seq, std::get<OrderingGold>(gt.payload).sequence);
      return {s, s == 1.0 ? "exact order" : s > 0.0 ? "same items, wrong order" : "different items"};
    }
    case TaskRoute::kWebAction: {
      std::optional<WebAction> action = parse_web_action(pred);
      if (!action && parsed.answer) action = parse_web_action(*parsed.answer);
      if (!action) return {0.0, "no ACTION/MARK/VALUE object in prediction"};
      return {verify_web_action(*action, std::get<WebAction>(gt.payload)), "field fraction"};
    }
    case TaskRoute::kGrounding: {
      const auto& g = std::get<BoxListGold>(gt.payload);
      CoordinateSpace s = g.boxes.empty() ? space : g.boxes.front().space;
      // One box per \boxed{} is accepted as well as a list inside one.
      std::string all = pred;
      if (parsed.boxed.size() > 1) {
        all.clear();
        for (const std::string& b : parsed.boxed) all += b + " ";
      }
      std::optional<std::vector<BBox>> boxes = parse_boxes(all, s);
      if (!boxes) return {0.0, "coordinate count is not a multiple of 4"};
      return {verify_grounding(*boxes, g.boxes),
              std::to_string(boxes->size()) + " predicted / " + std::to_string(g.boxes.size()) + " gold boxes"};
    }
    case TaskRoute::kClicking: {
      std::optional<Point> p = parse_point(pred);
      if (!p) return {0.0, "no click point in prediction"};
      return {verify_clicking(*p, std::get<RegionGold>(gt.payload).region),
              "click (" + fmt(p->x) + ", " + fmt(p->y) + ")"};
    }
    case TaskRoute::kInstructionFollowing: {
      const auto& g = std::get<InstructionGold>(gt.payload);
      std::string text = open_text(parsed, sample.response);
      double r_inst = verify_instruction_following(text, g.constraints);
      std::string detail = "constraints " + fmt(r_inst);
      if (!g.reference) return {r_inst, detail};
      JudgeOutcome j = ask_judge(sample, judge, text, *g.reference);
      return {blend_if_judge(r_inst, j.score, options.reward), detail + ", " + j.detail};
    }
    case TaskRoute::kLlmJudge: {
      const auto& g = std::get<JudgeReference>(gt.payload);
      JudgeOutcome j = ask_judge(sample, judge, open_text(parsed, sample.response), g.reference);
      return {j.score, j.detail};
    }
  }
  throw UnknownRoute("unhandled route");
}

Verdict route_accuracy(const ScoredSample& sample, Judge* judge, const ScoringOptions& options) {
  return route_accuracy(sample, parse_response(sample.response, options.parse), judge, options);
}

RewardBreakdown score_sample(const ScoredSample& sample, Judge* judge, const ScoringOptions& options) {
  ParsedResponse parsed = parse_response(sample.response, options.parse);
  Verdict acc = route_accuracy(sample, parsed, judge, options);
  double fmt_score = format_reward(parsed, answer_kind(sample.ground_truth.route));
  RewardConfig cfg = options.reward;
  if (sample.max_tokens) {
    cfg.max_tokens = *sample.max_tokens;
    cfg.validate();
  }
  RewardBreakdown out = total_reward(acc.score, fmt_score, sample.token_count, cfg);
  out.detail = std::string(to_string(sample.ground_truth.route)) + ": " + acc.detail;
  return out;
}

}  // namespace rewardroute
