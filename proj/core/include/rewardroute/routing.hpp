#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rewardroute/geometry.hpp"
#include "rewardroute/judge.hpp"
#include "rewardroute/response_parser.hpp"
#include "rewardroute/reward.hpp"
#include "rewardroute/verifiers.hpp"

namespace rewardroute {

// One prompt/response/ground-truth record, the unit of batch scoring.
struct ScoredSample {
  std::string id;
  GroundTruth ground_truth;
  std::string response;
  std::uint64_t token_count = 0;
  std::optional<std::string> prompt;  // conversation shown to the judge
  std::optional<CoordinateSpace> coordinate_space;
  std::optional<std::uint64_t> max_tokens;  // L_max override
};

struct ScoringOptions {
  RewardConfig reward;
  CoordinateSpace coordinate_space = CoordinateSpace::kNormalized1000;
  ParseOptions parse;
};

// Accuracy of a parsed response against the sample's ground truth.
// instruction_following samples that carry a judge reference are blended
// with the judge score. Throws MissingJudge when a judge is needed but
// `judge` is null; judge transport errors propagate.
Verdict route_accuracy(const ScoredSample& sample, const ParsedResponse& parsed, Judge* judge,
                       const ScoringOptions& options = {});
Verdict route_accuracy(const ScoredSample& sample, Judge* judge, const ScoringOptions& options = {});

// Parse, format reward, accuracy and overlong penalty for one sample.
RewardBreakdown score_sample(const ScoredSample& sample, Judge* judge,
                             const ScoringOptions& options = {});

// Whether scoring this sample calls the judge.
bool needs_judge(const ScoredSample& sample);

}  // namespace rewardroute
