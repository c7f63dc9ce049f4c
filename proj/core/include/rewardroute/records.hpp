#pragma once

// JSON forms of the library's records. Parsers throw InvalidPayload (or
// UnknownRoute / InvalidConstraint) with a message naming the bad field.

#include <nlohmann/json.hpp>

#include "rewardroute/canonicalizer.hpp"
#include "rewardroute/judge.hpp"
#include "rewardroute/llm_client.hpp"
#include "rewardroute/mixture.hpp"
#include "rewardroute/policy.hpp"
#include "rewardroute/response_parser.hpp"
#include "rewardroute/routing.hpp"
#include "rewardroute/scoring.hpp"

namespace rewardroute {

// {"id", "route", "ground_truth", "response", "token_count",
//  "prompt"?, "tolerance"?, "coordinate_space"?, "max_tokens"?}
// `default_space` applies to gold boxes when the record names no space.
ScoredSample sample_from_json(const nlohmann::json& j,
                              CoordinateSpace default_space = CoordinateSpace::kNormalized1000);
GroundTruthPayload payload_from_json(TaskRoute route, const nlohmann::json& gt, CoordinateSpace space);

nlohmann::json to_json(const RewardBreakdown& b);
nlohmann::json to_json(const ErrorInfo& e);
nlohmann::json to_json(const ScoreResult& r);
ScoreResult score_result_from_json(const nlohmann::json& j);

// Missing keys keep their defaults.
RewardConfig reward_config_from_json(const nlohmann::json& j, RewardConfig base = {});
nlohmann::json to_json(const RewardConfig& cfg);

ClientConfig client_config_from_json(const nlohmann::json& j, ClientConfig base = {});
GapPolicy parse_gap_policy(std::string_view name);

DatasetStats dataset_stats_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DatasetStats& s);
nlohmann::json to_json(const MixtureSpec& spec);
nlohmann::json to_json(const ScreenResult& r);

RolloutGroup rollout_group_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CanonicalAnswer& a);
nlohmann::json to_json(const FilterFlags& f);

}  // namespace rewardroute
