#include "rewardroute/records.hpp"

#include <cmath>

#include "rewardroute/errors.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { throw InvalidPayload(message); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j[key];
}

std::string string_field(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

int coordinate(const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == std::floor(d) && std::fabs(d) < 1e9) return static_cast<int>(d);
  }
  bad("box coordinates must be integers");
}

BBox box_from_json(const json& v, CoordinateSpace space) {
  if (!v.is_array() || v.size() != 4) bad("a box is [x1, y1, x2, y2]");
  try {
    return make_box(coordinate(v[0]), coordinate(v[1]), coordinate(v[2]), coordinate(v[3]), space);
  } catch (const InvalidArgument& e) {
    bad(e.what());
  }
}

std::optional<std::string> action_field(const json& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  bad("web action fields must be strings, integers or null");
}

std::string number_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  bad("numeric ground truth must be a number or a decimal string");
}

template <typename T>
T number_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  if (!j[key].is_number()) bad(std::string("field '") + key + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!j[key].is_number_integer() || j[key].get<long long>() < 0) {
      bad(std::string("field '") + key + "' must be a non-negative integer");
    }
  }
  return j[key].get<T>();
}

}  // namespace

GroundTruthPayload payload_from_json(TaskRoute route, const json& gt, CoordinateSpace space) {
  switch (route) {
    case TaskRoute::kStringMatch:
      if (!gt.is_string()) bad("string_match ground truth must be a string");
      return TextGold{gt.get<std::string>()};
    case TaskRoute::kMultipleChoice: {
      if (!gt.is_string()) bad("multiple_choice ground truth must be a string");
      try {
        return ChoiceGold{normalize_choice(gt.get<std::string>())};
      } catch (const Error& e) {
        bad(e.what());
      }
    }
    case TaskRoute::kNumeric: {
      try {
        return NumericGold{normalize_numeric(number_text(gt)), std::nullopt};
      } catch (const InvalidPayload&) {
        throw;
      } catch (const Error& e) {
        bad(std::string("numeric ground truth: ") + e.what());
      }
    }
    case TaskRoute::kListStringMatch: {
      if (!gt.is_array() || gt.empty()) bad("list_string_match ground truth must be a non-empty array");
      StringSetGold out;
      for (const auto& s : gt) {
        if (!s.is_string()) bad("list_string_match entries must be strings");
        out.accepted.push_back(s.get<std::string>());
      }
      return out;
    }
    case TaskRoute::kOrdering: {
      if (!gt.is_array()) bad("ordering ground truth must be an array of integers");
      OrderingGold out;
      for (const auto& v : gt) {
        if (!v.is_number_integer()) bad("ordering entries must be integers");
        out.sequence.push_back(v.get<long long>());
      }
      return out;
    }
    case TaskRoute::kWebAction: {
      if (!gt.is_object()) bad("web_action ground truth must be an object");
      WebAction out;
      for (const auto& [key, value] : gt.items()) {
        std::string k = detail::lower(key);
        if (k == "action") out.action = action_field(value);
        else if (k == "mark") out.mark = action_field(value);
        else if (k == "value") out.value = action_field(value);
        else bad("unknown web_action field '" + key + "'");
      }
      return out;
    }
    case TaskRoute::kGrounding: {
      if (!gt.is_array()) bad("grounding ground truth must be a list of boxes");
      BoxListGold out;
      // A bare [x1, y1, x2, y2] is one box.
      if (gt.size() == 4 && gt[0].is_number()) {
        out.boxes.push_back(box_from_json(gt, space));
        return out;
      }
      for (const auto& b : gt) out.boxes.push_back(box_from_json(b, space));
      return out;
    }
    case TaskRoute::kClicking:
      return RegionGold{box_from_json(gt, space)};
    case TaskRoute::kInstructionFollowing: {
      InstructionGold out;
      const json& list = gt.is_array() ? gt : require(gt, "constraints");
      if (!list.is_array()) bad("constraints must be an array");
      for (const auto& c : list) out.constraints.push_back(constraint_from_json(c));
      if (gt.is_object() && gt.contains("reference") && !gt["reference"].is_null()) {
        if (!gt["reference"].is_string()) bad("reference must be a string");
        out.reference = gt["reference"].get<std::string>();
      }
      return out;
    }
    case TaskRoute::kLlmJudge:
      if (gt.is_string()) return JudgeReference{gt.get<std::string>()};
      return JudgeReference{string_field(gt, "reference")};
  }
  bad("unhandled route");
}

ScoredSample sample_from_json(const json& j, CoordinateSpace default_space) {
  if (!j.is_object()) bad("sample must be a JSON object");
  ScoredSample s;
  s.id = string_field(j, "id");
  std::string route_name = string_field(j, "route");
  std::optional<TaskRoute> route = parse_route(route_name);
  if (!route) throw UnknownRoute("unknown route '" + route_name + "'");

  if (j.contains("coordinate_space") && !j["coordinate_space"].is_null()) {
    std::string name = string_field(j, "coordinate_space");
    s.coordinate_space = parse_coordinate_space(name);
    if (!s.coordinate_space) bad("unknown coordinate_space '" + name + "'");
  }
  CoordinateSpace space = s.coordinate_space.value_or(default_space);

  s.ground_truth.route = *route;
  s.ground_truth.payload = payload_from_json(*route, require(j, "ground_truth"), space);
  if (j.contains("tolerance") && !j["tolerance"].is_null()) {
    auto* numeric = std::get_if<NumericGold>(&s.ground_truth.payload);
    if (!numeric) bad("tolerance only applies to numeric routes");
    double tol = number_or<double>(j, "tolerance", 0.0);
    if (!(tol >= 0.0)) bad("tolerance must be non-negative");
    numeric->tolerance = tol;
  }
  check_payload(s.ground_truth);

  if (j.contains("response_text")) s.response = string_field(j, "response_text");
  else s.response = string_field(j, "response");
  s.token_count = number_or<std::uint64_t>(j, "token_count", 0);
  if (j.contains("prompt") && !j["prompt"].is_null()) s.prompt = string_field(j, "prompt");
  if (j.contains("max_tokens") && !j["max_tokens"].is_null()) {
    s.max_tokens = number_or<std::uint64_t>(j, "max_tokens", 0);
  }
  return s;
}

json to_json(const RewardBreakdown& b) {
  return {{"r_acc", b.r_acc}, {"r_fmt", b.r_fmt}, {"r_overlong", b.r_overlong},
          {"total", b.total}, {"detail", b.detail}};
}

json to_json(const ErrorInfo& e) {
  json out = {{"code", e.code}, {"message", e.message}};
  if (e.sample_id) out["sample_id"] = *e.sample_id;
  return out;
}

json to_json(const ScoreResult& r) {
  return {{"id", r.id},
          {"breakdown", r.breakdown ? to_json(*r.breakdown) : json(nullptr)},
          {"error", r.error ? to_json(*r.error) : json(nullptr)}};
}

ScoreResult score_result_from_json(const json& j) {
  ScoreResult r;
  r.id = string_field(j, "id");
  if (j.contains("breakdown") && !j["breakdown"].is_null()) {
    const json& b = j["breakdown"];
    RewardBreakdown out;
    out.r_acc = require(b, "r_acc").get<double>();
    out.r_fmt = require(b, "r_fmt").get<double>();
    out.r_overlong = require(b, "r_overlong").get<double>();
    out.total = require(b, "total").get<double>();
    out.detail = b.value("detail", std::string());
    r.breakdown = out;
  }
  if (j.contains("error") && !j["error"].is_null()) {
    const json& e = j["error"];
    ErrorInfo info{string_field(e, "code"), string_field(e, "message"), std::nullopt};
    if (e.contains("sample_id")) info.sample_id = string_field(e, "sample_id");
    r.error = info;
  }
  return r;
}

RewardConfig reward_config_from_json(const json& j, RewardConfig base) {
  if (j.is_null()) return base;
  if (!j.is_object()) bad("reward config must be an object");
  base.alpha = number_or(j, "alpha", base.alpha);
  base.buffer = number_or(j, "buffer", base.buffer);
  base.lambda = number_or(j, "lambda", base.lambda);
  base.max_tokens = number_or(j, "max_tokens", base.max_tokens);
  base.blend_w = number_or(j, "blend_w", base.blend_w);
  try {
    base.validate();
  } catch (const InvalidArgument& e) {
    bad(e.what());
  }
  return base;
}

json to_json(const RewardConfig& cfg) {
  return {{"alpha", cfg.alpha}, {"buffer", cfg.buffer}, {"lambda", cfg.lambda},
          {"max_tokens", cfg.max_tokens}, {"blend_w", cfg.blend_w}};
}

ClientConfig client_config_from_json(const json& j, ClientConfig base) {
  if (j.is_null()) return base;
  if (!j.is_object()) bad("judge config must be an object");
  if (j.contains("endpoint")) base.endpoint = string_field(j, "endpoint");
  if (j.contains("model")) base.model = string_field(j, "model");
  base.temperature = number_or(j, "temperature", base.temperature);
  base.max_tokens = number_or(j, "max_tokens", base.max_tokens);
  base.retries = number_or(j, "retries", base.retries);
  base.max_concurrency = number_or(j, "max_concurrency", base.max_concurrency);
  base.timeout = std::chrono::milliseconds(number_or<long long>(j, "timeout_ms", base.timeout.count()));
  base.backoff = std::chrono::milliseconds(number_or<long long>(j, "backoff_ms", base.backoff.count()));
  if (j.contains("extra_body")) {
    if (!j["extra_body"].is_object()) bad("extra_body must be an object");
    base.extra_body = j["extra_body"];
  }
  return base;
}

GapPolicy parse_gap_policy(std::string_view name) {
  if (name == "whitespace") return GapPolicy::kWhitespaceOnly;
  if (name == "strict") return GapPolicy::kStrict;
  if (name == "any") return GapPolicy::kAnyText;
  bad("unknown gap policy '" + std::string(name) + "' (whitespace, strict, any)");
}

DatasetStats dataset_stats_from_json(const json& j) {
  DatasetStats s;
  s.name = string_field(j, "name");
  std::string category = string_field(j, "category");
  auto c = parse_category(category);
  if (!c) bad("unknown category '" + category + "'");
  s.category = *c;
  s.n_examples = number_or<std::uint64_t>(j, "n_examples", 0);
  s.avg_pixels = number_or(j, "avg_pixels", 0.0);
  if (j.contains("binary_only")) {
    if (!j["binary_only"].is_boolean()) bad("binary_only must be a boolean");
    s.binary_only = j["binary_only"].get<bool>();
  }
  s.acc = number_or(j, "acc", 0.0);
  s.mean_think_len = number_or(j, "mean_think_len", 0.0);
  s.mean_area = number_or(j, "mean_area", 0.0);
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    bad(e.what());
  }
  return s;
}

json to_json(const DatasetStats& s) {
  return {{"name", s.name},
          {"category", to_string(s.category)},
          {"n_examples", s.n_examples},
          {"avg_pixels", s.avg_pixels},
          {"binary_only", s.binary_only},
          {"acc", s.acc},
          {"mean_think_len", s.mean_think_len},
          {"mean_area", s.mean_area}};
}

json to_json(const MixtureSpec& spec) {
  json shares = json::object();
  for (const auto& [c, share] : spec.shares) shares[std::string(to_string(c))] = share;
  json out = {{"scheme", to_string(spec.scheme)}, {"alpha", spec.alpha}, {"shares", shares}};
  if (spec.dropped) out["dropped"] = to_string(*spec.dropped);
  return out;
}

json to_json(const ScreenResult& r) {
  json reasons = json::array();
  for (ScreenReason reason : r.reasons) reasons.push_back(to_string(reason));
  return {{"pass", r.passed()}, {"reasons", reasons}};
}

RolloutGroup rollout_group_from_json(const json& j) {
  RolloutGroup g;
  try {
    g.rewards = require(j, "rewards").get<std::vector<double>>();
    g.logp_new = require(j, "logp_new").get<std::vector<std::vector<double>>>();
    g.logp_old = require(j, "logp_old").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    bad(std::string("rollout group: ") + e.what());
  }
  return g;
}

json to_json(const CanonicalAnswer& a) {
  json out = {{"answer_type", to_string(a.answer_type)}};
  out["value"] = a.filtered() ? json(nullptr) : json(a.render());
  out["filter_reason"] = a.filter_reason ? json(to_string(*a.filter_reason)) : json(nullptr);
  return out;
}

json to_json(const FilterFlags& f) {
  json out = json::object();
  for (FilterFlag flag : kAllFilterFlags) out[std::string(to_string(flag)) + "_filter"] = f.get(flag);
  out["reason"] = f.reason;
  return out;
}

}  // namespace rewardroute
