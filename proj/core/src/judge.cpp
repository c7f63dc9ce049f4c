#include "rewardroute/judge.hpp"

#include <array>
#include <cmath>
#include <utility>

#include <nlohmann/json.hpp>

#include "rewardroute/errors.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

using nlohmann::json;

std::string substitute(std::string_view tmpl,
                       std::initializer_list<std::pair<std::string_view, std::string_view>> fields) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    bool replaced = false;
    if (tmpl[i] == '{') {
      for (const auto& [key, value] : fields) {
        if (tmpl.compare(i, key.size(), key) == 0) {
          out += value;
          i += key.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(tmpl[i++]);
  }
  return out;
}

const json* find_key(const json& obj, std::string_view key) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (detail::lower(it.key()) == detail::lower(key)) return &it.value();
  }
  return nullptr;
}

std::optional<int> score_value(const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  double d = 0;
  if (v.is_number_float()) {
    d = v.get<double>();
  } else if (v.is_string()) {
    std::string s(detail::trim(v.get<std::string>()));
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    d = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (!std::isfinite(d) || d != std::floor(d) || std::fabs(d) > 1e6) return std::nullopt;
  return static_cast<int>(d);
}

std::optional<bool> flag_value(const json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    std::string s = detail::lower(detail::trim(v.get<std::string>()));
    if (s == "true") return true;
    if (s == "false") return false;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<FilterFlag, std::string_view>, 5> kFlagNames = {{
    {FilterFlag::kRelevance, "relevance"},
    {FilterFlag::kAmbiguous, "ambiguous"},
    {FilterFlag::kLanguage, "language"},
    {FilterFlag::kVerifiable, "verifiable"},
    {FilterFlag::kNumberPrecision, "number_precision"},
}};

}  // namespace

std::string render_judge_prompt(const JudgeRequest& req, std::string_view tmpl) {
  return substitute(tmpl, {{"{input}", req.conversation_history},
                           {"{output}", req.ai_answer},
                           {"{label}", req.reference_answer}});
}

JudgeVerdict parse_judge_response(std::string_view text) {
  for (std::string_view span : detail::json_object_spans(text)) {
    json j = json::parse(span, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    const json* reasoning = find_key(j, "REASONING");
    const json* score = find_key(j, "SCORE");
    if (!reasoning || !score) continue;
    std::optional<int> s = score_value(*score);
    if (!s) throw MalformedVerdict("SCORE is not an integer: " + score->dump());
    if (*s < 1 || *s > 10) throw MalformedVerdict("SCORE out of range 1-10: " + std::to_string(*s));
    JudgeVerdict v;
    v.reasoning = reasoning->is_string() ? reasoning->get<std::string>() : reasoning->dump();
    v.score = *s;
    return v;
  }
  throw MalformedVerdict("no JSON object with REASONING and SCORE");
}

double judge_score(int score) { return static_cast<double>(score - 1) / 9.0; }

std::string_view to_string(FilterFlag flag) {
  for (const auto& [f, name] : kFlagNames) {
    if (f == flag) return name;
  }
  return "";
}

std::optional<FilterFlag> parse_filter_flag(std::string_view name) {
  std::string n = detail::lower(detail::trim(name));
  if (detail::ends_with(n, "_filter")) n.resize(n.size() - 7);
  for (const auto& [f, fname] : kFlagNames) {
    if (fname == n) return f;
  }
  return std::nullopt;
}

bool FilterFlags::get(FilterFlag flag) const {
  switch (flag) {
    case FilterFlag::kRelevance: return relevance;
    case FilterFlag::kAmbiguous: return ambiguous;
    case FilterFlag::kLanguage: return language;
    case FilterFlag::kVerifiable: return verifiable;
    case FilterFlag::kNumberPrecision: return number_precision;
  }
  return false;
}

void FilterFlags::set(FilterFlag flag, bool value) {
  switch (flag) {
    case FilterFlag::kRelevance: relevance = value; break;
    case FilterFlag::kAmbiguous: ambiguous = value; break;
    case FilterFlag::kLanguage: language = value; break;
    case FilterFlag::kVerifiable: verifiable = value; break;
    case FilterFlag::kNumberPrecision: number_precision = value; break;
  }
}

std::string render_filter_prompt(std::string_view question, std::string_view tmpl) {
  return substitute(tmpl, {{"{question}", question}});
}

FilterFlags parse_filter_response(std::string_view text) {
  std::string last_problem = "no JSON object in response";
  for (std::string_view span : detail::json_object_spans(text)) {
    json j = json::parse(span, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    FilterFlags flags;
    bool complete = true;
    for (FilterFlag f : kAllFilterFlags) {
      std::string key = std::string(to_string(f)) + "_filter";
      const json* v = find_key(j, key);
      if (!v) {
        last_problem = "missing key " + key;
        complete = false;
        break;
      }
      std::optional<bool> b = flag_value(*v);
      if (!b) {
        last_problem = "non-boolean value for " + key;
        complete = false;
        break;
      }
      flags.set(f, *b);
    }
    if (!complete) continue;
    const json* reason = find_key(j, "reason");
    if (!reason || !reason->is_string()) {
      last_problem = "missing string key reason";
      continue;
    }
    flags.reason = reason->get<std::string>();
    return flags;
  }
  throw MalformedFilterResponse(last_problem);
}

std::string_view to_string(FilterDecision decision) {
  return decision == FilterDecision::kKeep ? "keep" : "remove";
}

FilterDecision filter_decision(const FilterFlags& flags, const std::set<FilterFlag>& ignore) {
  for (FilterFlag f : kAllFilterFlags) {
    if (flags.get(f) && !ignore.contains(f)) return FilterDecision::kRemove;
  }
  return FilterDecision::kKeep;
}

LlmJudge::LlmJudge(ClientConfig cfg) : client_(std::move(cfg)) {}

JudgeOutcome LlmJudge::evaluate(const JudgeRequest& req, std::string_view sample_id) {
  const std::string prompt = render_judge_prompt(req);
  std::string problem;
  const int attempts = client_.config().retries + 1;
  for (int i = 0; i < attempts; ++i) {
    std::string reply = client_.complete(prompt, sample_id);
    try {
      JudgeVerdict v = parse_judge_response(reply);
      return {judge_score(v), "judge score " + std::to_string(v.score) + "/10"};
    } catch (const MalformedVerdict& e) {
      problem = e.what();
    }
  }
  return {0.0, "MalformedVerdict after " + std::to_string(attempts) + " attempts: " + problem};
}

}  // namespace rewardroute
