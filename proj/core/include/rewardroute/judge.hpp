#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "rewardroute/llm_client.hpp"
#include "rewardroute/templates.hpp"

namespace rewardroute {

struct JudgeRequest {
  std::string conversation_history;
  std::string ai_answer;
  std::string reference_answer;
};

struct JudgeVerdict {
  std::string reasoning;
  int score = 1;  // 1..10
};

// Single-pass substitution of {input}, {output} and {label}; substituted text
// is never re-scanned, so braces in the fields survive verbatim.
std::string render_judge_prompt(const JudgeRequest& req,
                                std::string_view tmpl = templates::judge_prompt_v1());

// First JSON object in `text` carrying both REASONING and SCORE. SCORE may be
// an integer or a numeric string. Throws MalformedVerdict.
JudgeVerdict parse_judge_response(std::string_view text);

// (score - 1) / 9.
double judge_score(int score);
inline double judge_score(const JudgeVerdict& v) { return judge_score(v.score); }

// ---------------------------------------------------------------------------
// Question filter.

enum class FilterFlag { kRelevance, kAmbiguous, kLanguage, kVerifiable, kNumberPrecision };

inline constexpr FilterFlag kAllFilterFlags[] = {FilterFlag::kRelevance, FilterFlag::kAmbiguous,
                                                 FilterFlag::kLanguage, FilterFlag::kVerifiable,
                                                 FilterFlag::kNumberPrecision};

std::string_view to_string(FilterFlag flag);
// Accepts "relevance" and "relevance_filter" spellings.
std::optional<FilterFlag> parse_filter_flag(std::string_view name);

struct FilterFlags {
  bool relevance = false;
  bool ambiguous = false;
  bool language = false;
  bool verifiable = false;
  bool number_precision = false;
  std::string reason;

  bool get(FilterFlag flag) const;
  void set(FilterFlag flag, bool value);
  bool operator==(const FilterFlags&) const = default;
};

std::string render_filter_prompt(std::string_view question,
                                 std::string_view tmpl = templates::filter_prompt_v1());

// First JSON object carrying all five `<flag>_filter` keys and "reason".
// Values may be booleans or "true"/"false" in any case. Throws
// MalformedFilterResponse.
FilterFlags parse_filter_response(std::string_view text);

enum class FilterDecision { kKeep, kRemove };
std::string_view to_string(FilterDecision decision);

// Remove iff any flag outside `ignore` is set.
FilterDecision filter_decision(const FilterFlags& flags, const std::set<FilterFlag>& ignore = {});

// ---------------------------------------------------------------------------
// Judge handles.

struct JudgeOutcome {
  double score = 0.0;  // in [0, 1]
  std::string detail;
};

// Scores one open-ended answer. Implementations must be safe to call from
// several threads at once.
class Judge {
 public:
  virtual ~Judge() = default;
  // Transport problems are thrown (Timeout, TransportFailure, RateLimited).
  virtual JudgeOutcome evaluate(const JudgeRequest& req, std::string_view sample_id) = 0;
  // Upper bound on useful parallel evaluate() calls.
  virtual int max_concurrency() const { return 1; }
};

// Judge backed by a chat-completion endpoint. A verdict that does not parse
// is re-requested up to `retries` more times, then scored 0.
class LlmJudge : public Judge {
 public:
  explicit LlmJudge(ClientConfig cfg);

  JudgeOutcome evaluate(const JudgeRequest& req, std::string_view sample_id) override;
  int max_concurrency() const override { return client_.config().max_concurrency; }

 private:
  LlmClient client_;
};

}  // namespace rewardroute
