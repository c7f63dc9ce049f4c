#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rewardroute {

// Programmatic instruction-following checks. Each family has a total,
// deterministic checker over UTF-8 text; unknown families and malformed
// parameters are rejected when the constraint is built, never at scoring.
enum class ConstraintKind {
  kLengthLimit,        // min/max characters, sentences or paragraphs
  kWordCount,          // min/max words
  kKeywordInclusion,   // every keyword at least min_frequency times
  kKeywordExclusion,   // no keyword appears
  kFormatRequirement,  // json, bullet/numbered list, title, highlights, ...
  kSectionCount,       // marker-delimited sections
  kCaseRequirement,    // all lowercase / uppercase / capitalized word bound
};

std::string_view to_string(ConstraintKind kind);
std::optional<ConstraintKind> parse_constraint_kind(std::string_view name);

enum class LengthUnit { kCharacters, kSentences, kParagraphs };

enum class TextFormat {
  kJson,           // whole text parses as JSON (code fences allowed)
  kBulletList,     // exactly `count` markdown bullets ("* " or "- ")
  kNumberedList,   // exactly `count` "1." style items
  kTitle,          // a <<title>> is present
  kHighlights,     // at least `count` *highlighted* spans
  kNoCommas,
  kStartWith,      // starts with `phrase` (case-insensitive, after trim)
  kEndWith,        // ends with `phrase` (case-insensitive, after trim)
  kQuotation,      // wrapped in double quotes
  kPlaceholders,   // at least `count` [placeholder] spans
};

enum class LetterCase { kLowercase, kUppercase, kCapitalWords };

struct ConstraintParams {
  std::optional<std::size_t> min;
  std::optional<std::size_t> max;
  LengthUnit unit = LengthUnit::kCharacters;
  std::vector<std::string> keywords;
  std::size_t min_frequency = 1;
  TextFormat format = TextFormat::kJson;
  std::size_t count = 0;
  std::string phrase;
  std::string splitter;
  LetterCase letter_case = LetterCase::kLowercase;
};

struct ConstraintSpec {
  std::string id;
  ConstraintKind kind = ConstraintKind::kLengthLimit;
  ConstraintParams params;
};

// Builds a constraint from `{"id", "kind", "params"}`. Throws InvalidConstraint.
ConstraintSpec constraint_from_json(const nlohmann::json& j);
nlohmann::json constraint_to_json(const ConstraintSpec& spec);

bool check_constraint(std::string_view text, const ConstraintSpec& spec);

}  // namespace rewardroute
