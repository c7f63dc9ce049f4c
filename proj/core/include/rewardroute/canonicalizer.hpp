#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "rewardroute/decimal.hpp"
#include "rewardroute/expression.hpp"

namespace rewardroute {

enum class AnswerType { kMultipleChoice, kNumeric, kString, kNone };

// Why a ground truth was dropped. Mirrors the single-ground-truth part of the
// answer-filtering taxonomy, plus coordinate tuples.
enum class FilterReason {
  kMultiValue,
  kAmbiguousTextLabel,
  kUnsupportedNotation,
  kEmptyInvalid,
  kUnitMismatch,
  kOutOfRange,
  kVectorComplex,
  kNonStandardUnit,
  kNonTaskQuestion,
  kCoordinateTuple,
};

std::string_view to_string(AnswerType type);
std::string_view to_string(FilterReason reason);
std::optional<FilterReason> parse_filter_reason(std::string_view name);

// Optional question-level context. Without it, unit-mismatch and
// out-of-range can never fire because both depend on what was asked.
struct AnswerContext {
  std::optional<std::string> expected_dimension;  // e.g. "mass", "length"
  std::optional<std::pair<double, double>> valid_range;
};

// Verifier-ready form of a raw ground truth. Exactly one of choice, number,
// text, filter_reason is set; answer_type is kNone iff filter_reason is set.
struct CanonicalAnswer {
  AnswerType answer_type = AnswerType::kNone;
  std::optional<char> choice;
  std::optional<Decimal> number;
  std::optional<std::string> text;
  std::optional<FilterReason> filter_reason;

  bool filtered() const { return filter_reason.has_value(); }
  // Canonical textual form ("C", "2.6667", "red car"); empty when filtered.
  std::string render() const;

  bool operator==(const CanonicalAnswer&) const = default;
};

AnswerType classify_answer(std::string_view raw);

// Option label to uppercase letter. Handles "(C)", "Option (C)", "a) 67.37",
// and numbered options mapped positionally ("3." -> C, "Figure (2)" -> B).
// Throws UnrecognizedPattern.
char normalize_choice(std::string_view raw);

// Strips currency, units, degree and percent markers, LaTeX wrappers and
// thousand separators; a/b fractions are rounded to four digits. Throws
// UnsupportedNotation for scientific notation and symbolic expressions.
Decimal normalize_numeric(std::string_view raw);

// Lowercase, collapse whitespace runs, trim.
std::string normalize_string(std::string_view raw);

CanonicalAnswer canonicalize(std::string_view raw, const AnswerContext& context = {});

// Prediction-side helpers used by the verifiers.

// A single option letter from a model prediction ("C", "(c)", "C.",
// "Option C", "\text{C}"). Positional numbers are not accepted here.
std::optional<char> extract_choice_letter(std::string_view pred);

// Numeric value of a prediction: decorations are stripped as in
// normalize_numeric and +, -, *, / constant expressions are evaluated.
// Unknown trailing words ("7 apples") are ignored. Throws on anything
// unparseable.
ExpressionValue parse_numeric_prediction(std::string_view pred);

// Dimension of a unit token from the built-in lexicon ("cm" -> "length").
std::optional<std::string_view> unit_dimension(std::string_view unit);

}  // namespace rewardroute
