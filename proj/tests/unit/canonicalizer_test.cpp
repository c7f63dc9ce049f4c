#include <gtest/gtest.h>

#include "rewardroute/canonicalizer.hpp"
#include "rewardroute/errors.hpp"

using namespace rewardroute;

namespace {

std::optional<FilterReason> reason_of(std::string_view raw, const AnswerContext& ctx = {}) {
  return canonicalize(raw, ctx).filter_reason;
}

}  // namespace

TEST(Classify, AnswerTypes) {
  EXPECT_EQ(classify_answer("Option (C)"), AnswerType::kMultipleChoice);
  EXPECT_EQ(classify_answer("$327,000"), AnswerType::kNumeric);
  EXPECT_EQ(classify_answer("(5.2, 0)"), AnswerType::kNone);
  EXPECT_EQ(classify_answer("Coronal"), AnswerType::kString);
  EXPECT_EQ(classify_answer(""), AnswerType::kNone);
}

TEST(NormalizeChoice, Patterns) {
  EXPECT_EQ(normalize_choice("a) 67.37"), 'A');
  EXPECT_EQ(normalize_choice("3."), 'C');
  EXPECT_EQ(normalize_choice("C"), 'C');
  EXPECT_EQ(normalize_choice("Option (C)"), 'C');
  EXPECT_EQ(normalize_choice("(b)"), 'B');
  EXPECT_THROW(normalize_choice("???"), UnrecognizedPattern);
  for (char c = 'A'; c <= 'Z'; ++c) EXPECT_EQ(normalize_choice(std::string(1, c)), c);
}

TEST(NormalizeNumeric, Decorations) {
  EXPECT_EQ(normalize_numeric("$327,000").to_string(), "327000");
  EXPECT_EQ(normalize_numeric("8/3").to_string(), "2.6667");
  EXPECT_EQ(normalize_numeric("60°").to_string(), "60");
  EXPECT_EQ(normalize_numeric("8 V").to_string(), "8");
  EXPECT_EQ(normalize_numeric("45%").to_string(), "45");
  EXPECT_EQ(normalize_numeric("-12.50").to_string(), "-12.5");
  EXPECT_THROW(normalize_numeric("1.2e5"), UnsupportedNotation);
}

TEST(NormalizeNumeric, SeparatorAndCurrencyInvariance) {
  for (const char* raw : {"1234567", "1,234,567", "$1,234,567", "$1234567"}) {
    EXPECT_EQ(normalize_numeric(raw).to_string(), "1234567") << raw;
  }
}

TEST(NormalizeString, Whitespace) {
  EXPECT_EQ(normalize_string("Coronal"), "coronal");
  EXPECT_EQ(normalize_string("  Red   Car "), "red car");
}

TEST(Canonicalize, ReferenceExamples) {
  EXPECT_EQ(canonicalize("$327,000").render(), "327000");
  EXPECT_EQ(canonicalize("60°").render(), "60");
  EXPECT_EQ(canonicalize("8 V").render(), "8");
  EXPECT_EQ(canonicalize("8/3").render(), "2.6667");
  EXPECT_EQ(canonicalize("Option (C)").render(), "C");
  EXPECT_EQ(canonicalize("a) 67.37").render(), "A");
  EXPECT_EQ(canonicalize("3.").render(), "C");
  EXPECT_EQ(canonicalize("Coronal").render(), "coronal");
}

TEST(Canonicalize, FilterReasons) {
  EXPECT_EQ(reason_of("AC = 4, BD = 4"), FilterReason::kMultiValue);
  EXPECT_EQ(reason_of("Isosceles triangle"), FilterReason::kAmbiguousTextLabel);
  EXPECT_EQ(reason_of(R"(b = a\cos C)"), FilterReason::kUnsupportedNotation);
  EXPECT_EQ(reason_of("b = a cos C"), FilterReason::kUnsupportedNotation);
  EXPECT_EQ(reason_of(""), FilterReason::kEmptyInvalid);
  EXPECT_EQ(reason_of("5 cm", {.expected_dimension = "mass"}), FilterReason::kUnitMismatch);
  EXPECT_EQ(reason_of("r = 1.215", {.valid_range = std::pair{-1.0, 1.0}}), FilterReason::kOutOfRange);
  EXPECT_EQ(reason_of("(3, -2, 5)"), FilterReason::kVectorComplex);
  EXPECT_EQ(reason_of("$2{+}3i$"), FilterReason::kVectorComplex);
  EXPECT_EQ(reason_of("1.70 million"), FilterReason::kNonStandardUnit);
  EXPECT_EQ(reason_of("Explain how to solve the equation"), FilterReason::kNonTaskQuestion);
  EXPECT_EQ(reason_of("(5.2, 0)"), FilterReason::kCoordinateTuple);
}

TEST(Canonicalize, ContextOnlyMattersWhenGiven) {
  EXPECT_FALSE(reason_of("5 cm").has_value());
  EXPECT_FALSE(reason_of("5 kg", {.expected_dimension = "mass"}).has_value());
  EXPECT_FALSE(reason_of("0.5", {.valid_range = std::pair{-1.0, 1.0}}).has_value());
}

TEST(Canonicalize, ExactlyOneFieldSet) {
  for (const char* raw : {"Option (C)", "$327,000", "Coronal", "AC = 4, BD = 4", ""}) {
    CanonicalAnswer a = canonicalize(raw);
    int set = a.choice.has_value() + a.number.has_value() + a.text.has_value() + a.filter_reason.has_value();
    EXPECT_EQ(set, 1) << raw;
    EXPECT_EQ(a.answer_type == AnswerType::kNone, a.filtered()) << raw;
  }
}

TEST(Canonicalize, Idempotent) {
  for (const char* raw : {"$327,000", "60°", "8 V", "8/3", "Option (C)", "a) 67.37", "3.", "Coronal",
                          "  Red   Car ", "-0.75"}) {
    CanonicalAnswer first = canonicalize(raw);
    ASSERT_FALSE(first.filtered()) << raw;
    EXPECT_EQ(canonicalize(first.render()), first) << raw;
  }
}

TEST(Canonicalize, ReasonNamesRoundTrip) {
  for (FilterReason r : {FilterReason::kMultiValue, FilterReason::kAmbiguousTextLabel,
                         FilterReason::kUnsupportedNotation, FilterReason::kEmptyInvalid,
                         FilterReason::kUnitMismatch, FilterReason::kOutOfRange, FilterReason::kVectorComplex,
                         FilterReason::kNonStandardUnit, FilterReason::kNonTaskQuestion,
                         FilterReason::kCoordinateTuple}) {
    EXPECT_EQ(parse_filter_reason(to_string(r)), r);
  }
}

TEST(Prediction, ChoiceLetter) {
  EXPECT_EQ(extract_choice_letter("(c)"), 'C');
  EXPECT_EQ(extract_choice_letter("C."), 'C');
  EXPECT_EQ(extract_choice_letter("Option C"), 'C');
  EXPECT_EQ(extract_choice_letter(R"(\text{C})"), 'C');
  EXPECT_FALSE(extract_choice_letter("CD").has_value());
  EXPECT_FALSE(extract_choice_letter("3").has_value());
}

TEST(Prediction, NumericValue) {
  EXPECT_EQ(parse_numeric_prediction("327,000 dollars").value, Rational(327000));
  EXPECT_EQ(parse_numeric_prediction("7 apples").value, Rational(7));
  EXPECT_EQ(parse_numeric_prediction("3 + 4").value, Rational(7));
  EXPECT_THROW(parse_numeric_prediction("seven"), Error);
}

TEST(Units, Dimension) {
  EXPECT_EQ(unit_dimension("cm"), "length");
  EXPECT_EQ(unit_dimension("kg"), "mass");
  EXPECT_FALSE(unit_dimension("flurbs").has_value());
}
