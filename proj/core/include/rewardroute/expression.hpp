#pragma once

#include <string_view>

#include "rewardroute/decimal.hpp"

namespace rewardroute {

// Result of evaluating an arithmetic constant expression.
struct ExpressionValue {
  Rational value;
  bool used_division = false;  // true when any '/' or '\frac' participated
};

// Evaluates +, -, *, / over decimal literals with parentheses and braces.
// Accepts the operator spellings `x * × · \times \cdot / ÷ \div` and
// `\frac{a}{b}`. Throws UnsupportedNotation for variables, exponents or
// scientific notation and InvalidArgument for malformed input.
ExpressionValue evaluate_expression(std::string_view text);

// Canonical decimal for an evaluated expression: exact for pure literals and
// sums/products, rounded to kFractionDigits when division participated.
Decimal to_canonical_decimal(const ExpressionValue& value);

}  // namespace rewardroute
