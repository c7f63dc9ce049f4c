#include "rewardroute/expression.hpp"

#include <string>

#include "rewardroute/errors.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

// Recursive-descent evaluator:
//   expr    := term (('+' | '-') term)*
//   term    := unary (mulop unary)*
//   unary   := ('+' | '-') unary | primary
//   primary := number | '(' expr ')' | '{' expr '}' | '\frac' '{' expr '}' '{' expr '}'
class Evaluator {
 public:
  explicit Evaluator(std::string_view text) : text_(text) {}

  ExpressionValue run() {
    skip_ws();
    if (pos_ == text_.size()) throw InvalidArgument("empty expression");
    Rational v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail_at_current();
    return {v, used_division_};
  }

 private:
  Rational expr() {
    Rational v = term();
    for (;;) {
      skip_ws();
      if (consume("+")) {
        v = v + term();
      } else if (consume("-") || consume("\xE2\x88\x92")) {  // U+2212 minus
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Rational term() {
    Rational v = unary();
    for (;;) {
      skip_ws();
      if (consume("*") || consume("\xC3\x97") || consume("\xC2\xB7") || consume("\\times") ||
          consume("\\cdot")) {
        v = v * unary();
      } else if (consume("/") || consume("\xC3\xB7") || consume("\\div")) {
        used_division_ = true;
        v = v / unary();
      } else {
        return v;
      }
    }
  }

  Rational unary() {
    skip_ws();
    if (consume("-") || consume("\xE2\x88\x92")) return -unary();
    if (consume("+")) return unary();
    return primary();
  }

  Rational primary() {
    skip_ws();
    if (consume("(")) return closed_by(")");
    if (consume("{")) return closed_by("}");
    if (consume("\\frac") || consume("\\dfrac") || consume("\\tfrac")) {
      skip_ws();
      expect("{");
      Rational num = closed_by("}");
      skip_ws();
      expect("{");
      Rational den = closed_by("}");
      used_division_ = true;
      return num / den;
    }
    return number();
  }

  Rational closed_by(std::string_view close) {
    Rational v = expr();
    skip_ws();
    expect(close);
    return v;
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (detail::is_digit(text_[pos_]) || text_[pos_] == '.')) ++pos_;
    if (pos_ == start) fail_at_current();
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      throw UnsupportedNotation("scientific notation is not supported");
    }
    auto d = Decimal::parse(text_.substr(start, pos_ - start));
    if (!d) throw InvalidArgument("malformed number '" + std::string(text_.substr(start, pos_ - start)) + "'");
    return d->to_rational();
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail_at_current();
  }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && detail::is_space(text_[pos_])) ++pos_;
  }

  [[noreturn]] void fail_at_current() {
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      if (detail::is_alpha(c) || c == '^' || c == '=' || c == '\\' || c == '_') {
        throw UnsupportedNotation("symbolic expression: '" + std::string(text_) + "'");
      }
    }
    throw InvalidArgument("malformed expression: '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  bool used_division_ = false;
};

}  // namespace

ExpressionValue evaluate_expression(std::string_view text) { return Evaluator(text).run(); }

Decimal to_canonical_decimal(const ExpressionValue& value) {
  if (value.used_division) return Decimal::round(value.value, kFractionDigits);
  auto exact = Decimal::exact(value.value);
  if (!exact) throw InvalidArgument("value not representable as a decimal");
  return *exact;
}

}  // namespace rewardroute
