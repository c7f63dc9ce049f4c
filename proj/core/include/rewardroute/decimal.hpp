#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rewardroute {

// Exact rational number with 128-bit numerator and denominator. Used for
// evaluating constant expressions without floating-point drift. Operations
// throw InvalidArgument on overflow or division by zero.
class Rational {
 public:
  __extension__ typedef __int128 Int;

  Rational() = default;
  Rational(Int numerator, Int denominator = 1);  // NOLINT: implicit from integers

  Int numerator() const { return num_; }
  Int denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

// Exact decimal value `units * 10^-scale`, kept normalized (no trailing
// fractional zeros, zero has scale 0), so equality is structural.
class Decimal {
 public:
  static constexpr int kMaxScale = 18;

  Decimal() = default;
  Decimal(std::int64_t units, int scale);

  // Parses `[-]digits[.digits]` (or `[-].digits`). No separators, no exponent.
  static std::optional<Decimal> parse(std::string_view text);

  // Exact conversion when the rational terminates within kMaxScale digits
  // and fits; nullopt otherwise.
  static std::optional<Decimal> exact(const Rational& value);

  // Rounds half away from zero to `digits` fractional digits.
  static Decimal round(const Rational& value, int digits);

  std::int64_t units() const { return units_; }
  int scale() const { return scale_; }
  bool is_negative() const { return units_ < 0; }

  Rational to_rational() const;
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const Decimal&, const Decimal&) = default;

 private:
  void normalize();

  std::int64_t units_ = 0;
  int scale_ = 0;
};

// Fraction results are rounded to this many digits.
inline constexpr int kFractionDigits = 4;

}  // namespace rewardroute
