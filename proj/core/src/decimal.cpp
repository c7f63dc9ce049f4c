#include "rewardroute/decimal.hpp"

#include <limits>

#include "rewardroute/errors.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

using Int = Rational::Int;

Int abs128(Int v) { return v < 0 ? -v : v; }

Int gcd128(Int a, Int b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw InvalidArgument("rational overflow");
  return out;
}

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw InvalidArgument("rational overflow");
  return out;
}

Int pow10(int n) {
  Int p = 1;
  for (int i = 0; i < n; ++i) p *= 10;
  return p;
}

}  // namespace

Rational::Rational(Int numerator, Int denominator) {
  if (denominator == 0) throw InvalidArgument("division by zero");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  Int g = gcd128(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  num_ = numerator;
  den_ = denominator;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  Int g = gcd128(a.den_, b.den_);
  Int lhs = checked_mul(a.num_, b.den_ / g);
  Int rhs = checked_mul(b.num_, a.den_ / g);
  return Rational(checked_add(lhs, rhs), checked_mul(a.den_, b.den_ / g));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  Int g1 = gcd128(a.num_, b.den_);
  Int g2 = gcd128(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw InvalidArgument("division by zero");
  return a * Rational(b.den_, b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Decimal::Decimal(std::int64_t units, int scale) : units_(units), scale_(scale) {
  if (scale < 0 || scale > kMaxScale) throw InvalidArgument("decimal scale out of range");
  normalize();
}

void Decimal::normalize() {
  while (scale_ > 0 && units_ % 10 == 0) {
    units_ /= 10;
    --scale_;
  }
  if (units_ == 0) scale_ = 0;
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  Int units = 0;
  int scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (!detail::is_digit(c)) return std::nullopt;
    seen_digit = true;
    if (seen_point) {
      // Trailing zeros beyond the scale limit carry no value.
      if (scale == kMaxScale) {
        if (c != '0') return std::nullopt;
        continue;
      }
      ++scale;
    }
    units = units * 10 + (c - '0');
    if (units > std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  }
  if (!seen_digit) return std::nullopt;
  auto v = static_cast<std::int64_t>(negative ? -units : units);
  return Decimal(v, scale);
}

std::optional<Decimal> Decimal::exact(const Rational& value) {
  Int den = value.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  int scale = twos > fives ? twos : fives;
  if (scale > kMaxScale) return std::nullopt;
  Int units = value.numerator() * (pow10(scale) / value.denominator());
  if (units > std::numeric_limits<std::int64_t>::max() ||
      units < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return Decimal(static_cast<std::int64_t>(units), scale);
}

Decimal Decimal::round(const Rational& value, int digits) {
  if (digits < 0 || digits > kMaxScale) throw InvalidArgument("rounding digits out of range");
  Int scaled_num = checked_mul(abs128(value.numerator()), pow10(digits));
  Int den = value.denominator();
  Int q = scaled_num / den;
  Int r = scaled_num % den;
  if (2 * r >= den) ++q;  // half away from zero (sign applied below)
  if (q > std::numeric_limits<std::int64_t>::max()) throw InvalidArgument("decimal overflow");
  auto units = static_cast<std::int64_t>(value.numerator() < 0 ? -q : q);
  return Decimal(units, digits);
}

Rational Decimal::to_rational() const { return Rational(units_, pow10(scale_)); }

double Decimal::to_double() const { return to_rational().to_double(); }

std::string Decimal::to_string() const {
  auto magnitude = static_cast<std::uint64_t>(units_);
  if (units_ < 0) magnitude = ~magnitude + 1;
  std::string digits = std::to_string(magnitude);
  if (scale_ > 0) {
    if (static_cast<int>(digits.size()) <= scale_) {
      digits.insert(0, static_cast<std::size_t>(scale_) - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
  }
  return units_ < 0 ? "-" + digits : digits;
}

}  // namespace rewardroute
