#include "rewardroute/canonicalizer.hpp"

#include <algorithm>
#include <array>
#include <regex>
#include <string>
#include <vector>

#include "rewardroute/errors.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

using detail::is_alpha;
using detail::is_digit;
using detail::is_space;
using detail::lower;
using detail::trim;

struct UnitEntry {
  std::string_view unit;
  std::string_view dimension;
};

// Extensible; lookups try the exact spelling first, then lowercase.
constexpr std::array kUnits = {
    UnitEntry{"mm", "length"},       UnitEntry{"cm", "length"},        UnitEntry{"m", "length"},
    UnitEntry{"km", "length"},       UnitEntry{"in", "length"},        UnitEntry{"inch", "length"},
    UnitEntry{"inches", "length"},   UnitEntry{"ft", "length"},        UnitEntry{"feet", "length"},
    UnitEntry{"foot", "length"},     UnitEntry{"yd", "length"},        UnitEntry{"mi", "length"},
    UnitEntry{"miles", "length"},    UnitEntry{"meters", "length"},    UnitEntry{"metres", "length"},
    UnitEntry{"units", "length"},    UnitEntry{"unit", "length"},      UnitEntry{"px", "length"},
    UnitEntry{"pixels", "length"},   UnitEntry{"mg", "mass"},          UnitEntry{"g", "mass"},
    UnitEntry{"kg", "mass"},         UnitEntry{"t", "mass"},           UnitEntry{"lb", "mass"},
    UnitEntry{"lbs", "mass"},        UnitEntry{"oz", "mass"},          UnitEntry{"grams", "mass"},
    UnitEntry{"kilograms", "mass"},  UnitEntry{"ms", "time"},          UnitEntry{"s", "time"},
    UnitEntry{"sec", "time"},        UnitEntry{"seconds", "time"},     UnitEntry{"min", "time"},
    UnitEntry{"minutes", "time"},    UnitEntry{"h", "time"},           UnitEntry{"hr", "time"},
    UnitEntry{"hrs", "time"},        UnitEntry{"hours", "time"},       UnitEntry{"days", "time"},
    UnitEntry{"years", "time"},      UnitEntry{"V", "voltage"},        UnitEntry{"mV", "voltage"},
    UnitEntry{"kV", "voltage"},      UnitEntry{"volts", "voltage"},    UnitEntry{"A", "current"},
    UnitEntry{"mA", "current"},      UnitEntry{"amps", "current"},     UnitEntry{"W", "power"},
    UnitEntry{"kW", "power"},        UnitEntry{"MW", "power"},         UnitEntry{"watts", "power"},
    UnitEntry{"J", "energy"},        UnitEntry{"kJ", "energy"},        UnitEntry{"cal", "energy"},
    UnitEntry{"kcal", "energy"},     UnitEntry{"kWh", "energy"},       UnitEntry{"N", "force"},
    UnitEntry{"kN", "force"},        UnitEntry{"Pa", "pressure"},      UnitEntry{"kPa", "pressure"},
    UnitEntry{"atm", "pressure"},    UnitEntry{"Hz", "frequency"},     UnitEntry{"kHz", "frequency"},
    UnitEntry{"MHz", "frequency"},   UnitEntry{"ohm", "resistance"},   UnitEntry{"ohms", "resistance"},
    UnitEntry{"\xCE\xA9", "resistance"},
    UnitEntry{"K", "temperature"},   UnitEntry{"\xC2\xB0" "C", "temperature"},
    UnitEntry{"\xC2\xB0" "F", "temperature"},
    UnitEntry{"\xC2\xB0", "angle"},  UnitEntry{"degrees", "angle"},    UnitEntry{"degree", "angle"},
    UnitEntry{"deg", "angle"},       UnitEntry{"rad", "angle"},        UnitEntry{"radians", "angle"},
    UnitEntry{"L", "volume"},        UnitEntry{"l", "volume"},         UnitEntry{"mL", "volume"},
    UnitEntry{"ml", "volume"},       UnitEntry{"liters", "volume"},    UnitEntry{"litres", "volume"},
    UnitEntry{"cm^3", "volume"},     UnitEntry{"m^3", "volume"},       UnitEntry{"cm\xC2\xB3", "volume"},
    UnitEntry{"m\xC2\xB3", "volume"},
    UnitEntry{"cm^2", "area"},       UnitEntry{"m^2", "area"},         UnitEntry{"km^2", "area"},
    UnitEntry{"cm\xC2\xB2", "area"}, UnitEntry{"m\xC2\xB2", "area"},  UnitEntry{"km\xC2\xB2", "area"},
    UnitEntry{"sq ft", "area"},      UnitEntry{"m/s", "velocity"},     UnitEntry{"km/h", "velocity"},
    UnitEntry{"mph", "velocity"},    UnitEntry{"m/s^2", "acceleration"},
    UnitEntry{"%", "ratio"},         UnitEntry{"percent", "ratio"},    UnitEntry{"pct", "ratio"},
    UnitEntry{"dollars", "currency"}, UnitEntry{"dollar", "currency"}, UnitEntry{"usd", "currency"},
    UnitEntry{"USD", "currency"},    UnitEntry{"euros", "currency"},   UnitEntry{"eur", "currency"},
    UnitEntry{"yen", "currency"},    UnitEntry{"yuan", "currency"},    UnitEntry{"rmb", "currency"},
    UnitEntry{"pounds", "currency"}, UnitEntry{"cents", "currency"},   UnitEntry{"rupees", "currency"},
};

constexpr std::array<std::string_view, 12> kMultiplierWords = {
    "million", "millions", "billion", "billions", "trillion", "trillions",
    "thousand", "thousands", "bn", "mn", "lakh", "crore"};

constexpr std::array<std::string_view, 11> kCurrencyPrefixes = {
    "US$", "USD", "$", "\xE2\x82\xAC", "\xC2\xA3", "\xC2\xA5", "\xE2\x82\xB9", "Rs.", "Rs", "EUR", "GBP"};

constexpr std::array<std::string_view, 14> kNonTaskStarts = {
    "explain",     "describe",   "please describe", "please explain", "discuss",  "summarize",
    "summarise",   "elaborate",  "show how",        "how to",         "how do",   "how does",
    "write a",     "provide a"};

constexpr std::array<std::string_view, 8> kEmptyMarkers = {"", "null", "n/a", "nan", "[]", "{}", "\"\"", "''"};

// Qualifiers whose presence makes a multi-word label need fuzzy matching.
constexpr std::array<std::string_view, 32> kDescriptorWords = {
    "isosceles", "equilateral", "scalene",   "acute",     "obtuse",     "regular",
    "irregular", "symmetric",   "asymmetric", "symmetrical", "similar", "congruent",
    "approximately", "about",   "around",    "roughly",   "nearly",     "almost",
    "several",   "many",        "few",       "some",      "various",    "mostly",
    "slightly",  "somewhat",    "very",      "quite",     "fairly",     "generally",
    "likely",    "possibly"};

constexpr std::size_t kMaxLabelWords = 6;

const char* const kMinusSign = "\xE2\x88\x92";

// ---------------------------------------------------------------------------
// LaTeX and Unicode cleanup shared by classification and numeric parsing.

void unwrap_command(std::string& s, std::string_view command) {
  std::size_t pos = 0;
  while ((pos = s.find(command, pos)) != std::string::npos) {
    std::size_t open = pos + command.size();
    if (open >= s.size() || s[open] != '{') {
      pos = open;
      continue;
    }
    int depth = 1;
    std::size_t i = open + 1;
    for (; i < s.size() && depth > 0; ++i) {
      if (s[i] == '{') ++depth;
      if (s[i] == '}') --depth;
    }
    if (depth != 0) return;
    std::string inner = s.substr(open + 1, i - open - 2);
    s.replace(pos, i - pos, " " + inner + " ");
  }
}

std::string clean_text(std::string_view raw) {
  std::string s(trim(raw));
  if (s.size() >= 4 && s.starts_with("\\(") && s.ends_with("\\)")) s = s.substr(2, s.size() - 4);
  if (s.size() >= 4 && s.starts_with("\\[") && s.ends_with("\\]")) s = s.substr(2, s.size() - 4);
  if (s.size() >= 4 && s.starts_with("$$") && s.ends_with("$$")) s = s.substr(2, s.size() - 4);
  if (s.size() >= 2 && s.front() == '$' && s.back() == '$' &&
      std::count(s.begin(), s.end(), '$') == 2) {
    s = s.substr(1, s.size() - 2);
  }
  detail::replace_all(s, "\\$", "$");
  detail::replace_all(s, "\\%", "%");
  detail::replace_all(s, "{,}", ",");
  detail::replace_all(s, "{+}", "+");
  detail::replace_all(s, "{-}", "-");
  detail::replace_all(s, "\\,", "");
  detail::replace_all(s, "\\!", "");
  detail::replace_all(s, "\\;", " ");
  detail::replace_all(s, "\\ ", " ");
  detail::replace_all(s, "~", " ");
  detail::replace_all(s, "\xC2\xA0", " ");  // no-break space
  detail::replace_all(s, kMinusSign, "-");
  detail::replace_all(s, "\\left", "");
  detail::replace_all(s, "\\right", "");
  for (std::string_view deg : {"^{\\circ}", "^\\circ", "\\circ", "\\degree", "\xC2\xBA"}) {
    detail::replace_all(s, deg, "\xC2\xB0");
  }
  for (std::string_view cmd : {"\\text", "\\mathrm", "\\textrm", "\\mbox", "\\textbf", "\\mathbf"}) {
    unwrap_command(s, cmd);
  }
  return std::string(trim(s));
}

bool is_empty_marker(std::string_view s) {
  std::string l = lower(trim(s));
  return std::find(kEmptyMarkers.begin(), kEmptyMarkers.end(), l) != kEmptyMarkers.end();
}

std::optional<std::string_view> lookup_unit(std::string_view unit) {
  for (const auto& e : kUnits) {
    if (e.unit == unit) return e.dimension;
  }
  std::string l = lower(unit);
  for (const auto& e : kUnits) {
    if (lower(e.unit) == l) return e.dimension;
  }
  return std::nullopt;
}

bool is_multiplier_word(std::string_view word) {
  std::string l = lower(word);
  return std::find(kMultiplierWords.begin(), kMultiplierWords.end(), l) != kMultiplierWords.end();
}

// ---------------------------------------------------------------------------
// Numeric scanning.

enum class ScanStatus { kNotNumeric, kOk, kFiltered };

struct NumericScan {
  ScanStatus status = ScanStatus::kNotNumeric;
  FilterReason reason = FilterReason::kUnsupportedNotation;
  std::string core;  // sign + expression text, commas removed
  std::string unit;
  std::optional<std::string_view> dimension;
};

NumericScan filtered(FilterReason reason) {
  NumericScan scan;
  scan.status = ScanStatus::kFiltered;
  scan.reason = reason;
  return scan;
}

bool consume_currency(std::string_view& s) {
  for (std::string_view c : kCurrencyPrefixes) {
    if (detail::starts_with_ci(s, c)) {
      s.remove_prefix(c.size());
      s = trim(s);
      return true;
    }
  }
  return false;
}

bool starts_core_command(std::string_view s) {
  for (std::string_view cmd : {"\\frac", "\\dfrac", "\\tfrac", "\\times", "\\cdot", "\\div"}) {
    if (s.starts_with(cmd)) return true;
  }
  return false;
}

std::size_t core_prefix_length(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (is_digit(c) || c == '.' || c == ',' || c == '/' || c == '+' || c == '-' || c == '*' ||
        c == '(' || c == ')' || c == '{' || c == '}' || is_space(c)) {
      ++i;
      continue;
    }
    std::string_view rest = s.substr(i);
    if (c == '\\' && starts_core_command(rest)) {
      std::size_t j = i + 1;
      while (j < s.size() && is_alpha(s[j])) ++j;
      i = j;
      continue;
    }
    if (rest.starts_with("\xC3\x97") || rest.starts_with("\xC3\xB7")) {  // × ÷
      i += 2;
      continue;
    }
    if (rest.starts_with("\xC2\xB7")) {  // ·
      i += 2;
      continue;
    }
    break;
  }
  return i;
}

bool valid_thousands(std::string_view core) {
  static const std::regex pattern(R"(^[+-]?\d{1,3}(,\d{3})+(\.\d+)?$)");
  return std::regex_match(core.begin(), core.end(), pattern);
}

bool is_exponent_suffix(std::string_view suffix) {
  static const std::regex pattern(R"(^[eE][+-]?\d+.*$)");
  return std::regex_match(suffix.begin(), suffix.end(), pattern);
}

bool words_only(std::string_view s) {
  bool any = false;
  for (char c : s) {
    if (is_alpha(c)) {
      any = true;
    } else if (!is_space(c) && c != '.' && c != '\'' && c != '-') {
      return false;
    }
  }
  return any;
}

// Splits `text` into numeric core and unit suffix. `lenient` accepts unknown
// trailing words (prediction side).
NumericScan scan_numeric(std::string_view text, const AnswerContext& context, bool lenient) {
  std::string_view s = trim(text);
  std::string sign;
  bool progressed = true;
  while (progressed && !s.empty()) {
    progressed = false;
    if (s.front() == '-' || s.front() == '+') {
      if (s.front() == '-') sign = sign == "-" ? "" : "-";
      s.remove_prefix(1);
      s = trim(s);
      progressed = true;
    } else if (consume_currency(s)) {
      progressed = true;
    }
  }
  if (s.empty()) return {};
  if (!(is_digit(s.front()) || s.front() == '.' || s.front() == '(' || s.front() == '{' ||
        starts_core_command(s))) {
    return {};
  }

  std::size_t n = core_prefix_length(s);
  std::string_view core = trim(s.substr(0, n));
  std::string_view suffix = trim(s.substr(n));
  // A trailing operator belongs to a symbolic suffix ("2x+3"), not the core.
  if (!core.empty() && (core.back() == '+' || core.back() == '-' || core.back() == '*' ||
                        core.back() == '/' || core.back() == '(')) {
    return filtered(FilterReason::kUnsupportedNotation);
  }
  if (core.empty() || std::none_of(core.begin(), core.end(), is_digit)) return {};

  NumericScan scan;
  if (!suffix.empty()) {
    if (is_exponent_suffix(suffix) || suffix.starts_with("^")) {
      return filtered(FilterReason::kUnsupportedNotation);
    }
    if (auto dim = lookup_unit(suffix)) {
      scan.unit = std::string(suffix);
      scan.dimension = dim;
    } else {
      auto words = detail::split_ws(suffix);
      if (!words.empty() && is_multiplier_word(words.front())) {
        return filtered(FilterReason::kNonStandardUnit);
      }
      if (suffix.find('=') != std::string_view::npos ||
          suffix.find('\\') != std::string_view::npos) {
        return filtered(FilterReason::kUnsupportedNotation);
      }
      if (!lenient) {
        // A single letter glued to the number reads as a variable ("2x").
        if (suffix.size() == 1 && is_alpha(suffix.front()) && s[n - 1] != ' ') {
          return filtered(FilterReason::kUnsupportedNotation);
        }
        return {};
      }
      if (!words_only(suffix)) return {};
    }
  }

  std::string core_text(core);
  if (core_text.find(',') != std::string::npos) {
    if (!valid_thousands(core_text)) return filtered(FilterReason::kMultiValue);
    core_text.erase(std::remove(core_text.begin(), core_text.end(), ','), core_text.end());
  }
  // Whitespace between two digit runs means two numbers ("3 5").
  static const std::regex split_digits(R"(\d[.]?\s+[.]?\d)");
  if (std::regex_search(core_text, split_digits)) return filtered(FilterReason::kMultiValue);

  scan.status = ScanStatus::kOk;
  scan.core = sign + core_text;
  if (context.expected_dimension && scan.dimension && *scan.dimension != "ratio" &&
      *scan.dimension != "currency" && *scan.dimension != *context.expected_dimension) {
    return filtered(FilterReason::kUnitMismatch);
  }
  return scan;
}

// Ground-truth cores are a number, or a simple fraction of two numbers.
bool simple_numeric_core(std::string_view core) {
  static const std::regex number(R"(^[+-]?(\d+\.?\d*|\.\d+)$)");
  static const std::regex fraction(R"(^[+-]?(\d+\.?\d*|\.\d+)\s*/\s*(\d+\.?\d*|\.\d+)$)");
  static const std::regex frac_cmd(R"(^[+-]?\\[dt]?frac\s*\{\s*\d+\.?\d*\s*\}\s*\{\s*\d+\.?\d*\s*\}$)");
  return std::regex_match(core.begin(), core.end(), number) ||
         std::regex_match(core.begin(), core.end(), fraction) ||
         std::regex_match(core.begin(), core.end(), frac_cmd);
}

// ---------------------------------------------------------------------------
// Multiple choice.

struct ChoiceMatch {
  bool matched = false;
  char letter = 0;
};

constexpr std::array<std::string_view, 10> kChoicePrefixes = {
    "option", "choice", "answer", "figure", "fig.", "fig", "graph", "chart", "image", "picture"};

// `allow_numbers` enables positional mapping (1 -> A). `allow_bare_lower`
// accepts a single lowercase letter.
ChoiceMatch match_choice(std::string_view raw, bool allow_numbers) {
  std::string_view s = trim(raw);
  bool had_prefix = false;
  for (std::string_view p : kChoicePrefixes) {
    if (detail::starts_with_ci(s, p)) {
      std::string_view rest = s.substr(p.size());
      // Prefix must be a whole word.
      if (!rest.empty() && is_alpha(rest.front())) continue;
      rest = trim(rest);
      if (!rest.empty() && rest.front() == ':') rest = trim(rest.substr(1));
      s = rest;
      had_prefix = true;
      break;
    }
  }
  if (s.empty()) return {};

  std::string_view label;
  std::string_view after;
  bool delimited = false;
  char open = s.front();
  if (open == '(' || open == '[') {
    char close = open == '(' ? ')' : ']';
    std::size_t end = s.find(close);
    if (end == std::string_view::npos) return {};
    label = trim(s.substr(1, end - 1));
    after = s.substr(end + 1);
    delimited = true;
  } else {
    std::size_t i = 0;
    if (is_alpha(s[0])) {
      i = 1;
    } else {
      while (i < s.size() && is_digit(s[i])) ++i;
    }
    if (i == 0) return {};
    label = s.substr(0, i);
    after = s.substr(i);
    if (!after.empty() && (after.front() == ')' || after.front() == '.' || after.front() == ':')) {
      after.remove_prefix(1);
      delimited = true;
    }
  }
  // Whatever follows the label must be separated by whitespace.
  if (!after.empty() && !is_space(after.front())) return {};
  if (!trim(after).empty() && !delimited) return {};
  if (label.empty()) return {};

  ChoiceMatch m;
  if (label.size() == 1 && is_alpha(label[0])) {
    m.matched = true;
    m.letter = detail::to_upper(label[0]);
    return m;
  }
  if (allow_numbers && std::all_of(label.begin(), label.end(), is_digit)) {
    // Bare integers are numeric answers; positional options need a delimiter
    // or an option prefix.
    if (!delimited && !had_prefix) return {};
    if (label.size() > 2) return {};
    int index = std::stoi(std::string(label));
    if (index < 1 || index > 26) return {};
    m.matched = true;
    m.letter = static_cast<char>('A' + index - 1);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Structural filters.

bool is_non_task(std::string_view s) {
  std::string l = lower(s);
  for (std::string_view start : kNonTaskStarts) {
    if (l.starts_with(start) && (l.size() == start.size() || !is_alpha(l[start.size()]))) {
      return true;
    }
  }
  return false;
}

bool is_number_token(std::string_view s) {
  static const std::regex number(R"(^\s*[+-]?(\d+\.?\d*|\.\d+)\s*$)");
  return std::regex_match(s.begin(), s.end(), number);
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::optional<FilterReason> tuple_reason(std::string_view s) {
  if (s.size() < 2) return std::nullopt;
  bool bracketed = (s.front() == '(' && s.back() == ')') || (s.front() == '[' && s.back() == ']');
  bool angled = s.starts_with("\\langle") && s.ends_with("\\rangle");
  if (!bracketed && !angled) return std::nullopt;
  std::string_view inner =
      angled ? s.substr(7, s.size() - 14) : s.substr(1, s.size() - 2);
  auto parts = split_on(inner, ',');
  if (parts.size() < 2) return std::nullopt;
  if (!std::all_of(parts.begin(), parts.end(), is_number_token)) return std::nullopt;
  return parts.size() == 2 && !angled ? FilterReason::kCoordinateTuple : FilterReason::kVectorComplex;
}

bool is_complex_number(std::string_view s) {
  static const std::regex complex(R"(^[+-]?(\d+\.?\d*)?\s*([+-]\s*(\d+\.?\d*)?\s*)?[ij]$)");
  return std::regex_match(s.begin(), s.end(), complex) &&
         std::any_of(s.begin(), s.end(), is_digit);
}

bool is_multi_part(std::string_view s) {
  static const std::regex enumerated(R"((^|[\s,;])\(?\d+\)\s*\S)");
  auto begin = std::cregex_iterator(s.data(), s.data() + s.size(), enumerated);
  if (std::distance(begin, std::cregex_iterator()) >= 2) return true;
  return std::count(s.begin(), s.end(), '=') >= 2;
}

std::optional<std::pair<std::string_view, std::string_view>> split_assignment(std::string_view s) {
  static const std::regex assignment(R"(^\s*([A-Za-z][A-Za-z0-9_]*)\s*=\s*(.+?)\s*$)");
  std::cmatch m;
  if (!std::regex_match(s.data(), s.data() + s.size(), m, assignment)) return std::nullopt;
  return std::make_pair(std::string_view(m[1].first, m[1].length()),
                        std::string_view(m[2].first, m[2].length()));
}

bool looks_symbolic(std::string_view s) {
  if (s.find_first_of("=^_") != std::string_view::npos) return true;
  if (s.find('\\') != std::string_view::npos) return true;
  bool letters = std::any_of(s.begin(), s.end(), is_alpha);
  bool ops = s.find_first_of("+*/") != std::string_view::npos;
  return letters && ops;
}

bool is_ambiguous_label(std::string_view normalized) {
  auto words = detail::split_ws(normalized);
  if (words.size() > kMaxLabelWords) return true;
  if (words.size() < 2) return false;
  for (auto w : words) {
    if (std::find(kDescriptorWords.begin(), kDescriptorWords.end(), w) != kDescriptorWords.end()) {
      return true;
    }
  }
  return false;
}

// Comma/semicolon separated list whose items are each numeric or assignments.
bool is_value_list(std::string_view s, const AnswerContext& context) {
  for (char sep : {';', ','}) {
    auto parts = split_on(s, sep);
    if (parts.size() < 2) continue;
    bool all_values = std::all_of(parts.begin(), parts.end(), [&](std::string_view p) {
      p = trim(p);
      if (p.empty()) return false;
      if (split_assignment(p)) return true;
      return scan_numeric(p, context, false).status == ScanStatus::kOk;
    });
    if (all_values) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

struct Classification {
  AnswerType type = AnswerType::kNone;
  std::optional<FilterReason> reason;
  char choice = 0;
  std::optional<Decimal> number;
};

Classification reject(FilterReason reason) {
  Classification c;
  c.reason = reason;
  return c;
}

std::optional<Classification> classify_numeric(std::string_view s, const AnswerContext& context) {
  NumericScan scan = scan_numeric(s, context, false);
  if (scan.status == ScanStatus::kNotNumeric) return std::nullopt;
  if (scan.status == ScanStatus::kFiltered) return reject(scan.reason);
  if (!simple_numeric_core(scan.core)) return reject(FilterReason::kUnsupportedNotation);
  Decimal value;
  try {
    value = to_canonical_decimal(evaluate_expression(scan.core));
  } catch (const UnsupportedNotation&) {
    return reject(FilterReason::kUnsupportedNotation);
  } catch (const InvalidArgument&) {
    return reject(FilterReason::kOutOfRange);
  }
  if (context.valid_range) {
    double v = value.to_double();
    if (v < context.valid_range->first || v > context.valid_range->second) {
      return reject(FilterReason::kOutOfRange);
    }
  }
  Classification c;
  c.type = AnswerType::kNumeric;
  c.number = value;
  return c;
}

Classification classify_detail(std::string_view raw, const AnswerContext& context) {
  if (is_empty_marker(raw)) return reject(FilterReason::kEmptyInvalid);
  std::string cleaned = clean_text(raw);
  std::string_view s = cleaned;
  if (s.empty() || is_empty_marker(s)) return reject(FilterReason::kEmptyInvalid);
  if (is_non_task(s)) return reject(FilterReason::kNonTaskQuestion);
  if (is_multi_part(s)) return reject(FilterReason::kMultiValue);
  if (auto reason = tuple_reason(s)) return reject(*reason);
  if (is_complex_number(s)) return reject(FilterReason::kVectorComplex);

  if (auto m = match_choice(s, true); m.matched) {
    Classification c;
    c.type = AnswerType::kMultipleChoice;
    c.choice = m.letter;
    return c;
  }

  if (auto assignment = split_assignment(s)) {
    if (auto numeric = classify_numeric(assignment->second, context)) return *numeric;
    return reject(FilterReason::kUnsupportedNotation);
  }
  if (auto numeric = classify_numeric(s, context)) return *numeric;
  if (is_value_list(s, context)) return reject(FilterReason::kMultiValue);
  if (looks_symbolic(s)) return reject(FilterReason::kUnsupportedNotation);

  std::string text = normalize_string(s);
  if (is_ambiguous_label(text)) return reject(FilterReason::kAmbiguousTextLabel);
  Classification c;
  c.type = AnswerType::kString;
  return c;
}

}  // namespace

std::string_view to_string(AnswerType type) {
  switch (type) {
    case AnswerType::kMultipleChoice: return "multiple_choice";
    case AnswerType::kNumeric: return "numeric";
    case AnswerType::kString: return "string";
    case AnswerType::kNone: return "none";
  }
  return "none";
}

namespace {
constexpr std::array<std::pair<FilterReason, std::string_view>, 10> kReasonNames = {{
    {FilterReason::kMultiValue, "multi-value"},
    {FilterReason::kAmbiguousTextLabel, "ambiguous-text-label"},
    {FilterReason::kUnsupportedNotation, "unsupported-notation"},
    {FilterReason::kEmptyInvalid, "empty-invalid"},
    {FilterReason::kUnitMismatch, "unit-mismatch"},
    {FilterReason::kOutOfRange, "out-of-range"},
    {FilterReason::kVectorComplex, "vector-complex"},
    {FilterReason::kNonStandardUnit, "non-standard-unit"},
    {FilterReason::kNonTaskQuestion, "non-task-question"},
    {FilterReason::kCoordinateTuple, "coordinate-tuple"},
}};
}  // namespace

std::string_view to_string(FilterReason reason) {
  for (const auto& [r, name] : kReasonNames) {
    if (r == reason) return name;
  }
  return "unknown";
}

std::optional<FilterReason> parse_filter_reason(std::string_view name) {
  for (const auto& [r, n] : kReasonNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

std::string CanonicalAnswer::render() const {
  if (choice) return std::string(1, *choice);
  if (number) return number->to_string();
  if (text) return *text;
  return {};
}

AnswerType classify_answer(std::string_view raw) { return classify_detail(raw, {}).type; }

char normalize_choice(std::string_view raw) {
  std::string cleaned = clean_text(raw);
  ChoiceMatch m = match_choice(cleaned, true);
  if (!m.matched) throw UnrecognizedPattern("no option label in '" + std::string(raw) + "'");
  return m.letter;
}

Decimal normalize_numeric(std::string_view raw) {
  std::string cleaned = clean_text(raw);
  if (auto assignment = split_assignment(cleaned)) cleaned = std::string(assignment->second);
  NumericScan scan = scan_numeric(cleaned, {}, false);
  if (scan.status == ScanStatus::kFiltered) {
    if (scan.reason == FilterReason::kUnsupportedNotation) {
      throw UnsupportedNotation("unsupported notation in '" + std::string(raw) + "'");
    }
    throw InvalidArgument(std::string(to_string(scan.reason)) + ": '" + std::string(raw) + "'");
  }
  if (scan.status == ScanStatus::kNotNumeric) {
    if (looks_symbolic(cleaned)) throw UnsupportedNotation("symbolic expression '" + std::string(raw) + "'");
    throw InvalidArgument("not a number: '" + std::string(raw) + "'");
  }
  if (!simple_numeric_core(scan.core)) {
    throw UnsupportedNotation("expression is not a plain number or fraction: '" + std::string(raw) + "'");
  }
  return to_canonical_decimal(evaluate_expression(scan.core));
}

std::string normalize_string(std::string_view raw) {
  std::string s(raw);
  detail::replace_all(s, "\xC2\xA0", " ");
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(detail::to_lower(c));
  }
  return out;
}

CanonicalAnswer canonicalize(std::string_view raw, const AnswerContext& context) {
  Classification c = classify_detail(raw, context);
  CanonicalAnswer out;
  out.answer_type = c.type;
  switch (c.type) {
    case AnswerType::kMultipleChoice: out.choice = c.choice; break;
    case AnswerType::kNumeric: out.number = c.number; break;
    case AnswerType::kString: out.text = normalize_string(clean_text(raw)); break;
    case AnswerType::kNone: out.filter_reason = c.reason.value_or(FilterReason::kEmptyInvalid); break;
  }
  return out;
}

std::optional<char> extract_choice_letter(std::string_view pred) {
  std::string cleaned = clean_text(pred);
  detail::replace_all(cleaned, "*", "");
  ChoiceMatch m = match_choice(cleaned, false);
  if (!m.matched) return std::nullopt;
  return m.letter;
}

ExpressionValue parse_numeric_prediction(std::string_view pred) {
  std::string cleaned = clean_text(pred);
  if (auto assignment = split_assignment(cleaned)) cleaned = std::string(assignment->second);
  NumericScan scan = scan_numeric(cleaned, {}, true);
  if (scan.status != ScanStatus::kOk) {
    throw InvalidArgument("unparseable numeric prediction '" + std::string(pred) + "'");
  }
  return evaluate_expression(scan.core);
}

std::optional<std::string_view> unit_dimension(std::string_view unit) { return lookup_unit(unit); }

}  // namespace rewardroute
