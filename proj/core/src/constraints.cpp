#include "rewardroute/constraints.hpp"

#include <algorithm>
#include <array>
#include <regex>
#include <utility>

#include <nlohmann/json.hpp>

#include "rewardroute/errors.hpp"
#include "text_util.hpp"

namespace rewardroute {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<ConstraintKind, std::string_view>, 7> kKindNames = {{
    {ConstraintKind::kLengthLimit, "length-limit"},
    {ConstraintKind::kWordCount, "word-count"},
    {ConstraintKind::kKeywordInclusion, "keyword-inclusion"},
    {ConstraintKind::kKeywordExclusion, "keyword-exclusion"},
    {ConstraintKind::kFormatRequirement, "format-requirement"},
    {ConstraintKind::kSectionCount, "section-count"},
    {ConstraintKind::kCaseRequirement, "case-requirement"},
}};

constexpr std::array<std::pair<TextFormat, std::string_view>, 10> kFormatNames = {{
    {TextFormat::kJson, "json"},
    {TextFormat::kBulletList, "bullet_list"},
    {TextFormat::kNumberedList, "numbered_list"},
    {TextFormat::kTitle, "title"},
    {TextFormat::kHighlights, "highlights"},
    {TextFormat::kNoCommas, "no_commas"},
    {TextFormat::kStartWith, "start_with"},
    {TextFormat::kEndWith, "end_with"},
    {TextFormat::kQuotation, "quotation"},
    {TextFormat::kPlaceholders, "placeholders"},
}};

constexpr std::array<std::pair<LengthUnit, std::string_view>, 3> kUnitNames = {{
    {LengthUnit::kCharacters, "characters"},
    {LengthUnit::kSentences, "sentences"},
    {LengthUnit::kParagraphs, "paragraphs"},
}};

constexpr std::array<std::pair<LetterCase, std::string_view>, 3> kCaseNames = {{
    {LetterCase::kLowercase, "lowercase"},
    {LetterCase::kUppercase, "uppercase"},
    {LetterCase::kCapitalWords, "capital_words"},
}};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<Enum, std::string_view>, N>& table,
                           std::string_view name) {
  for (const auto& [value, n] : table) {
    if (n == name) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
  for (const auto& [v, n] : table) {
    if (v == value) return n;
  }
  return "";
}

[[noreturn]] void invalid(const std::string& id, const std::string& why) {
  throw InvalidConstraint("constraint '" + id + "': " + why);
}

std::optional<std::size_t> optional_count(const json& params, const char* key, const std::string& id) {
  if (!params.contains(key) || params[key].is_null()) return std::nullopt;
  const json& v = params[key];
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    invalid(id, std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::string> keyword_list(const json& params, const std::string& id) {
  if (!params.contains("keywords") || !params["keywords"].is_array() || params["keywords"].empty()) {
    invalid(id, "'keywords' must be a non-empty array of strings");
  }
  std::vector<std::string> out;
  for (const auto& k : params["keywords"]) {
    if (!k.is_string() || k.get<std::string>().empty()) invalid(id, "keywords must be non-empty strings");
    out.push_back(k.get<std::string>());
  }
  return out;
}

void require_bound(const ConstraintParams& p, const std::string& id) {
  if (!p.min && !p.max) invalid(id, "needs 'min' or 'max'");
  if (p.min && p.max && *p.min > *p.max) invalid(id, "'min' exceeds 'max'");
}

// ---------------------------------------------------------------------------
// Text measurements.

std::size_t count_code_points(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return detail::is_alpha(c) || detail::is_digit(c) || c == '_' || u >= 0x80;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && !is_word_byte(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && (is_word_byte(s[j]) ||
                            (s[j] == '\'' && j + 1 < s.size() && is_word_byte(s[j + 1]) && j > i))) {
      ++j;
    }
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t count_sentences(std::string_view s) {
  std::size_t n = 0;
  bool content = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.' || c == '!' || c == '?') {
      if (content) ++n;
      content = false;
    } else if (!detail::is_space(c)) {
      content = true;
    }
  }
  return n + (content ? 1 : 0);
}

std::size_t count_paragraphs(std::string_view s) {
  static const std::regex separator(R"(\n[ \t]*\n)");
  std::string text(s);
  std::size_t n = 0;
  for (std::sregex_token_iterator it(text.begin(), text.end(), separator, -1), end; it != end; ++it) {
    if (!detail::trim(std::string_view(it->first, it->second)).empty()) ++n;
  }
  return n;
}

std::size_t count_occurrences_ci(std::string_view haystack, std::string_view needle) {
  std::string h = detail::lower(haystack);
  std::string n = detail::lower(needle);
  std::size_t count = 0;
  for (std::size_t pos = h.find(n); pos != std::string::npos; pos = h.find(n, pos + n.size())) ++count;
  return count;
}

bool within(std::size_t value, const ConstraintParams& p) {
  if (p.min && value < *p.min) return false;
  if (p.max && value > *p.max) return false;
  return true;
}

std::size_t count_line_items(std::string_view s, const std::regex& item) {
  std::string text(s);
  return static_cast<std::size_t>(
      std::distance(std::sregex_iterator(text.begin(), text.end(), item), std::sregex_iterator()));
}

bool check_format(std::string_view text, const ConstraintParams& p) {
  std::string_view t = detail::trim(text);
  switch (p.format) {
    case TextFormat::kJson: {
      std::string body(t);
      if (body.starts_with("```")) {
        std::size_t nl = body.find('\n');
        body = nl == std::string::npos ? "" : body.substr(nl + 1);
        if (body.ends_with("```")) body.resize(body.size() - 3);
      }
      return json::accept(body);
    }
    case TextFormat::kBulletList: {
      static const std::regex bullet(R"((^|\n)[ \t]*[*-][ \t]+\S)");
      return count_line_items(t, bullet) == p.count;
    }
    case TextFormat::kNumberedList: {
      static const std::regex numbered(R"((^|\n)[ \t]*\d+[.)][ \t]+\S)");
      return count_line_items(t, numbered) == p.count;
    }
    case TextFormat::kTitle: {
      static const std::regex title(R"(<<[^\n<>]+>>)");
      std::string s(t);
      return std::regex_search(s, title);
    }
    case TextFormat::kHighlights: {
      static const std::regex highlight(R"(\*[^\n*]+\*)");
      return count_line_items(t, highlight) >= p.count;
    }
    case TextFormat::kNoCommas: return t.find(',') == std::string_view::npos;
    case TextFormat::kStartWith: return detail::starts_with_ci(t, p.phrase);
    case TextFormat::kEndWith: {
      if (t.size() < p.phrase.size()) return false;
      return detail::lower(t.substr(t.size() - p.phrase.size())) == detail::lower(p.phrase);
    }
    case TextFormat::kQuotation: return t.size() >= 2 && t.front() == '"' && t.back() == '"';
    case TextFormat::kPlaceholders: {
      static const std::regex placeholder(R"(\[[^\[\]\n]+\])");
      return count_line_items(t, placeholder) >= p.count;
    }
  }
  return false;
}

bool check_case(std::string_view text, const ConstraintParams& p) {
  switch (p.letter_case) {
    case LetterCase::kLowercase:
      return std::none_of(text.begin(), text.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
    case LetterCase::kUppercase:
      return std::none_of(text.begin(), text.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    case LetterCase::kCapitalWords: {
      std::size_t n = 0;
      for (auto w : words(text)) {
        bool has_letter = std::any_of(w.begin(), w.end(), detail::is_alpha);
        bool all_upper = std::none_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
        if (has_letter && all_upper) ++n;
      }
      return within(n, p);
    }
  }
  return false;
}

std::size_t count_sections(std::string_view text, std::string_view splitter) {
  // "SECTION 1", "Section 2", ... at any position; markers are case-sensitive.
  std::size_t n = 0;
  std::size_t pos = 0;
  while ((pos = text.find(splitter, pos)) != std::string_view::npos) {
    std::size_t i = pos + splitter.size();
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i > pos + splitter.size() && i < text.size() && detail::is_digit(text[i])) ++n;
    pos += splitter.size();
  }
  return n;
}

}  // namespace

std::string_view to_string(ConstraintKind kind) { return name_of(kKindNames, kind); }

std::optional<ConstraintKind> parse_constraint_kind(std::string_view name) {
  return lookup(kKindNames, name);
}

ConstraintSpec constraint_from_json(const json& j) {
  if (!j.is_object()) throw InvalidConstraint("constraint must be a JSON object");
  ConstraintSpec spec;
  spec.id = j.value("id", std::string());
  if (!j.contains("kind") || !j["kind"].is_string()) invalid(spec.id, "missing 'kind'");
  auto kind = parse_constraint_kind(j["kind"].get<std::string>());
  if (!kind) invalid(spec.id, "unknown kind '" + j["kind"].get<std::string>() + "'");
  spec.kind = *kind;
  if (spec.id.empty()) spec.id = std::string(to_string(spec.kind));

  const json params = j.contains("params") ? j["params"] : json::object();
  if (!params.is_object()) invalid(spec.id, "'params' must be an object");
  ConstraintParams& p = spec.params;
  p.min = optional_count(params, "min", spec.id);
  p.max = optional_count(params, "max", spec.id);

  switch (spec.kind) {
    case ConstraintKind::kLengthLimit: {
      std::string unit = params.value("unit", std::string("characters"));
      auto u = lookup(kUnitNames, unit);
      if (!u) invalid(spec.id, "unknown unit '" + unit + "'");
      p.unit = *u;
      require_bound(p, spec.id);
      break;
    }
    case ConstraintKind::kWordCount:
      require_bound(p, spec.id);
      break;
    case ConstraintKind::kKeywordInclusion:
      p.keywords = keyword_list(params, spec.id);
      p.min_frequency = optional_count(params, "min_frequency", spec.id).value_or(1);
      if (p.min_frequency == 0) invalid(spec.id, "'min_frequency' must be positive");
      break;
    case ConstraintKind::kKeywordExclusion:
      p.keywords = keyword_list(params, spec.id);
      break;
    case ConstraintKind::kFormatRequirement: {
      std::string format = params.value("format", std::string());
      auto f = lookup(kFormatNames, format);
      if (!f) invalid(spec.id, "unknown format '" + format + "'");
      p.format = *f;
      auto count = optional_count(params, "count", spec.id);
      if ((p.format == TextFormat::kBulletList || p.format == TextFormat::kNumberedList) && !count) {
        invalid(spec.id, "list formats need 'count'");
      }
      p.count = count.value_or(1);
      if (p.format == TextFormat::kStartWith || p.format == TextFormat::kEndWith) {
        if (!params.contains("phrase") || !params["phrase"].is_string() ||
            params["phrase"].get<std::string>().empty()) {
          invalid(spec.id, "needs a non-empty 'phrase'");
        }
        p.phrase = params["phrase"].get<std::string>();
      }
      break;
    }
    case ConstraintKind::kSectionCount:
      p.splitter = params.value("splitter", std::string("Section"));
      if (p.splitter.empty()) invalid(spec.id, "'splitter' must be non-empty");
      require_bound(p, spec.id);
      break;
    case ConstraintKind::kCaseRequirement: {
      std::string c = params.value("case", std::string());
      auto lc = lookup(kCaseNames, c);
      if (!lc) invalid(spec.id, "unknown case '" + c + "'");
      p.letter_case = *lc;
      if (p.letter_case == LetterCase::kCapitalWords) require_bound(p, spec.id);
      break;
    }
  }
  return spec;
}

json constraint_to_json(const ConstraintSpec& spec) {
  const ConstraintParams& p = spec.params;
  json params = json::object();
  if (p.min) params["min"] = *p.min;
  if (p.max) params["max"] = *p.max;
  switch (spec.kind) {
    case ConstraintKind::kLengthLimit: params["unit"] = name_of(kUnitNames, p.unit); break;
    case ConstraintKind::kWordCount: break;
    case ConstraintKind::kKeywordInclusion:
      params["keywords"] = p.keywords;
      params["min_frequency"] = p.min_frequency;
      break;
    case ConstraintKind::kKeywordExclusion: params["keywords"] = p.keywords; break;
    case ConstraintKind::kFormatRequirement:
      params["format"] = name_of(kFormatNames, p.format);
      params["count"] = p.count;
      if (!p.phrase.empty()) params["phrase"] = p.phrase;
      break;
    case ConstraintKind::kSectionCount: params["splitter"] = p.splitter; break;
    case ConstraintKind::kCaseRequirement: params["case"] = name_of(kCaseNames, p.letter_case); break;
  }
  return json{{"id", spec.id}, {"kind", to_string(spec.kind)}, {"params", params}};
}

bool check_constraint(std::string_view text, const ConstraintSpec& spec) {
  const ConstraintParams& p = spec.params;
  switch (spec.kind) {
    case ConstraintKind::kLengthLimit: {
      std::size_t n = 0;
      switch (p.unit) {
        case LengthUnit::kCharacters: n = count_code_points(detail::trim(text)); break;
        case LengthUnit::kSentences: n = count_sentences(text); break;
        case LengthUnit::kParagraphs: n = count_paragraphs(text); break;
      }
      return within(n, p);
    }
    case ConstraintKind::kWordCount: return within(words(text).size(), p);
    case ConstraintKind::kKeywordInclusion:
      return std::all_of(p.keywords.begin(), p.keywords.end(), [&](const std::string& k) {
        return count_occurrences_ci(text, k) >= p.min_frequency;
      });
    case ConstraintKind::kKeywordExclusion:
      return std::none_of(p.keywords.begin(), p.keywords.end(),
                          [&](const std::string& k) { return count_occurrences_ci(text, k) > 0; });
    case ConstraintKind::kFormatRequirement: return check_format(text, p);
    case ConstraintKind::kSectionCount: return within(count_sections(text, p.splitter), p);
    case ConstraintKind::kCaseRequirement: return check_case(text, p);
  }
  return false;
}

}  // namespace rewardroute
