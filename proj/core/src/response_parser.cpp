#include "rewardroute/response_parser.hpp"

#include "text_util.hpp"

namespace rewardroute {
namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";
constexpr std::string_view kBoxed = "\\boxed{";

struct TagPair {
  std::size_t open = std::string_view::npos;   // position of the opening tag
  std::size_t close = std::string_view::npos;  // position of the closing tag
  std::string_view inner;
  bool found() const { return close != std::string_view::npos; }
};

TagPair find_pair(std::string_view text, std::string_view open_tag, std::string_view close_tag,
                  std::size_t from) {
  TagPair pair;
  std::size_t open = text.find(open_tag, from);
  if (open == std::string_view::npos) return pair;
  std::size_t begin = open + open_tag.size();
  std::size_t close = text.find(close_tag, begin);
  if (close == std::string_view::npos) return pair;
  pair.open = open;
  pair.close = close;
  pair.inner = text.substr(begin, close - begin);
  return pair;
}

bool gap_allowed(std::string_view gap, GapPolicy policy) {
  switch (policy) {
    case GapPolicy::kStrict: return gap.empty();
    case GapPolicy::kWhitespaceOnly: return detail::trim(gap).empty();
    case GapPolicy::kAnyText: return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> extract_boxed(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = text.find(kBoxed, pos)) != std::string_view::npos) {
    std::size_t begin = pos + kBoxed.size();
    int depth = 1;
    std::size_t i = begin;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c == '\\' && i + 1 < text.size() && (text[i + 1] == '{' || text[i + 1] == '}')) {
        ++i;  // escaped brace is literal
        continue;
      }
      if (c == '{') {
        ++depth;
      } else if (c == '}') {
        if (--depth == 0) break;
      }
    }
    if (depth == 0) {
      out.emplace_back(text.substr(begin, i - begin));
      pos = i + 1;
    } else {
      pos = begin;  // unbalanced: skip this occurrence
    }
  }
  return out;
}

ParsedResponse parse_response(std::string_view raw, const ParseOptions& options) {
  ParsedResponse parsed;
  std::string_view text = detail::trim(raw);

  TagPair think = find_pair(text, kThinkOpen, kThinkClose, 0);
  // An answer tag quoted inside the reasoning must not be mistaken for the
  // real one, so the answer search starts after a closed think block.
  std::size_t answer_from = think.found() ? think.close + kThinkClose.size() : 0;
  TagPair answer = find_pair(text, kAnswerOpen, kAnswerClose, answer_from);

  if (think.found()) parsed.think = std::string(think.inner);
  if (answer.found()) {
    parsed.answer = std::string(answer.inner);
    parsed.boxed = extract_boxed(answer.inner);
  }

  if (think.found() && answer.found() && think.open == 0) {
    std::size_t gap_begin = think.close + kThinkClose.size();
    std::string_view gap = text.substr(gap_begin, answer.open - gap_begin);
    std::size_t tail_begin = answer.close + kAnswerClose.size();
    parsed.structure_ok = !detail::trim(think.inner).empty() &&
                          gap_allowed(gap, options.gap) && tail_begin == text.size();
  }
  return parsed;
}

double format_reward(const ParsedResponse& parsed, AnswerKind kind) {
  if (!parsed.structure_ok) return 0.0;
  const std::size_t n = parsed.boxed.size();
  switch (kind) {
    case AnswerKind::kDiscreteSymbolic: return n == 1 ? 1.0 : 0.5;
    case AnswerKind::kGroundingLike: return n > 1 ? 0.5 : 1.0;
    case AnswerKind::kOpenEnded: return 1.0;
  }
  return 0.0;
}

std::string render_response(std::string_view think, std::string_view answer) {
  std::string out;
  out.reserve(think.size() + answer.size() + 34);
  out.append(kThinkOpen).append(think).append(kThinkClose);
  out.append(kAnswerOpen).append(answer).append(kAnswerClose);
  return out;
}

}  // namespace rewardroute
