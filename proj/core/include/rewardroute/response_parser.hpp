#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rewardroute {

// A model generation as handed over by the trainer. The token count is the
// generation length in tokens; this library never tokenizes.
struct RawResponse {
  std::string text;
  std::uint64_t token_count = 0;
};

// Structured view of a `<think>...</think><answer>...</answer>` response.
//
// `think` and `answer` hold the inner text of the first tag pair of each
// kind. `boxed` holds the inner text of every brace-balanced `\boxed{...}`
// inside the answer block, in document order. `structure_ok` is true only when
// the whole (trimmed) response is exactly one think pair followed by one answer
// pair, both closed, with non-blank think content.
struct ParsedResponse {
  std::optional<std::string> think;
  std::optional<std::string> answer;
  std::vector<std::string> boxed;
  bool structure_ok = false;

  bool operator==(const ParsedResponse&) const = default;
};

// Which boxed-count rule applies when grading format.
enum class AnswerKind {
  kDiscreteSymbolic,  // exactly one \boxed{} required for full credit
  kGroundingLike,     // several \boxed{} expressions halve the credit
  kOpenEnded,         // \boxed{} optional
};

// What may appear between `</think>` and `<answer>`.
enum class GapPolicy {
  kWhitespaceOnly,  // default
  kStrict,          // nothing at all
  kAnyText,         // anything
};

struct ParseOptions {
  GapPolicy gap = GapPolicy::kWhitespaceOnly;
};

// Total: never throws; malformed input yields structure_ok == false with
// whatever fragments could be recovered.
ParsedResponse parse_response(std::string_view text, const ParseOptions& options = {});

// Inner contents of every balanced `\boxed{...}` in `text`. Unbalanced
// occurrences are skipped.
std::vector<std::string> extract_boxed(std::string_view text);

// Format reward in {0, 0.5, 1}.
double format_reward(const ParsedResponse& parsed, AnswerKind kind);

// Renders a response from its fragments in canonical form.
std::string render_response(std::string_view think, std::string_view answer);

}  // namespace rewardroute
