#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rewardroute {

enum class TaskCategory {
  kChartOcr,
  kStem,
  kSpatialAction,
  kKnowledgeRecognition,
  kGroundingCountingSearch,
  kCaptioningInstructionFollowing,
};

std::string_view to_string(TaskCategory category);  // "chart_ocr", ...
std::optional<TaskCategory> parse_category(std::string_view name);

// Per-dataset profile. acc, mean_think_len and mean_area come from a
// profiling run and are inputs here.
struct DatasetStats {
  std::string name;
  TaskCategory category = TaskCategory::kChartOcr;
  std::uint64_t n_examples = 0;
  double avg_pixels = 0;
  bool binary_only = false;
  double acc = 0;             // [0, 1]
  double mean_think_len = 0;  // tokens
  double mean_area = 0;       // pixels

  // Throws InvalidArgument.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Heuristic screening.

struct ScreenConfig {
  std::uint64_t min_examples = 1000;
  double min_avg_pixels = 200000;
  std::set<std::string> low_resolution_allow;  // dataset names exempt from the pixel rule
};

enum class ScreenReason { kSize, kResolution, kBinaryOnly };
std::string_view to_string(ScreenReason reason);

struct ScreenResult {
  std::vector<ScreenReason> reasons;  // empty means pass
  bool passed() const { return reasons.empty(); }
};

ScreenResult heuristic_screen(const DatasetStats& stats, const ScreenConfig& cfg = {});

// ---------------------------------------------------------------------------
// Mixture planning.

enum class MixtureScheme { kUniform, kDifficulty, kLength, kArea, kDropCategory };
std::string_view to_string(MixtureScheme scheme);
std::optional<MixtureScheme> parse_scheme(std::string_view name);

struct SchemeChoice {
  MixtureScheme scheme = MixtureScheme::kUniform;
  std::optional<TaskCategory> dropped;
};

// "uniform", "difficulty", "length", "area" or "drop:<category>". Throws
// InvalidArgument.
SchemeChoice parse_scheme_choice(std::string_view text);

inline constexpr double kDefaultSpread = 1.6;

struct MixtureSpec {
  MixtureScheme scheme = MixtureScheme::kUniform;
  double alpha = 0;
  std::map<TaskCategory, double> shares;  // sums to 1
  std::optional<TaskCategory> dropped;
};

// alpha = ln(spread) / ln(max / min), so that max(v^alpha) / min(v^alpha) ==
// spread. Throws InvalidArgument for non-positive values or spread <= 1 and
// DegenerateStats when all values are equal.
double solve_alpha(std::span<const double> values, double spread = kDefaultSpread);

// Statistic a scheme weights by, per category: n_examples-weighted mean of
// 1 - acc (difficulty), mean_think_len (length) or mean_area (area).
std::map<TaskCategory, double> category_statistic(std::span<const DatasetStats> stats,
                                                  MixtureScheme scheme);

// Shares over the categories present in `stats`. Non-uniform schemes use
// share ∝ statistic^alpha with alpha from solve_alpha. kDropCategory needs
// `dropped`, which gets share 0 while the rest split evenly.
MixtureSpec plan_mixture(std::span<const DatasetStats> stats, MixtureScheme scheme,
                         double spread = kDefaultSpread,
                         std::optional<TaskCategory> dropped = std::nullopt);

// Per-category sample counts for one batch. Each category gets floor or
// ceil of share * batch_size and the counts sum to batch_size; which
// categories round up is drawn by systematic sampling over the fractional
// parts, so expected counts equal share * batch_size exactly. Deterministic
// for a given seed.
std::map<TaskCategory, std::uint64_t> sample_schedule(const MixtureSpec& spec,
                                                      std::uint64_t batch_size, std::uint64_t seed);

}  // namespace rewardroute
