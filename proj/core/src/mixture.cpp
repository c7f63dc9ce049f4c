#include "rewardroute/mixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "rewardroute/errors.hpp"

namespace rewardroute {
namespace {

constexpr std::array<std::pair<TaskCategory, std::string_view>, 6> kCategoryNames = {{
    {TaskCategory::kChartOcr, "chart_ocr"},
    {TaskCategory::kStem, "stem"},
    {TaskCategory::kSpatialAction, "spatial_action"},
    {TaskCategory::kKnowledgeRecognition, "knowledge_recognition"},
    {TaskCategory::kGroundingCountingSearch, "grounding_counting_search"},
    {TaskCategory::kCaptioningInstructionFollowing, "captioning_instruction_following"},
}};

constexpr std::array<std::pair<MixtureScheme, std::string_view>, 5> kSchemeNames = {{
    {MixtureScheme::kUniform, "uniform"},
    {MixtureScheme::kDifficulty, "difficulty"},
    {MixtureScheme::kLength, "length"},
    {MixtureScheme::kArea, "area"},
    {MixtureScheme::kDropCategory, "drop-category"},
}};

double statistic(const DatasetStats& s, MixtureScheme scheme) {
  switch (scheme) {
    case MixtureScheme::kDifficulty: return 1.0 - s.acc;
    case MixtureScheme::kLength: return s.mean_think_len;
    case MixtureScheme::kArea: return s.mean_area;
    default: return 1.0;
  }
}

std::set<TaskCategory> categories_of(std::span<const DatasetStats> stats) {
  std::set<TaskCategory> out;
  for (const DatasetStats& s : stats) out.insert(s.category);
  return out;
}

}  // namespace

std::string_view to_string(TaskCategory category) {
  for (const auto& [c, name] : kCategoryNames) {
    if (c == category) return name;
  }
  return "";
}

std::optional<TaskCategory> parse_category(std::string_view name) {
  for (const auto& [c, n] : kCategoryNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

void DatasetStats::validate() const {
  if (!(acc >= 0.0 && acc <= 1.0)) throw InvalidArgument("dataset '" + name + "': acc outside [0, 1]");
  if (!(avg_pixels >= 0.0) || !(mean_think_len >= 0.0) || !(mean_area >= 0.0)) {
    throw InvalidArgument("dataset '" + name + "': negative statistic");
  }
}

std::string_view to_string(ScreenReason reason) {
  switch (reason) {
    case ScreenReason::kSize: return "size";
    case ScreenReason::kResolution: return "resolution";
    case ScreenReason::kBinaryOnly: return "binary-only";
  }
  return "";
}

ScreenResult heuristic_screen(const DatasetStats& stats, const ScreenConfig& cfg) {
  ScreenResult r;
  if (stats.n_examples < cfg.min_examples) r.reasons.push_back(ScreenReason::kSize);
  if (stats.avg_pixels < cfg.min_avg_pixels && !cfg.low_resolution_allow.contains(stats.name)) {
    r.reasons.push_back(ScreenReason::kResolution);
  }
  if (stats.binary_only) r.reasons.push_back(ScreenReason::kBinaryOnly);
  return r;
}

std::string_view to_string(MixtureScheme scheme) {
  for (const auto& [s, name] : kSchemeNames) {
    if (s == scheme) return name;
  }
  return "";
}

std::optional<MixtureScheme> parse_scheme(std::string_view name) {
  for (const auto& [s, n] : kSchemeNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

SchemeChoice parse_scheme_choice(std::string_view text) {
  constexpr std::string_view kDrop = "drop:";
  if (text.starts_with(kDrop)) {
    auto category = parse_category(text.substr(kDrop.size()));
    if (!category) throw InvalidArgument("unknown category in '" + std::string(text) + "'");
    return {MixtureScheme::kDropCategory, category};
  }
  auto scheme = parse_scheme(text);
  if (!scheme || *scheme == MixtureScheme::kDropCategory) {
    throw InvalidArgument("unknown scheme '" + std::string(text) +
                          "' (uniform, difficulty, length, area, drop:<category>)");
  }
  return {*scheme, std::nullopt};
}

double solve_alpha(std::span<const double> values, double spread) {
  if (!(spread > 1.0)) throw InvalidArgument("spread must be > 1");
  if (values.empty()) throw InvalidArgument("no statistics");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("statistics must be positive and finite");
  }
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) throw DegenerateStats("all category statistics are equal; use the uniform scheme");
  return std::log(spread) / std::log(*hi / *lo);
}

std::map<TaskCategory, double> category_statistic(std::span<const DatasetStats> stats,
                                                  MixtureScheme scheme) {
  struct Acc {
    double weighted = 0, weight = 0, plain = 0;
    std::size_t count = 0;
  };
  std::map<TaskCategory, Acc> acc;
  for (const DatasetStats& s : stats) {
    s.validate();
    Acc& a = acc[s.category];
    double v = statistic(s, scheme);
    a.weighted += v * static_cast<double>(s.n_examples);
    a.weight += static_cast<double>(s.n_examples);
    a.plain += v;
    ++a.count;
  }
  std::map<TaskCategory, double> out;
  for (const auto& [c, a] : acc) {
    out[c] = a.weight > 0 ? a.weighted / a.weight : a.plain / static_cast<double>(a.count);
  }
  return out;
}

MixtureSpec plan_mixture(std::span<const DatasetStats> stats, MixtureScheme scheme, double spread,
                         std::optional<TaskCategory> dropped) {
  std::set<TaskCategory> categories = categories_of(stats);
  if (categories.empty()) throw InvalidArgument("no dataset statistics");
  MixtureSpec spec;
  spec.scheme = scheme;

  switch (scheme) {
    case MixtureScheme::kUniform:
      for (TaskCategory c : categories) spec.shares[c] = 1.0 / static_cast<double>(categories.size());
      return spec;
    case MixtureScheme::kDropCategory: {
      if (!dropped) throw InvalidArgument("drop-category needs a category to drop");
      spec.dropped = dropped;
      categories.erase(*dropped);
      if (categories.empty()) throw InvalidArgument("dropping the only category leaves nothing to sample");
      for (TaskCategory c : categories) spec.shares[c] = 1.0 / static_cast<double>(categories.size());
      spec.shares[*dropped] = 0.0;
      return spec;
    }
    default: break;
  }

  std::map<TaskCategory, double> values = category_statistic(stats, scheme);
  std::vector<double> v;
  for (const auto& [c, x] : values) v.push_back(x);
  spec.alpha = solve_alpha(v, spread);

  double total = 0;
  for (const auto& [c, x] : values) total += spec.shares[c] = std::pow(x, spec.alpha);
  for (auto& [c, share] : spec.shares) share /= total;
  return spec;
}

std::map<TaskCategory, std::uint64_t> sample_schedule(const MixtureSpec& spec, std::uint64_t batch_size,
                                                      std::uint64_t seed) {
  std::map<TaskCategory, std::uint64_t> counts;
  std::vector<TaskCategory> order;
  std::vector<double> fraction;
  std::uint64_t assigned = 0;
  for (const auto& [c, share] : spec.shares) {
    if (!(share >= 0.0)) throw InvalidArgument("negative share");
    double quota = share * static_cast<double>(batch_size);
    auto whole = static_cast<std::uint64_t>(std::floor(quota));
    counts[c] = whole;
    assigned += whole;
    order.push_back(c);
    fraction.push_back(quota - static_cast<double>(whole));
  }
  if (assigned > batch_size) throw InvalidArgument("shares sum above 1");
  std::uint64_t remaining = batch_size - assigned;
  if (remaining == 0) return counts;

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(order.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

  // Systematic sampling: category k rounds up when a point u + j falls
  // inside its slice of the cumulative fractional parts.
  std::vector<bool> up(order.size(), false);
  std::uint64_t picked = 0;
  double cumulative = 0;
  double next_point = u;
  for (std::size_t k : idx) {
    cumulative += fraction[k];
    if (picked < remaining && next_point < cumulative) {
      up[k] = true;
      ++picked;
      next_point += 1.0;
    }
  }
  // Float slack can leave the last point unused; hand it to the largest
  // fractional part still rounding down.
  while (picked < remaining) {
    std::size_t best = order.size();
    for (std::size_t k : idx) {
      if (!up[k] && fraction[k] > 0.0 && (best == order.size() || fraction[k] > fraction[best])) best = k;
    }
    if (best == order.size()) break;
    up[best] = true;
    ++picked;
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (up[k]) ++counts[order[k]];
  }
  return counts;
}

}  // namespace rewardroute
