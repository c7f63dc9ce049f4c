#pragma once

#include <cstdint>
#include <string>

namespace rewardroute {

struct RewardConfig {
  double alpha = 0.2;               // format weight
  std::uint64_t buffer = 2048;      // overlong ramp width B
  double lambda = 1.0;              // penalty at the ramp end
  std::uint64_t max_tokens = 16384; // L_max, per run
  double blend_w = 0.5;             // constraint share of the IF + judge blend

  // Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

struct RewardBreakdown {
  double r_acc = 0.0;
  double r_fmt = 0.0;
  double r_overlong = 0.0;
  double total = 0.0;
  std::string detail;

  bool operator==(const RewardBreakdown&) const = default;
};

// min(-(n - (L_max - B)) / B * lambda, 0). Zero up to L_max - B, linear to
// -lambda at L_max; not clamped beyond.
double overlong_penalty(std::uint64_t token_count, const RewardConfig& cfg);

// w * r_inst + (1 - w) * r_judge.
double blend_if_judge(double r_inst, double r_judge, const RewardConfig& cfg);

// total = (1 - alpha) * r_acc + alpha * r_fmt + overlong_penalty(token_count).
RewardBreakdown total_reward(double r_acc, double r_fmt, std::uint64_t token_count,
                             const RewardConfig& cfg);

}  // namespace rewardroute
