#include "rewardroute/reward.hpp"

#include "rewardroute/errors.hpp"

namespace rewardroute {

void RewardConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  if (buffer < 1) throw InvalidArgument("buffer must be at least 1 token");
  if (buffer > max_tokens) throw InvalidArgument("buffer must not exceed max_tokens");
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be non-negative");
  if (!(blend_w >= 0.0 && blend_w <= 1.0)) throw InvalidArgument("blend_w must lie in [0, 1]");
}

double overlong_penalty(std::uint64_t token_count, const RewardConfig& cfg) {
  const double start = static_cast<double>(cfg.max_tokens) - static_cast<double>(cfg.buffer);
  const double ramp = -(static_cast<double>(token_count) - start) / static_cast<double>(cfg.buffer) * cfg.lambda;
  return ramp < 0.0 ? ramp : 0.0;  // never -0.0
}

double blend_if_judge(double r_inst, double r_judge, const RewardConfig& cfg) {
  return cfg.blend_w * r_inst + (1.0 - cfg.blend_w) * r_judge;
}

RewardBreakdown total_reward(double r_acc, double r_fmt, std::uint64_t token_count,
                             const RewardConfig& cfg) {
  RewardBreakdown out;
  out.r_acc = r_acc;
  out.r_fmt = r_fmt;
  out.r_overlong = overlong_penalty(token_count, cfg);
  out.total = (1.0 - cfg.alpha) * r_acc + cfg.alpha * r_fmt + out.r_overlong;
  return out;
}

}  // namespace rewardroute
