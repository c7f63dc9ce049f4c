#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rewardroute {

// G rollouts for one prompt: rewards plus per-token log-probabilities under
// the current (new) and rollout (old) policies.
struct RolloutGroup {
  std::vector<double> rewards;
  std::vector<std::vector<double>> logp_new;
  std::vector<std::vector<double>> logp_old;

  std::size_t size() const { return rewards.size(); }
  // Throws InvalidArgument for G < 2, ragged shapes or positive
  // log-probabilities, EmptyRollout for a zero-length rollout.
  void validate() const;
};

struct ClipConfig {
  double eps_low = 0.0003;
  double eps_high = 0.0004;
  double adv_epsilon = 1e-6;

  void validate() const;
};

// A_i = (r_i - mean) / (population std + adv_epsilon). Deviations are taken
// relative to r_0 first, so a constant shift of all rewards cancels before
// any rounding that depends on magnitude.
std::vector<double> group_advantages(std::span<const double> rewards, double adv_epsilon = 1e-6);

// Token mean of logp_new - logp_old for rollout i. Throws EmptyRollout.
double seq_mean_logratio(const RolloutGroup& group, std::size_t i);

// Value of the sequence-level ratio at token t: exp(seq_mean_logratio(i)).
// Its gradient with respect to logp_new(i, t) is the ratio itself and zero
// for every other token.
double gspo_ratio(const RolloutGroup& group, std::size_t i, std::size_t t);

struct ObjectiveResult {
  double objective = 0;
  std::vector<double> advantages;
  std::vector<std::vector<double>> ratios;  // per token
  std::vector<std::vector<bool>> clipped;   // clip branch strictly smaller
  double clip_fraction = 0;                 // over all tokens
};

// J = 1/G sum_i 1/|y_i| sum_t min(s A_i, clip(s, 1 - eps_low, 1 + eps_high) A_i)
// with the sequence-level ratio s = exp(mean log-ratio).
ObjectiveResult gspo_objective(const RolloutGroup& group, const ClipConfig& cfg = {});

// dJ/d logp_new(i, t): (1/G)(1/|y_i|) s_i A_i for unclipped tokens, 0 for
// clipped ones.
std::vector<std::vector<double>> gspo_gradient(const RolloutGroup& group, const ClipConfig& cfg = {});

// Same surrogate with per-token ratios exp(logp_new(i,t) - logp_old(i,t)).
ObjectiveResult grpo_objective(const RolloutGroup& group, const ClipConfig& cfg = {});
std::vector<std::vector<double>> grpo_gradient(const RolloutGroup& group, const ClipConfig& cfg = {});

// Mean over tokens of -sum p ln p. Each row must be a distribution within
// 1e-9; throws InvalidArgument otherwise.
double mean_token_entropy(const std::vector<std::vector<double>>& distributions);

}  // namespace rewardroute
