#include "rewardroute/policy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rewardroute/errors.hpp"

namespace rewardroute {
namespace {

struct Surrogate {
  double value;
  bool clipped;
};

Surrogate clipped_term(double ratio, double advantage, const ClipConfig& cfg) {
  double unclipped = ratio * advantage;
  double bounded = std::clamp(ratio, 1.0 - cfg.eps_low, 1.0 + cfg.eps_high) * advantage;
  return {std::min(unclipped, bounded), bounded < unclipped};
}

template <typename RatioFn>
ObjectiveResult evaluate(const RolloutGroup& group, const ClipConfig& cfg, RatioFn ratio_at) {
  group.validate();
  cfg.validate();
  const std::size_t g = group.size();
  ObjectiveResult out;
  out.advantages = group_advantages(group.rewards, cfg.adv_epsilon);
  out.ratios.resize(g);
  out.clipped.resize(g);
  std::size_t tokens = 0;
  std::size_t clipped = 0;
  double total = 0;
  for (std::size_t i = 0; i < g; ++i) {
    const std::size_t len = group.logp_new[i].size();
    double seq = 0;
    for (std::size_t t = 0; t < len; ++t) {
      double r = ratio_at(i, t);
      Surrogate term = clipped_term(r, out.advantages[i], cfg);
      out.ratios[i].push_back(r);
      out.clipped[i].push_back(term.clipped);
      seq += term.value;
      clipped += term.clipped ? 1 : 0;
    }
    tokens += len;
    total += seq / static_cast<double>(len);
  }
  out.objective = total / static_cast<double>(g);
  out.clip_fraction = static_cast<double>(clipped) / static_cast<double>(tokens);
  return out;
}

std::vector<std::vector<double>> gradient_from(const ObjectiveResult& obj) {
  const double g = static_cast<double>(obj.ratios.size());
  std::vector<std::vector<double>> grad(obj.ratios.size());
  for (std::size_t i = 0; i < obj.ratios.size(); ++i) {
    const double len = static_cast<double>(obj.ratios[i].size());
    for (std::size_t t = 0; t < obj.ratios[i].size(); ++t) {
      grad[i].push_back(obj.clipped[i][t] ? 0.0 : obj.ratios[i][t] * obj.advantages[i] / (g * len));
    }
  }
  return grad;
}

}  // namespace

void RolloutGroup::validate() const {
  if (rewards.size() < 2) throw InvalidArgument("a group needs at least 2 rollouts");
  if (logp_new.size() != rewards.size() || logp_old.size() != rewards.size()) {
    throw InvalidArgument("rewards, logp_new and logp_old must have one entry per rollout");
  }
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    if (!std::isfinite(rewards[i])) throw InvalidArgument("non-finite reward");
    if (logp_new[i].empty()) throw EmptyRollout("rollout " + std::to_string(i) + " has no tokens");
    if (logp_new[i].size() != logp_old[i].size()) {
      throw InvalidArgument("rollout " + std::to_string(i) + ": new/old lengths differ");
    }
    for (std::size_t t = 0; t < logp_new[i].size(); ++t) {
      if (!(logp_new[i][t] <= 0.0) || !(logp_old[i][t] <= 0.0)) {
        throw InvalidArgument("log-probabilities must be <= 0");
      }
    }
  }
}

void ClipConfig::validate() const {
  if (!(eps_low > 0.0) || !(eps_low <= eps_high)) throw InvalidArgument("need 0 < eps_low <= eps_high");
  if (!(adv_epsilon > 0.0)) throw InvalidArgument("adv_epsilon must be positive");
}

std::vector<double> group_advantages(std::span<const double> rewards, double adv_epsilon) {
  if (rewards.size() < 2) throw InvalidArgument("a group needs at least 2 rewards");
  const double n = static_cast<double>(rewards.size());
  std::vector<double> dev(rewards.size());
  double mean = 0;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    dev[i] = rewards[i] - rewards[0];
    mean += dev[i];
  }
  mean /= n;
  double var = 0;
  for (double& d : dev) {
    d -= mean;
    var += d * d;
  }
  const double denom = std::sqrt(var / n) + adv_epsilon;
  for (double& d : dev) d /= denom;
  return dev;
}

double seq_mean_logratio(const RolloutGroup& group, std::size_t i) {
  if (i >= group.logp_new.size()) throw InvalidArgument("rollout index out of range");
  const auto& lp_new = group.logp_new[i];
  const auto& lp_old = group.logp_old[i];
  if (lp_new.empty()) throw EmptyRollout("rollout " + std::to_string(i) + " has no tokens");
  if (lp_new.size() != lp_old.size()) throw InvalidArgument("new/old lengths differ");
  double sum = 0;
  for (std::size_t t = 0; t < lp_new.size(); ++t) sum += lp_new[t] - lp_old[t];
  return sum / static_cast<double>(lp_new.size());
}

double gspo_ratio(const RolloutGroup& group, std::size_t i, std::size_t t) {
  double mean = seq_mean_logratio(group, i);
  if (t >= group.logp_new[i].size()) throw InvalidArgument("token index out of range");
  // sg(s) * exp(logp - sg(logp)); the correction factor is exactly 1 here.
  const double lp = group.logp_new[i][t];
  return std::exp(mean) * std::exp(lp - lp);
}

ObjectiveResult gspo_objective(const RolloutGroup& group, const ClipConfig& cfg) {
  std::vector<double> seq_ratio;
  return evaluate(group, cfg, [&](std::size_t i, std::size_t t) {
    if (t == 0) seq_ratio.push_back(std::exp(seq_mean_logratio(group, i)));
    return seq_ratio[i];
  });
}

std::vector<std::vector<double>> gspo_gradient(const RolloutGroup& group, const ClipConfig& cfg) {
  return gradient_from(gspo_objective(group, cfg));
}

ObjectiveResult grpo_objective(const RolloutGroup& group, const ClipConfig& cfg) {
  return evaluate(group, cfg, [&](std::size_t i, std::size_t t) {
    return std::exp(group.logp_new[i][t] - group.logp_old[i][t]);
  });
}

std::vector<std::vector<double>> grpo_gradient(const RolloutGroup& group, const ClipConfig& cfg) {
  return gradient_from(grpo_objective(group, cfg));
}

double mean_token_entropy(const std::vector<std::vector<double>>& distributions) {
  if (distributions.empty()) throw InvalidArgument("no token distributions");
  double total = 0;
  for (const auto& p : distributions) {
    double sum = 0;
    double h = 0;
    for (double x : p) {
      if (!(x >= 0.0)) throw InvalidArgument("negative probability");
      sum += x;
      if (x > 0) h -= x * std::log(x);
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw InvalidArgument("token distribution does not sum to 1");
    total += h;
  }
  return total / static_cast<double>(distributions.size());
}

}  // namespace rewardroute
