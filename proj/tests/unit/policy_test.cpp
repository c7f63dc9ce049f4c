#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rewardroute/errors.hpp"
#include "rewardroute/policy.hpp"

using namespace rewardroute;

namespace {

RolloutGroup random_group(std::mt19937_64& rng, std::size_t g, std::size_t max_len, double drift) {
  std::uniform_real_distribution<double> lp(-3.0, -0.05), d(-drift, drift), r(0, 1);
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  RolloutGroup grp;
  for (std::size_t i = 0; i < g; ++i) {
    std::size_t n = len(rng);
    std::vector<double> o, nw;
    for (std::size_t t = 0; t < n; ++t) {
      double old = lp(rng);
      o.push_back(old);
      nw.push_back(std::min(0.0, old + d(rng)));
    }
    grp.rewards.push_back(r(rng));
    grp.logp_old.push_back(o);
    grp.logp_new.push_back(nw);
  }
  return grp;
}

RolloutGroup identical(std::vector<double> rewards, std::vector<std::size_t> lengths) {
  RolloutGroup g;
  g.rewards = std::move(rewards);
  for (std::size_t n : lengths) {
    std::vector<double> lp(n, -0.5);
    g.logp_new.push_back(lp);
    g.logp_old.push_back(lp);
  }
  return g;
}

}  // namespace

TEST(Advantages, Examples) {
  auto a = group_advantages(std::vector<double>{1, 1, 1, 1});
  for (double v : a) EXPECT_EQ(v, 0.0);
  a = group_advantages(std::vector<double>{1, 0});
  EXPECT_NEAR(a[0], 1.0, 1e-5);
  EXPECT_NEAR(a[1], -1.0, 1e-5);
  a = group_advantages(std::vector<double>{1, 0.5, 0});
  EXPECT_NEAR(a[0], 1.2247, 1e-4);
  EXPECT_NEAR(a[1], 0.0, 1e-12);
  EXPECT_NEAR(a[2], -1.2247, 1e-4);
}

TEST(Advantages, MatchesScalarFormula) {
  std::vector<double> r{0.3, 0.9, 0.1, 0.45, 0.7};
  double mean = 0;
  for (double v : r) mean += v;
  mean /= r.size();
  double var = 0;
  for (double v : r) var += (v - mean) * (v - mean);
  double sd = std::sqrt(var / r.size());
  auto a = group_advantages(r, 1e-6);
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(a[i], (r[i] - mean) / (sd + 1e-6), 1e-12);
}

TEST(Advantages, ShiftInvariantExactly) {
  std::vector<double> r{0.25, 1.0, 0.5, 0.0, 0.75};
  auto base = group_advantages(r);
  for (double shift : {1.0, -3.0, 100.0, 0.5}) {
    std::vector<double> s = r;
    for (double& v : s) v += shift;
    EXPECT_EQ(group_advantages(s), base) << shift;
  }
}

TEST(LogRatio, Examples) {
  RolloutGroup g = identical({1, 0}, {3, 2});
  EXPECT_EQ(seq_mean_logratio(g, 0), 0.0);
  g.logp_new[0] = {-0.25, -0.25, -0.25};
  EXPECT_NEAR(seq_mean_logratio(g, 0), 0.25, 1e-15);
  g.logp_new[1] = {-0.5 + 0.1, -0.5 - 0.3};
  EXPECT_NEAR(seq_mean_logratio(g, 1), -0.1, 1e-15);
}

TEST(Ratio, ValueIsExpOfMean) {
  RolloutGroup g = identical({1, 0}, {4, 2});
  for (double& v : g.logp_old[0]) v = -1.0;
  for (double& v : g.logp_new[0]) v = -1.0 + std::log(2.0);
  for (std::size_t t = 0; t < 4; ++t) EXPECT_NEAR(gspo_ratio(g, 0, t), 2.0, 1e-15);
  EXPECT_EQ(gspo_ratio(g, 1, 0), 1.0);
}

TEST(Objective, IdenticalPoliciesGiveZero) {
  RolloutGroup g = identical({1.0, 0.0, 0.75, 0.25}, {3, 3, 3, 3});
  ObjectiveResult r = gspo_objective(g);
  EXPECT_NEAR(r.objective, 0.0, 1e-15);
  EXPECT_EQ(r.clip_fraction, 0.0);
  EXPECT_NEAR(grpo_objective(g).objective, r.objective, 1e-15);
}

TEST(Objective, ZeroAdvantages) {
  RolloutGroup g = identical({0.5, 0.5, 0.5}, {2, 3, 4});
  g.logp_new[1][0] = -0.1;
  EXPECT_EQ(gspo_objective(g).objective, 0.0);
  for (const auto& row : gspo_gradient(g))
    for (double v : row) EXPECT_EQ(v, 0.0);
}

TEST(Objective, ClipSaturation) {
  RolloutGroup g = identical({1, 0}, {2, 2});
  for (double& v : g.logp_new[0]) v = -0.5 + 0.1;  // ratio e^0.1, far above 1 + eps_high
  ClipConfig cfg;
  ObjectiveResult r = gspo_objective(g, cfg);
  double a0 = r.advantages[0];
  ASSERT_GT(a0, 0);
  // Rollout 1 is unclipped at ratio 1.
  double expected = 0.5 * ((1 + cfg.eps_high) * a0 + r.advantages[1]);
  EXPECT_NEAR(r.objective, expected, 1e-15);
  EXPECT_TRUE(r.clipped[0][0] && r.clipped[0][1]);
  EXPECT_FALSE(r.clipped[1][0]);
  EXPECT_EQ(r.clip_fraction, 0.5);
  auto grad = gspo_gradient(g, cfg);
  EXPECT_EQ(grad[0][0], 0.0);
  EXPECT_EQ(grad[0][1], 0.0);
}

TEST(Gradient, SignFollowsAdvantage) {
  RolloutGroup g = identical({1, 0}, {3, 3});
  auto grad = gspo_gradient(g);
  for (double v : grad[0]) EXPECT_GT(v, 0);
  for (double v : grad[1]) EXPECT_LT(v, 0);
  // Against finite differences at step 1e-6.
  ClipConfig cfg;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t t = 0; t < 3; ++t) {
      auto f = [&](const std::vector<double>& x) {
        RolloutGroup h = g;
        h.logp_new[i][t] = x[0];
        return gspo_objective(h, cfg).objective;
      };
      double fd = oracle::central_difference(f, {g.logp_new[i][t]}, 0, 1e-6);
      EXPECT_EQ(std::signbit(fd), std::signbit(grad[i][t]));
    }
  }
}

TEST(Gradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(21);
  ClipConfig wide{.eps_low = 0.2, .eps_high = 0.28, .adv_epsilon = 1e-6};
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    RolloutGroup g = random_group(rng, 4, 6, 0.05);
    auto grad = gspo_gradient(g, wide);
    ObjectiveResult base = gspo_objective(g, wide);
    for (std::size_t i = 0; i < g.size(); ++i) {
      double s = base.ratios[i][0];
      // Skip rollouts near a clip boundary.
      if (std::abs(s - (1 - wide.eps_low)) < 1e-3 || std::abs(s - (1 + wide.eps_high)) < 1e-3) continue;
      for (std::size_t t = 0; t < g.logp_new[i].size(); ++t) {
        auto f = [&](const std::vector<double>& x) {
          RolloutGroup h = g;
          h.logp_new[i][t] = x[0];
          return gspo_objective(h, wide).objective;
        };
        double fd = oracle::central_difference(f, {g.logp_new[i][t]}, 0, 1e-6);
        double scale = std::max(std::abs(grad[i][t]), 1e-8);
        EXPECT_LE(std::abs(fd - grad[i][t]) / scale, 1e-5);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Grpo, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(8);
  ClipConfig wide{.eps_low = 0.2, .eps_high = 0.28, .adv_epsilon = 1e-6};
  RolloutGroup g = random_group(rng, 3, 5, 0.05);
  auto grad = grpo_gradient(g, wide);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t t = 0; t < g.logp_new[i].size(); ++t) {
      auto f = [&](const std::vector<double>& x) {
        RolloutGroup h = g;
        h.logp_new[i][t] = x[0];
        return grpo_objective(h, wide).objective;
      };
      double fd = oracle::central_difference(f, {g.logp_new[i][t]}, 0, 1e-6);
      EXPECT_NEAR(fd, grad[i][t], 1e-5 * std::max(1.0, std::abs(grad[i][t])));
    }
  }
}

TEST(Objective, SingleTokenGspoEqualsGrpo) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    RolloutGroup g = random_group(rng, 5, 1, 0.001);
    EXPECT_NEAR(gspo_objective(g).objective, grpo_objective(g).objective, 1e-12);
  }
}

TEST(Objective, GspoAndGrpoDivergeOnLongRollouts) {
  RolloutGroup g = identical({1, 0}, {8, 8});
  g.logp_new[0][3] = -0.5 + 0.0008;
  ClipConfig cfg;
  EXPECT_NE(gspo_objective(g, cfg).objective, grpo_objective(g, cfg).objective);
}

TEST(Objective, PermutationInvariant) {
  std::mt19937_64 rng(17);
  RolloutGroup g = random_group(rng, 5, 6, 0.001);
  RolloutGroup p = g;
  std::swap(p.rewards[0], p.rewards[3]);
  std::swap(p.logp_new[0], p.logp_new[3]);
  std::swap(p.logp_old[0], p.logp_old[3]);
  EXPECT_NEAR(gspo_objective(g).objective, gspo_objective(p).objective, 1e-15);
}

TEST(Objective, ShiftInvariantExactly) {
  std::mt19937_64 rng(19);
  RolloutGroup g = random_group(rng, 6, 5, 0.001);
  for (double& r : g.rewards) r = std::round(r * 8) / 8;  // dyadic rewards
  RolloutGroup s = g;
  for (double& r : s.rewards) r += 2.0;
  EXPECT_EQ(gspo_objective(g).objective, gspo_objective(s).objective);
  EXPECT_EQ(gspo_gradient(g), gspo_gradient(s));
  EXPECT_EQ(grpo_objective(g).objective, grpo_objective(s).objective);
}

TEST(Objective, ClipHigherMonotone) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    RolloutGroup g = random_group(rng, 4, 4, 0.01);
    g.rewards = {1.0, 0.0, 0.0, 0.0};  // a single positive advantage
    double last = -1e300;
    for (double eh : {0.0003, 0.001, 0.01, 0.1}) {
      double j = gspo_objective(g, {.eps_low = 0.0003, .eps_high = eh, .adv_epsilon = 1e-6}).objective;
      EXPECT_GE(j, last - 1e-15);
      last = j;
    }
  }
}

TEST(Group, Validation) {
  RolloutGroup one = identical({1}, {2});
  EXPECT_THROW(gspo_objective(one), InvalidArgument);
  RolloutGroup empty = identical({1, 0}, {2, 0});
  EXPECT_THROW(seq_mean_logratio(empty, 1), EmptyRollout);
  EXPECT_THROW(gspo_objective(empty), EmptyRollout);
  RolloutGroup ragged = identical({1, 0}, {2, 2});
  ragged.logp_new[0].push_back(-1);
  EXPECT_THROW(gspo_objective(ragged), InvalidArgument);
  RolloutGroup positive = identical({1, 0}, {2, 2});
  positive.logp_new[0][0] = 0.1;
  EXPECT_THROW(gspo_objective(positive), InvalidArgument);
  EXPECT_THROW((ClipConfig{.eps_low = 0.5, .eps_high = 0.1}.validate()), InvalidArgument);
}

TEST(Entropy, Examples) {
  EXPECT_EQ(mean_token_entropy({{1, 0, 0}, {0, 1}}), 0.0);
  EXPECT_NEAR(mean_token_entropy({{0.25, 0.25, 0.25, 0.25}}), std::log(4.0), 1e-15);
  double h1 = -(0.5 * std::log(0.5)) * 2;
  EXPECT_NEAR(mean_token_entropy({{0.5, 0.5}, {1.0}}), h1 / 2, 1e-15);
  EXPECT_THROW(mean_token_entropy({{0.5, 0.4}}), InvalidArgument);
}
