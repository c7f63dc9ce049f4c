#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rewardroute/errors.hpp"
#include "rewardroute/reward.hpp"

using namespace rewardroute;

TEST(Overlong, RampPoints) {
  RewardConfig cfg;
  EXPECT_EQ(overlong_penalty(0, cfg), 0.0);
  EXPECT_EQ(overlong_penalty(14336, cfg), 0.0);
  EXPECT_FALSE(std::signbit(overlong_penalty(14336, cfg)));
  EXPECT_EQ(overlong_penalty(15360, cfg), -0.5);
  EXPECT_EQ(overlong_penalty(16384, cfg), -1.0);
  EXPECT_EQ(overlong_penalty(14337, cfg), -1.0 / 2048);
}

TEST(Overlong, SlopeAndScale) {
  RewardConfig cfg{.alpha = 0.2, .buffer = 100, .lambda = 2.0, .max_tokens = 1000, .blend_w = 0.5};
  for (std::uint64_t n = 900; n < 1000; ++n) {
    EXPECT_NEAR(overlong_penalty(n + 1, cfg) - overlong_penalty(n, cfg), -2.0 / 100, 1e-12);
  }
  EXPECT_EQ(overlong_penalty(1000, cfg), -2.0);
  // Beyond L_max the ramp keeps going.
  EXPECT_EQ(overlong_penalty(1050, cfg), -3.0);
}

TEST(Overlong, NonIncreasing) {
  RewardConfig cfg;
  double last = 0.0;
  for (std::uint64_t n = 14000; n <= 16384; n += 7) {
    double p = overlong_penalty(n, cfg);
    EXPECT_LE(p, last);
    last = p;
  }
}

TEST(Blend, Examples) {
  RewardConfig cfg;
  EXPECT_EQ(blend_if_judge(1, 0.5, cfg), 0.75);
  EXPECT_EQ(blend_if_judge(0, 0, cfg), 0.0);
  EXPECT_EQ(blend_if_judge(1, 1, cfg), 1.0);
  cfg.blend_w = 1.0;
  EXPECT_EQ(blend_if_judge(0.3, 0.9, cfg), 0.3);
}

TEST(Total, Examples) {
  RewardConfig cfg;
  EXPECT_EQ(total_reward(1, 1, 100, cfg).total, 1.0);
  EXPECT_DOUBLE_EQ(total_reward(1, 0.5, 100, cfg).total, 0.9);
  EXPECT_EQ(total_reward(0, 0, 16384, cfg).total, -1.0);
  RewardBreakdown b = total_reward(0.5, 1, 15360, cfg);
  EXPECT_EQ(b.r_acc, 0.5);
  EXPECT_EQ(b.r_fmt, 1.0);
  EXPECT_EQ(b.r_overlong, -0.5);
}

TEST(Total, AlphaExtremes) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 100; ++i) {
    double acc = u(rng), fmt = u(rng);
    EXPECT_EQ(total_reward(acc, fmt, 0, {.alpha = 0.0}).total, acc);
    EXPECT_EQ(total_reward(acc, fmt, 0, {.alpha = 1.0}).total, fmt);
  }
}

TEST(Total, Monotone) {
  RewardConfig cfg;
  EXPECT_LE(total_reward(0.2, 0.5, 15000, cfg).total, total_reward(0.3, 0.5, 15000, cfg).total);
  EXPECT_LE(total_reward(0.2, 0.5, 15000, cfg).total, total_reward(0.2, 1.0, 15000, cfg).total);
  EXPECT_GE(total_reward(0.2, 0.5, 15000, cfg).total, total_reward(0.2, 0.5, 15001, cfg).total);
}

TEST(Config, Validation) {
  EXPECT_NO_THROW(RewardConfig{}.validate());
  EXPECT_THROW((RewardConfig{.alpha = 1.5}.validate()), InvalidArgument);
  EXPECT_THROW((RewardConfig{.alpha = 0.2, .buffer = 0}.validate()), InvalidArgument);
  EXPECT_THROW((RewardConfig{.alpha = 0.2, .buffer = 4096, .lambda = 1, .max_tokens = 2048}.validate()),
               InvalidArgument);
  EXPECT_THROW((RewardConfig{.alpha = 0.2, .buffer = 2048, .lambda = 1, .max_tokens = 16384, .blend_w = -0.1}
                    .validate()),
               InvalidArgument);
}
