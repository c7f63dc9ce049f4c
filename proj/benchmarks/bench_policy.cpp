#include <benchmark/benchmark.h>

#include <random>

#include "rewardroute/policy.hpp"

using namespace rewardroute;

namespace {

RolloutGroup group(std::size_t g, std::size_t len) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lp(-3.0, -0.05), d(-1e-4, 1e-4), r(0, 1);
  RolloutGroup grp;
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<double> o(len), n(len);
    for (std::size_t t = 0; t < len; ++t) {
      o[t] = lp(rng);
      n[t] = std::min(0.0, o[t] + d(rng));
    }
    grp.rewards.push_back(r(rng));
    grp.logp_old.push_back(std::move(o));
    grp.logp_new.push_back(std::move(n));
  }
  return grp;
}

void BM_GspoObjective(benchmark::State& state) {
  RolloutGroup g = group(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gspo_objective(g));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 8 * state.range(0)));
}
BENCHMARK(BM_GspoObjective)->Arg(256)->Arg(4096);

void BM_GspoGradient(benchmark::State& state) {
  RolloutGroup g = group(8, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gspo_gradient(g));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 8 * state.range(0)));
}
BENCHMARK(BM_GspoGradient)->Arg(256)->Arg(4096);

}  // namespace
