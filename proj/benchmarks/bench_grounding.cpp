#include <benchmark/benchmark.h>

#include <random>

#include "rewardroute/assignment.hpp"
#include "rewardroute/verifiers.hpp"

using namespace rewardroute;

namespace {

std::vector<BBox> boxes(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> pos(0, 900), size(10, 100);
  std::vector<BBox> out;
  for (std::size_t i = 0; i < n; ++i) {
    double x = pos(rng), y = pos(rng);
    out.push_back(make_box(x, y, x + size(rng), y + size(rng), CoordinateSpace::kNormalized1000));
  }
  return out;
}

void BM_VerifyGrounding(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto n = static_cast<std::size_t>(state.range(0));
  auto preds = boxes(rng, n), golds = boxes(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(verify_grounding(preds, golds));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VerifyGrounding)->RangeMultiplier(2)->Range(1, 64)->Complexity();

void BM_Assignment(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> w(0, 1);
  auto n = static_cast<std::size_t>(state.range(0));
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = w(rng);
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_assignment(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assignment)->RangeMultiplier(2)->Range(2, 128)->Complexity(benchmark::oNCubed);

}  // namespace
