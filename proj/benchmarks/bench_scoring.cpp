#include <benchmark/benchmark.h>

#include <fstream>

#include "rewardroute/canonicalizer.hpp"
#include "rewardroute/records.hpp"
#include "rewardroute/scoring.hpp"

using namespace rewardroute;

namespace {

std::vector<ScoredSample> fixture(std::size_t copies) {
  std::vector<nlohmann::json> lines;
  std::ifstream in(std::string(REWARDROUTE_FIXTURES_DIR) + "/batch.jsonl");
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(nlohmann::json::parse(line));
  }
  std::vector<ScoredSample> out;
  for (std::size_t c = 0; c < copies; ++c) {
    for (nlohmann::json j : lines) {
      j["id"] = j["id"].get<std::string>() + "-" + std::to_string(c);
      out.push_back(sample_from_json(j));
    }
  }
  return out;
}

void BM_ScoreBatch(benchmark::State& state) {
  auto batch = fixture(static_cast<std::size_t>(state.range(0)));
  BatchOptions opts;
  opts.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(score_batch(batch, opts));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * batch.size()));
}
BENCHMARK(BM_ScoreBatch)->Arg(1)->Arg(16)->Arg(64)->UseRealTime();

void BM_ParseSample(benchmark::State& state) {
  nlohmann::json j = {{"id", "g"},
                      {"route", "grounding"},
                      {"ground_truth", {{10, 20, 300, 400}, {500, 500, 700, 650}}},
                      {"response", R"(<think>two objects</think><answer>\boxed{[[10,20,300,400],[500,500,700,650]]}</answer>)"},
                      {"token_count", 512}};
  for (auto _ : state) benchmark::DoNotOptimize(sample_from_json(j));
}
BENCHMARK(BM_ParseSample);

void BM_Canonicalize(benchmark::State& state) {
  const char* inputs[] = {"$327,000", "Option (C)", "8/3", "60°", "Coronal", "AC = 4, BD = 4", "1.70 million"};
  for (auto _ : state) {
    for (const char* raw : inputs) benchmark::DoNotOptimize(canonicalize(raw));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * std::size(inputs)));
}
BENCHMARK(BM_Canonicalize);

}  // namespace
