#include "rewardroute/scoring.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

#include "rewardroute/errors.hpp"

namespace rewardroute {
namespace {

ScoreResult score_one(const ScoredSample& sample, const BatchOptions& options) {
  ScoreResult r;
  r.id = sample.id;
  try {
    r.breakdown = score_sample(sample, options.judge, options.scoring);
  } catch (const Error& e) {
    r.error = ErrorInfo{e.code(), e.what(), sample.id};
  } catch (const std::exception& e) {
    r.error = ErrorInfo{"InternalError", e.what(), sample.id};
  }
  return r;
}

// Runs `indices` on `threads` threads, each pulling the next index.
void run_pool(const std::vector<std::size_t>& indices, int threads,
              const std::vector<ScoredSample>& samples, const BatchOptions& options,
              std::vector<ScoreResult>& out, std::vector<std::jthread>& pool) {
  if (indices.empty()) return;
  auto next = std::make_shared<std::atomic<std::size_t>>(0);
  int n = std::clamp<int>(threads, 1, static_cast<int>(indices.size()));
  for (int t = 0; t < n; ++t) {
    pool.emplace_back([&, next] {
      for (std::size_t k = (*next)++; k < indices.size(); k = (*next)++) {
        out[indices[k]] = score_one(samples[indices[k]], options);
      }
    });
  }
}

}  // namespace

std::vector<ScoreResult> score_batch(const std::vector<ScoredSample>& samples,
                                     const BatchOptions& options) {
  if (samples.empty()) throw BatchRejected("batch is empty");
  std::unordered_set<std::string> seen;
  for (const ScoredSample& s : samples) {
    if (!seen.insert(s.id).second) throw BatchRejected("duplicate sample id '" + s.id + "'");
  }
  options.scoring.reward.validate();

  std::vector<std::size_t> cheap;
  std::vector<std::size_t> judged;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    (needs_judge(samples[i]) && options.judge ? judged : cheap).push_back(i);
  }

  int workers = options.workers > 0 ? options.workers
                                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int judge_threads = options.judge ? options.judge->max_concurrency() : 1;

  std::vector<ScoreResult> out(samples.size());
  {
    std::vector<std::jthread> pool;
    run_pool(judged, judge_threads, samples, options, out, pool);
    run_pool(cheap, workers, samples, options, out, pool);
  }
  return out;
}

}  // namespace rewardroute
