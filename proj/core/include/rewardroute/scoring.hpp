#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rewardroute/routing.hpp"

namespace rewardroute {

// Structured error, also the service's error envelope.
struct ErrorInfo {
  std::string code;
  std::string message;
  std::optional<std::string> sample_id;

  bool operator==(const ErrorInfo&) const = default;
};

// Exactly one of breakdown / error is set.
struct ScoreResult {
  std::string id;
  std::optional<RewardBreakdown> breakdown;
  std::optional<ErrorInfo> error;

  bool operator==(const ScoreResult&) const = default;
};

struct BatchOptions {
  ScoringOptions scoring;
  Judge* judge = nullptr;  // not owned
  int workers = 0;         // deterministic pool size; 0 picks hardware concurrency
};

// Scores a batch; results are in input order. Deterministic routes run on a
// worker pool, judge-backed samples on a separate set of threads capped by
// the judge's concurrency, so slow judge calls never hold up cheap
// verifiers. A failing sample yields an error result and never aborts the
// batch. Throws BatchRejected for an empty batch or duplicate ids.
std::vector<ScoreResult> score_batch(const std::vector<ScoredSample>& samples,
                                     const BatchOptions& options = {});

}  // namespace rewardroute
