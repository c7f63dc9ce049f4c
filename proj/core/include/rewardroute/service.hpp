#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include <nlohmann/json.hpp>

#include "rewardroute/judge.hpp"
#include "rewardroute/llm_client.hpp"
#include "rewardroute/scoring.hpp"

namespace rewardroute {

std::string_view library_version();

struct ServiceConfig {
  ScoringOptions scoring;
  int workers = 0;                   // deterministic scoring pool; 0 = hardware
  int http_threads = 8;              // concurrent requests
  std::optional<ClientConfig> judge; // builds an LlmJudge when set
  bool log_requests = false;         // one JSON line per request on stdout
};

// {"reward": {...}, "coordinate_space", "gap", "workers", "http_threads",
//  "judge": {...}, "log_requests"}. Missing keys keep defaults.
ServiceConfig service_config_from_json(const nlohmann::json& j);

// FNV-1a over the canonical JSON of the effective configuration, as 16 hex
// digits. Secrets are excluded.
std::string config_fingerprint(const ServiceConfig& cfg);

// HTTP front end for batch scoring and mixture planning.
//
//   POST /v1/score          {"samples": [...], "config"?: {reward overrides}}
//   POST /v1/mixture/plan   {"stats": [...], "scheme": "...", "spread"?: 1.6}
//   GET  /v1/health
//   GET  /v1/routes
//
// Errors use {"code", "message", "sample_id"?}: 400 for malformed requests,
// 422 for unknown routes and degenerate statistics, 404 for unknown paths.
class RewardService {
 public:
  struct Reply {
    int status = 200;
    nlohmann::json body;
  };

  // `judge` overrides cfg.judge; neither is required.
  explicit RewardService(ServiceConfig cfg, std::shared_ptr<Judge> judge = nullptr);
  ~RewardService();

  RewardService(const RewardService&) = delete;
  RewardService& operator=(const RewardService&) = delete;

  // Transport-free dispatch, used by the HTTP layer and tests.
  Reply handle(std::string_view method, std::string_view path, std::string_view body) const;

  // Binds and serves on a background thread; port 0 picks a free port.
  // Returns the bound port. Throws TransportFailure if binding fails.
  int start(const std::string& host, int port);
  // Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

  const ServiceConfig& config() const { return cfg_; }

 private:
  struct Http;

  int bind(const std::string& host, int port);
  Reply score(const nlohmann::json& request) const;
  Reply plan(const nlohmann::json& request) const;
  Reply health() const;
  Reply routes() const;

  ServiceConfig cfg_;
  std::shared_ptr<Judge> judge_;
  std::string fingerprint_;
  std::unique_ptr<Http> http_;
  std::thread worker_;
};

}  // namespace rewardroute
