#include "rewardroute/service.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <mutex>

#include <httplib.h>

#include "rewardroute/errors.hpp"
#include "rewardroute/records.hpp"

#ifndef REWARDROUTE_VERSION
#define REWARDROUTE_VERSION "0.0.0"
#endif

namespace rewardroute {

using nlohmann::json;

struct RewardService::Http {
  httplib::Server server;
};

namespace {

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RewardService::Reply error_reply(int status, std::string code, std::string message,
                                 std::optional<std::string> sample_id = std::nullopt) {
  return {status, to_json(ErrorInfo{std::move(code), std::move(message), std::move(sample_id)})};
}

std::string_view gap_name(GapPolicy gap) {
  switch (gap) {
    case GapPolicy::kStrict: return "strict";
    case GapPolicy::kAnyText: return "any";
    default: return "whitespace";
  }
}

}  // namespace

std::string_view library_version() { return REWARDROUTE_VERSION; }

ServiceConfig service_config_from_json(const json& j) {
  ServiceConfig cfg;
  if (j.is_null()) return cfg;
  if (!j.is_object()) throw InvalidPayload("config must be a JSON object");
  if (j.contains("reward")) cfg.scoring.reward = reward_config_from_json(j["reward"]);
  if (j.contains("coordinate_space")) {
    auto space = parse_coordinate_space(j["coordinate_space"].get<std::string>());
    if (!space) throw InvalidPayload("unknown coordinate_space");
    cfg.scoring.coordinate_space = *space;
  }
  if (j.contains("gap")) cfg.scoring.parse.gap = parse_gap_policy(j["gap"].get<std::string>());
  cfg.workers = j.value("workers", cfg.workers);
  cfg.http_threads = j.value("http_threads", cfg.http_threads);
  if (cfg.http_threads < 1) throw InvalidPayload("http_threads must be >= 1");
  cfg.log_requests = j.value("log_requests", cfg.log_requests);
  if (j.contains("judge") && !j["judge"].is_null()) cfg.judge = client_config_from_json(j["judge"]);
  return cfg;
}

std::string config_fingerprint(const ServiceConfig& cfg) {
  json canonical = {
      {"reward", to_json(cfg.scoring.reward)},
      {"coordinate_space", to_string(cfg.scoring.coordinate_space)},
      {"gap", gap_name(cfg.scoring.parse.gap)},
  };
  if (cfg.judge) {
    canonical["judge"] = {{"endpoint", cfg.judge->endpoint},
                          {"model", cfg.judge->model},
                          {"temperature", cfg.judge->temperature},
                          {"max_tokens", cfg.judge->max_tokens},
                          {"retries", cfg.judge->retries},
                          {"extra_body", cfg.judge->extra_body}};
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(canonical.dump()));
  return buf;
}

RewardService::RewardService(ServiceConfig cfg, std::shared_ptr<Judge> judge)
    : cfg_(std::move(cfg)), judge_(std::move(judge)), http_(std::make_unique<Http>()) {
  cfg_.scoring.reward.validate();
  if (!judge_ && cfg_.judge) judge_ = std::make_shared<LlmJudge>(*cfg_.judge);
  fingerprint_ = config_fingerprint(cfg_);
}

RewardService::~RewardService() { stop(); }

RewardService::Reply RewardService::handle(std::string_view method, std::string_view path,
                                           std::string_view body) const {
  auto parse_body = [&]() -> std::optional<json> {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    return j;
  };
  if (path == "/v1/health" && method == "GET") return health();
  if (path == "/v1/routes" && method == "GET") return routes();
  if (path == "/v1/score" && method == "POST") {
    auto j = parse_body();
    if (!j) return error_reply(400, "BatchRejected", "request body must be a JSON object");
    return score(*j);
  }
  if (path == "/v1/mixture/plan" && method == "POST") {
    auto j = parse_body();
    if (!j) return error_reply(400, "InvalidPayload", "request body must be a JSON object");
    return plan(*j);
  }
  return error_reply(404, "NotFound", std::string(method) + " " + std::string(path) + " is not served");
}

RewardService::Reply RewardService::score(const json& request) const {
  if (!request.contains("samples") || !request["samples"].is_array()) {
    return error_reply(400, "BatchRejected", "'samples' must be an array");
  }
  BatchOptions options;
  options.scoring = cfg_.scoring;
  options.judge = judge_.get();
  options.workers = cfg_.workers;
  if (request.contains("config")) {
    try {
      const json& overrides = request["config"];
      options.scoring.reward = reward_config_from_json(
          overrides.is_object() && overrides.contains("reward") ? overrides["reward"] : overrides,
          cfg_.scoring.reward);
    } catch (const Error& e) {
      return error_reply(400, "BatchRejected", e.what());
    }
  }

  std::vector<ScoredSample> samples;
  const json& list = request["samples"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::optional<std::string> id;
    if (list[i].is_object() && list[i].contains("id") && list[i]["id"].is_string()) {
      id = list[i]["id"].get<std::string>();
    }
    try {
      samples.push_back(sample_from_json(list[i], cfg_.scoring.coordinate_space));
    } catch (const UnknownRoute& e) {
      return error_reply(422, e.code(), e.what(), id);
    } catch (const Error& e) {
      return error_reply(400, "BatchRejected", "sample " + std::to_string(i) + ": " + e.what(), id);
    }
  }
  try {
    std::vector<ScoreResult> results = score_batch(samples, options);
    json out = json::array();
    for (const ScoreResult& r : results) out.push_back(to_json(r));
    return {200, {{"results", out}}};
  } catch (const BatchRejected& e) {
    return error_reply(400, e.code(), e.what());
  } catch (const Error& e) {
    return error_reply(400, "BatchRejected", e.what());
  }
}

RewardService::Reply RewardService::plan(const json& request) const {
  try {
    if (!request.contains("stats") || !request["stats"].is_array()) {
      throw InvalidPayload("'stats' must be an array of dataset statistics");
    }
    std::vector<DatasetStats> stats;
    for (const auto& s : request["stats"]) stats.push_back(dataset_stats_from_json(s));
    SchemeChoice choice = parse_scheme_choice(request.value("scheme", std::string("uniform")));
    double spread = request.value("spread", kDefaultSpread);
    return {200, to_json(plan_mixture(stats, choice.scheme, spread, choice.dropped))};
  } catch (const DegenerateStats& e) {
    return error_reply(422, e.code(), e.what());
  } catch (const Error& e) {
    return error_reply(400, e.code(), e.what());
  } catch (const json::exception& e) {
    return error_reply(400, "InvalidPayload", e.what());
  }
}

RewardService::Reply RewardService::health() const {
  return {200, {{"status", "ok"},
                {"version", std::string(library_version())},
                {"config_fingerprint", fingerprint_},
                {"judge_configured", judge_ != nullptr}}};
}

RewardService::Reply RewardService::routes() const {
  json names = json::array();
  for (TaskRoute r : all_routes()) names.push_back(to_string(r));
  json aliases = json::object();
  for (const auto& [alias, r] : route_aliases()) aliases[std::string(alias)] = to_string(r);
  return {200, {{"routes", names}, {"aliases", aliases}}};
}

int RewardService::bind(const std::string& host, int port) {
  httplib::Server& srv = http_->server;
  const int threads = cfg_.http_threads;
  srv.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };

  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    auto started = std::chrono::steady_clock::now();
    Reply reply = handle(req.method, req.path, req.body);
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json");
    if (cfg_.log_requests) {
      auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - started);
      static std::mutex log_mutex;
      std::lock_guard lock(log_mutex);
      std::cout << json{{"method", req.method}, {"path", req.path}, {"status", reply.status},
                        {"elapsed_ms", static_cast<double>(us.count()) / 1000.0}}.dump()
                << std::endl;
    }
  };
  srv.Get(".*", dispatch);
  srv.Post(".*", dispatch);
  srv.Put(".*", dispatch);
  srv.Delete(".*", dispatch);

  int bound = port == 0 ? srv.bind_to_any_port(host) : (srv.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw TransportFailure("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

int RewardService::start(const std::string& host, int port) {
  int bound = bind(host, port);
  worker_ = std::thread([this] { http_->server.listen_after_bind(); });
  http_->server.wait_until_ready();
  return bound;
}

void RewardService::run(const std::string& host, int port) {
  bind(host, port);
  http_->server.listen_after_bind();
}

void RewardService::stop() {
  if (http_) http_->server.stop();
  if (worker_.joinable() && worker_.get_id() != std::this_thread::get_id()) worker_.join();
}

}  // namespace rewardroute
