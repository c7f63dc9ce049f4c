#pragma once

#include <chrono>
#include <semaphore>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace rewardroute {

// Chat-completion endpoint settings. Only plain http:// endpoints are
// supported; put a local proxy in front of TLS-only services.
struct ClientConfig {
  std::string endpoint;  // e.g. http://127.0.0.1:8000/v1/chat/completions
  std::string model;
  std::string api_key;   // sent as a bearer token when non-empty
  double temperature = 0.7;
  int max_tokens = 1024;
  int retries = 2;
  int max_concurrency = 8;
  std::chrono::milliseconds timeout{60000};
  std::chrono::milliseconds backoff{250};  // doubled after every failed attempt
  // Merged into the request body as-is.
  nlohmann::json extra_body = {{"chat_template_kwargs", {{"enable_thinking", false}}}};

  // Throws InvalidArgument.
  void validate() const;

  // Overrides endpoint, model and api_key from REWARDROUTE_JUDGE_ENDPOINT,
  // REWARDROUTE_JUDGE_MODEL and REWARDROUTE_JUDGE_API_KEY when set.
  void apply_environment();
};

// Request body for a single user turn.
nlohmann::json chat_request_body(std::string_view prompt, const ClientConfig& cfg);

// choices[0].message.content of a chat-completion response. Throws
// TransportFailure when the body has another shape.
std::string chat_response_text(const nlohmann::json& body);

// Thread-safe client; at most cfg.max_concurrency requests are in flight.
// Transport failures, timeouts, 429 and 5xx replies are retried with
// exponential backoff; the last error is rethrown as Timeout, RateLimited or
// TransportFailure with the sample id in its message.
class LlmClient {
 public:
  explicit LlmClient(ClientConfig cfg);

  std::string complete(std::string_view prompt, std::string_view sample_id = {});

  const ClientConfig& config() const { return cfg_; }

 private:
  std::string attempt(std::string_view prompt, std::string_view sample_id);

  ClientConfig cfg_;
  std::string host_;
  int port_ = 80;
  std::string path_;
  std::counting_semaphore<> slots_;
};

// One-off request without a shared concurrency cap.
std::string call_llm(std::string_view prompt, const ClientConfig& cfg);

}  // namespace rewardroute
