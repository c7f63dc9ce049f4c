#include "rewardroute/llm_client.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "rewardroute/errors.hpp"

namespace rewardroute {

namespace {

struct Target {
  std::string host;
  int port = 80;
  std::string path;
};

// 4xx replies other than 429 are not worth repeating.
class PermanentFailure : public TransportFailure {
 public:
  using TransportFailure::TransportFailure;
};

std::string with_id(std::string_view sample_id, const std::string& message) {
  if (sample_id.empty()) return message;
  return "sample '" + std::string(sample_id) + "': " + message;
}

Target parse_endpoint(const std::string& url) {
  Target t;
  constexpr std::string_view kScheme = "http://";
  if (url.rfind("https://", 0) == 0) {
    throw InvalidArgument("https endpoints are not supported: " + url);
  }
  if (url.rfind(kScheme, 0) != 0) throw InvalidArgument("endpoint must start with http://: " + url);
  std::string rest = url.substr(kScheme.size());
  std::size_t slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  t.path = slash == std::string::npos ? "/v1/chat/completions" : rest.substr(slash);
  std::size_t colon = authority.rfind(':');
  if (colon != std::string::npos) {
    t.host = authority.substr(0, colon);
    try {
      t.port = std::stoi(authority.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidArgument("bad port in endpoint: " + url);
    }
  } else {
    t.host = authority;
  }
  if (t.host.empty()) throw InvalidArgument("missing host in endpoint: " + url);
  return t;
}

}  // namespace

void ClientConfig::validate() const {
  if (endpoint.empty()) throw InvalidArgument("judge endpoint is not configured");
  if (retries < 0) throw InvalidArgument("retries must be >= 0");
  if (max_concurrency < 1) throw InvalidArgument("max_concurrency must be >= 1");
  if (max_tokens < 1) throw InvalidArgument("max_tokens must be >= 1");
  if (timeout.count() <= 0) throw InvalidArgument("timeout must be positive");
  if (!extra_body.is_object()) throw InvalidArgument("extra_body must be a JSON object");
  parse_endpoint(endpoint);
}

void ClientConfig::apply_environment() {
  if (const char* v = std::getenv("REWARDROUTE_JUDGE_ENDPOINT")) endpoint = v;
  if (const char* v = std::getenv("REWARDROUTE_JUDGE_MODEL")) model = v;
  if (const char* v = std::getenv("REWARDROUTE_JUDGE_API_KEY")) api_key = v;
}


nlohmann::json chat_request_body(std::string_view prompt, const ClientConfig& cfg) {
  nlohmann::json body = {
      {"model", cfg.model},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", cfg.temperature},
      {"max_tokens", cfg.max_tokens},
  };
  body.update(cfg.extra_body);
  return body;
}

std::string chat_response_text(const nlohmann::json& body) {
  try {
    const auto& content = body.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
  } catch (const nlohmann::json::exception&) {
  }
  throw TransportFailure("response is not a chat completion");
}

LlmClient::LlmClient(ClientConfig cfg)
    : cfg_(std::move(cfg)), slots_(cfg_.max_concurrency) {
  cfg_.validate();
  Target t = parse_endpoint(cfg_.endpoint);
  host_ = t.host;
  port_ = t.port;
  path_ = t.path;
}

std::string LlmClient::attempt(std::string_view prompt, std::string_view sample_id) {
  httplib::Client client(host_, port_);
  auto seconds = std::chrono::duration_cast<std::chrono::microseconds>(cfg_.timeout);
  client.set_connection_timeout(seconds);
  client.set_read_timeout(seconds);
  client.set_write_timeout(seconds);
  httplib::Headers headers;
  if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);

  auto started = std::chrono::steady_clock::now();
  auto res = client.Post(path_, headers, chat_request_body(prompt, cfg_).dump(), "application/json");
  if (!res) {
    auto elapsed = std::chrono::steady_clock::now() - started;
    httplib::Error err = res.error();
    if (err == httplib::Error::ConnectionTimeout ||
        (err == httplib::Error::Read && elapsed >= cfg_.timeout)) {
      throw Timeout(with_id(sample_id, "no reply within " + std::to_string(cfg_.timeout.count()) + " ms"));
    }
    throw TransportFailure(with_id(sample_id, "request failed: " + httplib::to_string(err)));
  }
  if (res->status == 429) throw RateLimited(with_id(sample_id, "endpoint returned 429"));
  if (res->status >= 400 && res->status < 500) {
    throw PermanentFailure(with_id(sample_id, "endpoint returned HTTP " + std::to_string(res->status)));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportFailure(with_id(sample_id, "endpoint returned HTTP " + std::to_string(res->status)));
  }
  nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded()) throw TransportFailure(with_id(sample_id, "response body is not JSON"));
  try {
    return chat_response_text(body);
  } catch (const TransportFailure& e) {
    throw TransportFailure(with_id(sample_id, e.what()));
  }
}

std::string LlmClient::complete(std::string_view prompt, std::string_view sample_id) {
  slots_.acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{slots_};

  auto delay = cfg_.backoff;
  for (int tries = 0;; ++tries) {
    try {
      return attempt(prompt, sample_id);
    } catch (const PermanentFailure&) {
      throw;
    } catch (const Error&) {
      if (tries >= cfg_.retries) throw;
    }
    std::this_thread::sleep_for(delay);
    delay *= 2;
  }
}

std::string call_llm(std::string_view prompt, const ClientConfig& cfg) {
  ClientConfig single = cfg;
  single.max_concurrency = 1;
  return LlmClient(std::move(single)).complete(prompt);
}

}  // namespace rewardroute
