// rewardroute: batch scoring, canonicalization, filtering decisions, mixture
// planning, policy-math demos and the HTTP service, all driven from files.
//
// Exit codes: 0 success, 1 some records failed, 2 invalid invocation.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rewardroute/canonicalizer.hpp"
#include "rewardroute/errors.hpp"
#include "rewardroute/judge.hpp"
#include "rewardroute/mixture.hpp"
#include "rewardroute/policy.hpp"
#include "rewardroute/records.hpp"
#include "rewardroute/scoring.hpp"
#include "rewardroute/service.hpp"

namespace rr = rewardroute;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kUsage = 2;

// Invalid invocation: bad flags, unreadable files.
struct UsageError : std::runtime_error {
  std::string code;
  UsageError(std::string c, const std::string& m) : std::runtime_error(m), code(std::move(c)) {}
};

void report_error(const std::string& code, const std::string& message,
                  std::optional<std::size_t> line = std::nullopt) {
  json e = {{"code", code}, {"message", message}};
  if (line) e["line"] = *line;
  std::cerr << json{{"error", e}}.dump() << "\n";
}

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("InvalidArgument", "cannot read " + path);
  std::vector<Line> out;
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back({n, text});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("InvalidArgument", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw UsageError("InvalidArgument", "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string input;
  std::string output;
  rr::RewardConfig reward;
  std::string coordinate_space = "normalized-0-1000";
  std::string gap = "whitespace";
  int workers = 0;
  std::string judge_endpoint;
  std::string judge_model;
  int judge_retries = 2;
  int judge_concurrency = 8;
  int judge_timeout_ms = 60000;
};

json histogram(const std::vector<double>& totals) {
  // Totals clipped to [-1, 1] in eight equal bins.
  constexpr int kBins = 8;
  std::vector<int> counts(kBins, 0);
  for (double t : totals) {
    double c = std::clamp(t, -1.0, 1.0);
    int bin = std::min(kBins - 1, static_cast<int>(std::floor((c + 1.0) / 2.0 * kBins)));
    ++counts[bin];
  }
  json bins = json::array();
  for (int b = 0; b < kBins; ++b) {
    double lo = -1.0 + 2.0 * b / kBins;
    bins.push_back({{"lo", lo}, {"hi", lo + 2.0 / kBins}, {"count", counts[b]}});
  }
  return bins;
}

int run_score(const ScoreArgs& args) {
  rr::BatchOptions options;
  options.scoring.reward = args.reward;
  try {
    args.reward.validate();
  } catch (const rr::Error& e) {
    throw UsageError(e.code(), e.what());
  }
  auto space = rr::parse_coordinate_space(args.coordinate_space);
  if (!space) throw UsageError("InvalidArgument", "unknown coordinate space " + args.coordinate_space);
  options.scoring.coordinate_space = *space;
  try {
    options.scoring.parse.gap = rr::parse_gap_policy(args.gap);
  } catch (const rr::Error& e) {
    throw UsageError(e.code(), e.what());
  }
  options.workers = args.workers;

  std::shared_ptr<rr::Judge> judge;
  rr::ClientConfig client;
  client.apply_environment();
  if (!args.judge_endpoint.empty()) client.endpoint = args.judge_endpoint;
  if (!args.judge_model.empty()) client.model = args.judge_model;
  client.retries = args.judge_retries;
  client.max_concurrency = args.judge_concurrency;
  client.timeout = std::chrono::milliseconds(args.judge_timeout_ms);
  if (!client.endpoint.empty()) {
    try {
      judge = std::make_shared<rr::LlmJudge>(client);
    } catch (const rr::Error& e) {
      throw UsageError(e.code(), e.what());
    }
    options.judge = judge.get();
  }

  std::vector<rr::ScoredSample> samples;
  std::set<std::string> ids;
  bool partial = false;
  for (const Line& line : read_lines(args.input)) {
    try {
      json j = json::parse(line.text);
      rr::ScoredSample s = rr::sample_from_json(j, options.scoring.coordinate_space);
      if (!ids.insert(s.id).second) throw rr::InvalidPayload("duplicate sample id '" + s.id + "'");
      samples.push_back(std::move(s));
    } catch (const rr::Error& e) {
      report_error(e.code(), e.what(), line.number);
      partial = true;
    } catch (const json::exception& e) {
      report_error("InvalidPayload", e.what(), line.number);
      partial = true;
    }
  }

  Output out(args.output);
  json summary = {{"records", samples.size()}, {"scored", 0}, {"errored", 0}};
  if (!samples.empty()) {
    std::vector<rr::ScoreResult> results = rr::score_batch(samples, options);
    double acc = 0, fmt = 0, total = 0;
    std::vector<double> totals;
    int errored = 0;
    for (const rr::ScoreResult& r : results) {
      out.stream() << rr::to_json(r).dump() << "\n";
      if (r.error) {
        ++errored;
        continue;
      }
      acc += r.breakdown->r_acc;
      fmt += r.breakdown->r_fmt;
      total += r.breakdown->total;
      totals.push_back(r.breakdown->total);
    }
    const double n = static_cast<double>(totals.size());
    summary["scored"] = totals.size();
    summary["errored"] = errored;
    summary["mean_r_acc"] = totals.empty() ? 0.0 : acc / n;
    summary["mean_r_fmt"] = totals.empty() ? 0.0 : fmt / n;
    summary["mean_total"] = totals.empty() ? 0.0 : total / n;
    summary["total_histogram"] = histogram(totals);
    if (errored > 0) partial = true;
  }
  std::cout << json{{"summary", summary}}.dump() << "\n";
  return partial ? kPartial : kOk;
}

// ---------------------------------------------------------------------------
// canonicalize

int run_canonicalize(const std::string& input, const std::string& output) {
  Output out(output);
  std::map<std::string, int> types;
  std::map<std::string, int> reasons;
  bool partial = false;
  for (const Line& line : read_lines(input)) {
    try {
      json j = json::parse(line.text);
      rr::AnswerContext ctx;
      std::string raw;
      json record = json::object();
      if (j.is_string()) {
        raw = j.get<std::string>();
      } else if (j.is_object() && j.contains("answer") && j["answer"].is_string()) {
        raw = j["answer"].get<std::string>();
        if (j.contains("id")) record["id"] = j["id"];
        if (j.contains("expected_dimension")) ctx.expected_dimension = j["expected_dimension"].get<std::string>();
        if (j.contains("valid_range")) {
          auto range = j["valid_range"].get<std::vector<double>>();
          if (range.size() != 2) throw rr::InvalidPayload("valid_range is [lo, hi]");
          ctx.valid_range = std::pair{range[0], range[1]};
        }
      } else {
        throw rr::InvalidPayload("expected a JSON string or an object with 'answer'");
      }
      rr::CanonicalAnswer a = rr::canonicalize(raw, ctx);
      record["raw"] = raw;
      record.update(rr::to_json(a));
      out.stream() << record.dump() << "\n";
      ++types[std::string(rr::to_string(a.answer_type))];
      if (a.filter_reason) ++reasons[std::string(rr::to_string(*a.filter_reason))];
    } catch (const rr::Error& e) {
      report_error(e.code(), e.what(), line.number);
      partial = true;
    } catch (const json::exception& e) {
      report_error("InvalidPayload", e.what(), line.number);
      partial = true;
    }
  }
  std::cout << json{{"summary", {{"answer_types", types}, {"filter_reasons", reasons}}}}.dump() << "\n";
  return partial ? kPartial : kOk;
}

// ---------------------------------------------------------------------------
// filter-decide

int run_filter_decide(const std::string& input, const std::string& output, const std::string& ignore_csv) {
  std::set<rr::FilterFlag> ignore;
  for (const std::string& name : split_csv(ignore_csv)) {
    auto flag = rr::parse_filter_flag(name);
    if (!flag) throw UsageError("InvalidArgument", "unknown filter flag '" + name + "'");
    ignore.insert(*flag);
  }
  Output out(output);
  std::map<std::string, int> tally;
  bool partial = false;
  for (const Line& line : read_lines(input)) {
    json record = json::object();
    try {
      json j = json::parse(line.text);
      std::string text = line.text;
      if (j.is_object()) {
        if (j.contains("id")) record["id"] = j["id"];
        if (j.contains("response") && j["response"].is_string()) text = j["response"].get<std::string>();
      }
      rr::FilterFlags flags = rr::parse_filter_response(text);
      rr::FilterDecision d = rr::filter_decision(flags, ignore);
      record["decision"] = rr::to_string(d);
      record["flags"] = rr::to_json(flags);
    } catch (const rr::MalformedFilterResponse& e) {
      record["decision"] = "undecided";
      record["error"] = {{"code", e.code()}, {"message", e.what()}};
      partial = true;
    } catch (const json::exception& e) {
      report_error("InvalidPayload", e.what(), line.number);
      partial = true;
      continue;
    }
    ++tally[record["decision"].get<std::string>()];
    out.stream() << record.dump() << "\n";
  }
  std::cout << json{{"summary", tally}}.dump() << "\n";
  return partial ? kPartial : kOk;
}

// ---------------------------------------------------------------------------
// mixture

std::vector<rr::DatasetStats> read_stats(const std::string& path) {
  std::string text = read_file(path);
  std::vector<rr::DatasetStats> stats;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json arr = json::parse(text, nullptr, false);
    if (arr.is_discarded()) throw UsageError("InvalidPayload", path + " is not valid JSON");
    for (const auto& s : arr) stats.push_back(rr::dataset_stats_from_json(s));
    return stats;
  }
  for (const Line& line : read_lines(path)) {
    json j = json::parse(line.text, nullptr, false);
    if (j.is_discarded()) {
      throw UsageError("InvalidPayload", path + ":" + std::to_string(line.number) + " is not valid JSON");
    }
    try {
      stats.push_back(rr::dataset_stats_from_json(j));
    } catch (const rr::Error& e) {
      throw UsageError(e.code(), path + ":" + std::to_string(line.number) + ": " + e.what());
    }
  }
  return stats;
}

int run_mixture_plan(const std::string& stats_path, const std::string& scheme, double spread,
                     std::uint64_t batch, std::uint64_t seed) {
  std::vector<rr::DatasetStats> stats = read_stats(stats_path);
  rr::SchemeChoice choice;
  try {
    choice = rr::parse_scheme_choice(scheme);
  } catch (const rr::Error& e) {
    throw UsageError(e.code(), e.what());
  }
  rr::MixtureSpec spec = rr::plan_mixture(stats, choice.scheme, spread, choice.dropped);
  json out = rr::to_json(spec);
  if (batch > 0) {
    json counts = json::object();
    for (const auto& [c, n] : rr::sample_schedule(spec, batch, seed)) counts[std::string(rr::to_string(c))] = n;
    out["schedule"] = {{"batch_size", batch}, {"seed", seed}, {"counts", counts}};
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int run_mixture_screen(const std::string& stats_path, const rr::ScreenConfig& cfg) {
  bool any_failed = false;
  for (const rr::DatasetStats& s : read_stats(stats_path)) {
    rr::ScreenResult r = rr::heuristic_screen(s, cfg);
    json line = rr::to_json(r);
    line["name"] = s.name;
    std::cout << line.dump() << "\n";
    any_failed = any_failed || !r.passed();
  }
  (void)any_failed;  // failing a screen is a result, not an error
  return kOk;
}

// ---------------------------------------------------------------------------
// gspo-demo

double l2(const std::vector<std::vector<double>>& g) {
  double s = 0;
  for (const auto& row : g) {
    for (double x : row) s += x * x;
  }
  return std::sqrt(s);
}

int run_gspo_demo(const std::string& path, const rr::ClipConfig& cfg) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw UsageError("InvalidPayload", path + " is not valid JSON");
  rr::RolloutGroup group = rr::rollout_group_from_json(j);
  rr::ObjectiveResult gspo = rr::gspo_objective(group, cfg);
  rr::ObjectiveResult grpo = rr::grpo_objective(group, cfg);
  std::vector<double> seq_ratios;
  for (std::size_t i = 0; i < group.size(); ++i) seq_ratios.push_back(std::exp(rr::seq_mean_logratio(group, i)));
  json out = {
      {"objective", gspo.objective},
      {"advantages", gspo.advantages},
      {"sequence_ratios", seq_ratios},
      {"gradient_norm", l2(rr::gspo_gradient(group, cfg))},
      {"clip_fraction", gspo.clip_fraction},
      {"grpo_objective", grpo.objective},
      {"grpo_gradient_norm", l2(rr::grpo_gradient(group, cfg))},
      {"grpo_clip_fraction", grpo.clip_fraction},
  };
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// serve

int run_serve(const std::string& host, int port, const std::string& config_path) {
  rr::ServiceConfig cfg;
  if (!config_path.empty()) {
    json j = json::parse(read_file(config_path), nullptr, false);
    if (j.is_discarded()) throw UsageError("InvalidPayload", config_path + " is not valid JSON");
    try {
      cfg = rr::service_config_from_json(j);
    } catch (const rr::Error& e) {
      throw UsageError(e.code(), e.what());
    }
  }
  cfg.log_requests = true;
  rr::ClientConfig client = cfg.judge.value_or(rr::ClientConfig{});
  client.apply_environment();
  if (!client.endpoint.empty()) cfg.judge = client;

  rr::RewardService service(cfg);
  std::cout << json{{"event", "listening"}, {"host", host}, {"port", port},
                    {"version", std::string(rr::library_version())},
                    {"config_fingerprint", rr::config_fingerprint(cfg)}}
                   .dump()
            << std::endl;
  service.run(host, port);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task-routed reward scoring, canonicalization and mixture planning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rr::library_version()));

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score ScoredSample records");
  score_cmd->add_option("--input", score.input, "Line-delimited ScoredSample JSON")->required();
  score_cmd->add_option("--output", score.output, "Where ScoreResult lines go (default stdout)");
  score_cmd->add_option("--alpha", score.reward.alpha, "Format reward weight")->capture_default_str();
  score_cmd->add_option("--buffer", score.reward.buffer, "Overlong buffer B in tokens")->capture_default_str();
  score_cmd->add_option("--lambda", score.reward.lambda, "Overlong penalty scale")->capture_default_str();
  score_cmd->add_option("--max-tokens", score.reward.max_tokens, "Run-level L_max")->capture_default_str();
  score_cmd->add_option("--blend-w", score.reward.blend_w, "Constraint weight in IF + judge blend")
      ->capture_default_str();
  score_cmd->add_option("--coordinate-space", score.coordinate_space)->capture_default_str();
  score_cmd->add_option("--gap", score.gap, "Text allowed between </think> and <answer>: whitespace, strict, any")
      ->capture_default_str();
  score_cmd->add_option("--workers", score.workers, "Deterministic scoring threads (0 = all cores)");
  score_cmd->add_option("--judge-endpoint", score.judge_endpoint, "http:// chat-completion URL");
  score_cmd->add_option("--judge-model", score.judge_model);
  score_cmd->add_option("--judge-retries", score.judge_retries)->capture_default_str();
  score_cmd->add_option("--judge-concurrency", score.judge_concurrency)->capture_default_str();
  score_cmd->add_option("--judge-timeout-ms", score.judge_timeout_ms)->capture_default_str();

  std::string canon_input, canon_output;
  auto* canon_cmd = app.add_subcommand("canonicalize", "Classify and normalize raw ground-truth answers");
  canon_cmd->add_option("--input", canon_input)->required();
  canon_cmd->add_option("--output", canon_output);

  std::string filter_input, filter_output, filter_ignore;
  auto* filter_cmd = app.add_subcommand("filter-decide", "Keep/remove decisions from filter flags");
  filter_cmd->add_option("--input", filter_input)->required();
  filter_cmd->add_option("--output", filter_output);
  filter_cmd->add_option("--ignore", filter_ignore, "Comma-separated flags to ignore");

  auto* mixture_cmd = app.add_subcommand("mixture", "Mixture planning and dataset screening");
  mixture_cmd->require_subcommand(1);
  std::string plan_stats, plan_scheme = "uniform";
  double plan_spread = rr::kDefaultSpread;
  std::uint64_t plan_batch = 0, plan_seed = 0;
  auto* plan_cmd = mixture_cmd->add_subcommand("plan", "Per-category sampling shares");
  plan_cmd->add_option("--stats", plan_stats, "DatasetStats JSON lines or array")->required();
  plan_cmd->add_option("--scheme", plan_scheme, "uniform|difficulty|length|area|drop:<category>")
      ->capture_default_str();
  plan_cmd->add_option("--spread", plan_spread)->capture_default_str();
  plan_cmd->add_option("--batch", plan_batch, "Also print one batch schedule of this size");
  plan_cmd->add_option("--seed", plan_seed)->capture_default_str();

  std::string screen_stats, screen_allow;
  rr::ScreenConfig screen_cfg;
  auto* screen_cmd = mixture_cmd->add_subcommand("screen", "Heuristic dataset screening");
  screen_cmd->add_option("--stats", screen_stats)->required();
  screen_cmd->add_option("--min-examples", screen_cfg.min_examples)->capture_default_str();
  screen_cmd->add_option("--min-pixels", screen_cfg.min_avg_pixels)->capture_default_str();
  screen_cmd->add_option("--allow-low-resolution", screen_allow, "Comma-separated dataset names");

  std::string group_path;
  rr::ClipConfig clip;
  auto* gspo_cmd = app.add_subcommand("gspo-demo", "GSPO/GRPO objective on one rollout group");
  gspo_cmd->add_option("--group", group_path, "RolloutGroup JSON")->required();
  gspo_cmd->add_option("--eps-low", clip.eps_low)->capture_default_str();
  gspo_cmd->add_option("--eps-high", clip.eps_high)->capture_default_str();
  gspo_cmd->add_option("--adv-epsilon", clip.adv_epsilon)->capture_default_str();

  std::string serve_host = "127.0.0.1", serve_config;
  int serve_port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP reward service");
  serve_cmd->add_option("--host", serve_host)->capture_default_str();
  serve_cmd->add_option("--port", serve_port)->capture_default_str();
  serve_cmd->add_option("--config", serve_config, "Service config JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("InvalidInvocation", e.what());
    return kUsage;
  }

  try {
    if (*score_cmd) return run_score(score);
    if (*canon_cmd) return run_canonicalize(canon_input, canon_output);
    if (*filter_cmd) return run_filter_decide(filter_input, filter_output, filter_ignore);
    if (*plan_cmd) return run_mixture_plan(plan_stats, plan_scheme, plan_spread, plan_batch, plan_seed);
    if (*screen_cmd) {
      for (const std::string& name : split_csv(screen_allow)) screen_cfg.low_resolution_allow.insert(name);
      return run_mixture_screen(screen_stats, screen_cfg);
    }
    if (*gspo_cmd) return run_gspo_demo(group_path, clip);
    if (*serve_cmd) return run_serve(serve_host, serve_port, serve_config);
  } catch (const UsageError& e) {
    report_error(e.code, e.what());
    return kUsage;
  } catch (const rr::Error& e) {
    report_error(e.code(), e.what());
    return kUsage;
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return kUsage;
  }
  return kUsage;
}
