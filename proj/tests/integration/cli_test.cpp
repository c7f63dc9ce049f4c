#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rewardroute/records.hpp"

using namespace rewardroute;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(REWARDROUTE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const char* name) { return std::string(REWARDROUTE_FIXTURES_DIR) + "/" + name; }

std::vector<json> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

json last_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return json::parse(last);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rewardroute-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ScoreMatchesLibrary) {
  fs::path out = dir_ / "scores.jsonl";
  CliRun r = run("score --input " + fixture("batch.jsonl") + " --output " + out.string());
  ASSERT_EQ(r.code, 0) << r.out;
  auto lines = read_lines(out);
  auto inputs = read_lines(fixture("batch.jsonl"));
  ASSERT_EQ(lines.size(), inputs.size());
  std::vector<ScoredSample> samples;
  for (const auto& j : inputs) samples.push_back(sample_from_json(j));
  auto lib = score_batch(samples);
  for (std::size_t i = 0; i < lib.size(); ++i) EXPECT_EQ(score_result_from_json(lines[i]), lib[i]);
  json summary = last_line(r.out)["summary"];
  EXPECT_EQ(summary["records"], inputs.size());
  EXPECT_EQ(summary["errored"], 0);
}

TEST_F(Cli, ScoreReportsBadLines) {
  fs::path in = dir_ / "in.jsonl";
  {
    std::ofstream f(in);
    f << R"({"id":"a","route":"string_match","ground_truth":"x","response":"x","token_count":1})" << "\n";
    f << "not json\n";
    f << R"({"id":"b","route":"captioning","ground_truth":"x","response":"x","token_count":1})" << "\n";
  }
  fs::path out = dir_ / "out.jsonl";
  CliRun r = run("score --input " + in.string() + " --output " + out.string());
  EXPECT_EQ(r.code, 1);
  auto lines = read_lines(out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["id"], "a");
  EXPECT_EQ(last_line(r.out)["summary"]["scored"], 1);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("score").code, 2);
  EXPECT_EQ(run("score --input " + (dir_ / "missing.jsonl").string()).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("mixture plan --stats " + fixture("stats.jsonl") + " --scheme nonsense").code, 2);
}

TEST_F(Cli, Canonicalize) {
  fs::path out = dir_ / "canon.jsonl";
  CliRun r = run("canonicalize --input " + fixture("answers.jsonl") + " --output " + out.string());
  EXPECT_EQ(r.code, 0);
  auto lines = read_lines(out);
  EXPECT_EQ(lines.size(), read_lines(fixture("answers.jsonl")).size());
  EXPECT_EQ(lines[0]["value"], "327000");
}

TEST_F(Cli, FilterDecide) {
  fs::path out = dir_ / "decisions.jsonl";
  CliRun r = run("filter-decide --input " + fixture("filter.jsonl") + " --output " + out.string());
  EXPECT_EQ(r.code, 1);
  auto lines = read_lines(out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0]["decision"], "keep");
  EXPECT_EQ(lines[1]["decision"], "remove");
  EXPECT_EQ(lines[2]["decision"], "undecided");
  CliRun ignored = run("filter-decide --input " + fixture("filter.jsonl") + " --ignore ambiguous --output " +
                    out.string());
  EXPECT_EQ(read_lines(out)[1]["decision"], "keep");
  EXPECT_EQ(ignored.code, 1);
}

TEST_F(Cli, MixturePlan) {
  CliRun r = run("mixture plan --stats " + fixture("stats.jsonl") + " --scheme uniform");
  ASSERT_EQ(r.code, 0);
  json plan = json::parse(r.out);
  for (const auto& [k, v] : plan["shares"].items()) EXPECT_DOUBLE_EQ(v.get<double>(), 0.2);
  CliRun batch = run("mixture plan --stats " + fixture("stats.jsonl") + " --scheme difficulty --batch 64 --seed 3");
  ASSERT_EQ(batch.code, 0);
  std::uint64_t total = 0;
  json parsed = json::parse(batch.out);
  for (const auto& [k, v] : parsed["schedule"]["counts"].items()) total += v.get<std::uint64_t>();
  EXPECT_EQ(total, 64u);
}

TEST_F(Cli, MixtureScreen) {
  CliRun r = run("mixture screen --stats " + fixture("stats.jsonl"));
  ASSERT_EQ(r.code, 0);
  bool tiny = false;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line)) {
    json j = json::parse(line);
    if (j.contains("name") && j["name"] == "tiny-icons") {
      tiny = true;
      EXPECT_FALSE(j["pass"].get<bool>());
    }
  }
  EXPECT_TRUE(tiny);
}

TEST_F(Cli, GspoDemo) {
  CliRun r = run("gspo-demo --group " + fixture("group_identical.json"));
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["objective"], 0.0);
  for (const auto& s : j["sequence_ratios"]) EXPECT_EQ(s, 1.0);
  EXPECT_EQ(j["clip_fraction"], 0.0);
}
