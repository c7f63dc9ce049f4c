#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "rewardroute/errors.hpp"
#include "rewardroute/judge.hpp"
#include "rewardroute/llm_client.hpp"

using namespace rewardroute;

namespace {

std::size_t count(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t p = haystack.find(needle); p != std::string_view::npos; p = haystack.find(needle, p + 1)) ++n;
  return n;
}

std::string filter_json(bool r, bool a, bool l, bool v, bool n) {
  return nlohmann::json{{"relevance_filter", r},    {"ambiguous_filter", a},        {"language_filter", l},
                        {"verifiable_filter", v},   {"number_precision_filter", n}, {"reason", "why"}}
      .dump();
}

}  // namespace

TEST(JudgePrompt, SubstitutesEachFieldOnce) {
  std::string p = render_judge_prompt({"What city?", "It is Paris.", "Paris"});
  EXPECT_EQ(count(p, "[Reference Gold Answer START]\nParis\n[Reference Gold Answer END]"), 1u);
  EXPECT_EQ(count(p, "[AI Answer START]\nIt is Paris.\n[AI Answer END]"), 1u);
  EXPECT_EQ(count(p, "[Conversation History START]\nWhat city?\n"), 1u);
  EXPECT_EQ(count(p, "{input}") + count(p, "{output}") + count(p, "{label}"), 0u);
  EXPECT_EQ(count(p, "Automatic Failure Conditions"), 1u);
}

TEST(JudgePrompt, EmptyFieldsAndBraces) {
  std::string empty = render_judge_prompt({"", "", ""});
  EXPECT_NE(empty.find("[AI Answer START]\n\n[AI Answer END]"), std::string::npos);
  std::string tricky = render_judge_prompt({"{output}", "{label} {x}", "{input}"});
  EXPECT_NE(tricky.find("[Conversation History START]\n{output}\n"), std::string::npos);
  EXPECT_NE(tricky.find("[AI Answer START]\n{label} {x}\n"), std::string::npos);
  EXPECT_NE(tricky.find("[Reference Gold Answer START]\n{input}\n"), std::string::npos);
}

TEST(JudgePrompt, TemplateIsVerbatim) {
  std::string_view t = templates::judge_prompt_v1();
  std::string rendered = render_judge_prompt({"A", "B", "C"});
  EXPECT_EQ(rendered.size(), t.size() - std::string("{input}{output}{label}").size() + 3);
}

TEST(JudgeResponse, Parse) {
  EXPECT_EQ(parse_judge_response(R"({"REASONING":"ok","SCORE":"7"})").score, 7);
  EXPECT_EQ(parse_judge_response(R"({"REASONING":"ok","SCORE":3})").score, 3);
  EXPECT_EQ(parse_judge_response(R"({"reasoning":"ok","score":"10"})").score, 10);
  JudgeVerdict v = parse_judge_response("Here is my view.\n```json\n{\"REASONING\": \"fine\", \"SCORE\": \"8\"}\n```");
  EXPECT_EQ(v.score, 8);
  EXPECT_EQ(v.reasoning, "fine");
  EXPECT_EQ(parse_judge_response(R"({"note": {"x": 1}} then {"REASONING":"r","SCORE":2})").score, 2);
}

TEST(JudgeResponse, Malformed) {
  EXPECT_THROW(parse_judge_response(R"({"REASONING":"x","SCORE":"11"})"), MalformedVerdict);
  EXPECT_THROW(parse_judge_response(R"({"REASONING":"x","SCORE":0})"), MalformedVerdict);
  EXPECT_THROW(parse_judge_response(R"({"REASONING":"x","SCORE":"7.5"})"), MalformedVerdict);
  EXPECT_THROW(parse_judge_response(R"({"REASONING":"x"})"), MalformedVerdict);
  EXPECT_THROW(parse_judge_response("no json"), MalformedVerdict);
}

TEST(JudgeScore, Normalization) {
  for (int s = 1; s <= 10; ++s) EXPECT_EQ(judge_score(s), (s - 1) / 9.0);
  EXPECT_EQ(judge_score(1), 0.0);
  EXPECT_EQ(judge_score(10), 1.0);
  EXPECT_NEAR(judge_score(7), 0.6667, 1e-4);
}

TEST(FilterFlags, Names) {
  for (FilterFlag f : kAllFilterFlags) {
    EXPECT_EQ(parse_filter_flag(to_string(f)), f);
    EXPECT_EQ(parse_filter_flag(std::string(to_string(f)) + "_filter"), f);
  }
  EXPECT_FALSE(parse_filter_flag("nonsense").has_value());
}

TEST(FilterResponse, Parse) {
  FilterFlags none = parse_filter_response(filter_json(false, false, false, false, false));
  EXPECT_EQ(filter_decision(none), FilterDecision::kKeep);
  FilterFlags rel = parse_filter_response(filter_json(true, false, false, false, false));
  EXPECT_TRUE(rel.relevance);
  EXPECT_EQ(rel.reason, "why");
  FilterFlags strings = parse_filter_response(
      R"(Result: {"relevance_filter": "FALSE", "ambiguous_filter": "True", "language_filter": "false",
         "verifiable_filter": "false", "number_precision_filter": "false", "reason": "vague"})");
  EXPECT_TRUE(strings.ambiguous);
  EXPECT_FALSE(strings.relevance);
}

TEST(FilterResponse, Malformed) {
  EXPECT_THROW(parse_filter_response(R"({"relevance_filter": false, "ambiguous_filter": false,
      "language_filter": false, "number_precision_filter": false, "reason": "x"})"),
               MalformedFilterResponse);
  EXPECT_THROW(parse_filter_response(R"({"relevance_filter": "maybe", "ambiguous_filter": false,
      "language_filter": false, "verifiable_filter": false, "number_precision_filter": false, "reason": "x"})"),
               MalformedFilterResponse);
  EXPECT_THROW(parse_filter_response("nothing"), MalformedFilterResponse);
}

TEST(FilterDecision, Rules) {
  FilterFlags f;
  EXPECT_EQ(filter_decision(f), FilterDecision::kKeep);
  f.number_precision = true;
  EXPECT_EQ(filter_decision(f), FilterDecision::kRemove);
  FilterFlags v;
  v.verifiable = true;
  EXPECT_EQ(filter_decision(v, {FilterFlag::kVerifiable}), FilterDecision::kKeep);
  EXPECT_EQ(to_string(FilterDecision::kKeep), "keep");
  EXPECT_EQ(to_string(FilterDecision::kRemove), "remove");
}

TEST(FilterPrompt, QuestionSubstituted) {
  std::string p = render_filter_prompt("How many {cats}?");
  EXPECT_NE(p.find("How many {cats}?"), std::string::npos);
  EXPECT_EQ(p.find("{question}"), std::string::npos);
}

TEST(ChatWire, RequestAndResponseShape) {
  ClientConfig cfg;
  cfg.model = "judge-model";
  nlohmann::json body = chat_request_body("hello", cfg);
  EXPECT_EQ(body["model"], "judge-model");
  EXPECT_EQ(body["messages"][0]["role"], "user");
  EXPECT_EQ(body["messages"][0]["content"], "hello");
  EXPECT_EQ(body["temperature"], 0.7);
  EXPECT_EQ(body["max_tokens"], 1024);
  EXPECT_EQ(body["chat_template_kwargs"]["enable_thinking"], false);

  nlohmann::json reply = {{"choices", {{{"message", {{"content", "hi"}}}}}}};
  EXPECT_EQ(chat_response_text(reply), "hi");
  EXPECT_THROW(chat_response_text(nlohmann::json::object()), TransportFailure);
}

TEST(ClientConfigTest, Validation) {
  ClientConfig cfg;
  cfg.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  EXPECT_NO_THROW(cfg.validate());
  cfg.retries = -1;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.retries = 0;
  cfg.max_concurrency = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.max_concurrency = 1;
  cfg.endpoint = "https://example.invalid/v1";
  EXPECT_THROW(LlmClient{cfg}, InvalidArgument);
}
