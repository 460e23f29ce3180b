// Copyright 2026 The M2Q Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "m2q/harness.hpp"
#include "m2q/service.hpp"

using namespace m2q;
using nlohmann::json;

namespace {

std::string TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

AppConfig FixtureConfig(const std::string& dir) {
  harness::FixtureWorld().WriteTo(dir);
  AppConfig c;
  c.stores = {dir + "/catalog.jsonl", dir + "/community_qa.jsonl", dir + "/reviews.jsonl"};
  c.port = 0;
  c.message_log = dir + "/messages.jsonl";
  c.pipeline.federation_deadline = std::chrono::milliseconds(2000);
  return c;
}

std::size_t LineCount(const std::string& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    REQUIRE(json::accept(line));
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("service round trip over fixture stores") {
  const std::string dir = TempDir("m2q_service");
  Service service(FixtureConfig(dir));
  const int port = service.Start();
  httplib::Client client("127.0.0.1", port);

  auto health = client.Get("/v1/health");
  REQUIRE(health);
  CHECK(health->status == 503);
  auto early = client.Post("/v1/answer", R"({"text": "Is this red?"})", "application/json");
  REQUIRE(early);
  CHECK(early->status == 503);

  service.LoadStores();
  health = client.Get("/v1/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body)["status"] == "ok");

  const json msg = {{"id", "F04"},
                    {"product_id", "P-SPK"},
                    {"text", "Hi! What is the battery life? I want to use it on long hikes."}};
  auto answer = client.Post("/v1/answer", msg.dump(), "application/json");
  REQUIRE(answer);
  CHECK(answer->status == 200);
  const json outcome = json::parse(answer->body);
  CHECK(outcome["routing"] == "INSTANT_ANSWER");
  CHECK(outcome["message_id"] == "F04");
  CHECK(outcome["answer"]["backend_id"] == "catalog");

  auto empty = client.Post("/v1/answer", R"({"text": "  "})", "application/json");
  REQUIRE(empty);
  CHECK(empty->status == 400);
  auto not_json = client.Post("/v1/answer", "nope", "text/plain");
  REQUIRE(not_json);
  CHECK(not_json->status == 400);
  auto bad_theta = client.Post("/v1/answer?theta_a=2", msg.dump(), "application/json");
  REQUIRE(bad_theta);
  CHECK(bad_theta->status == 400);
  const json partial = {{"id", "B1"},
                        {"product_id", "P-SPK"},
                        {"text", "What is the battery life of this speaker?"}};
  auto strict = client.Post("/v1/answer?theta_a=1.0", partial.dump(), "application/json");
  REQUIRE(strict);
  CHECK(json::parse(strict->body)["reason"] == "NO_ANSWER");

  auto fb = client.Post("/v1/feedback", R"({"message_id": "F04", "positive": false})",
                        "application/json");
  REQUIRE(fb);
  CHECK(fb->status == 200);
  auto bad_fb = client.Post("/v1/feedback", R"({"message_id": "F04"})", "application/json");
  REQUIRE(bad_fb);
  CHECK(bad_fb->status == 400);

  auto metrics = client.Get("/v1/metrics");
  REQUIRE(metrics);
  const json m = json::parse(metrics->body);
  CHECK(m["asks"] == 2);
  CHECK(m["instant_answers"] == 1);
  CHECK(m["feedback_negative"] == 1);
  CHECK(m["successful_answer_rate"] == 0.0);
  CHECK(m["answer_rate"] == doctest::Approx(0.5));

  constexpr std::size_t kRequests = 11;
  service.Stop();
  CHECK(service.log().records() == kRequests);
  CHECK(LineCount(dir + "/messages.jsonl") == kRequests);
}

TEST_CASE("message log appends well formed records") {
  const std::string dir = TempDir("m2q_log");
  {
    MessageLog log(dir + "/log.jsonl", true);
    for (int i = 0; i < 5; ++i) log.Append({{"i", i}});
    CHECK(log.records() == 5);
  }
  {
    MessageLog log(dir + "/log.jsonl", false);
    log.Append({{"i", 5}});
  }
  CHECK(LineCount(dir + "/log.jsonl") == 6);
}

TEST_CASE("config parsing resolves relative paths and rejects bad values") {
  const auto c = AppConfig::FromJson(
      R"({"catalog": "c.jsonl", "answer_threshold": 0.7, "strategy": "m2q", "port": 9000,
          "sar_denominator": "answers"})",
      "/base");
  CHECK(c.stores.catalog == "/base/c.jsonl");
  CHECK(c.pipeline.answer_threshold == 0.7);
  CHECK(c.pipeline.strategy == Strategy::kM2q);
  CHECK(c.port == 9000);
  CHECK(c.sar_denominator == metrics::SarDenominator::kAnswers);
  CHECK_THROWS_AS(AppConfig::FromJson(R"({"strategy": "nope"})"), M2qError);
  CHECK_THROWS_AS(AppConfig::FromJson(R"({"answer_threshold": 3})"), M2qError);
  CHECK_THROWS_AS(AppConfig::FromJson(R"({"generative": "remote"})"), M2qError);
  CHECK_THROWS_AS(AppConfig::FromJson("[1]"), M2qError);
}
