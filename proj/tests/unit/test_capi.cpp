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


#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "m2q/m2q.h"

using nlohmann::json;

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { m2q_free_string(s); }
  json Json() const { return json::parse(s); }
};

struct Engine {
  m2q_engine* e = nullptr;
  ~Engine() { m2q_engine_destroy(e); }
};

std::string FixtureDir() {
  static const std::string dir = [] {
    const auto d = std::filesystem::temp_directory_path() / "m2q_capi_world";
    std::filesystem::create_directories(d);
    REQUIRE(m2q_write_fixtures(d.string().c_str()) == M2Q_OK);
    return d.string();
  }();
  return dir;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(m2q_status_name(M2Q_OK)) == "OK");
  CHECK(std::string(m2q_status_name(M2Q_ERR_NO_INTENT)) == "NoIntentFound");
  CHECK(std::string(m2q_version()).size() > 0);
  m2q_free_string(nullptr);
}

TEST_CASE("engine answers over fixture stores") {
  const std::string dir = FixtureDir();
  const json cfg = {{"catalog", "catalog.jsonl"},
                    {"community_qa", "community_qa.jsonl"},
                    {"reviews", "reviews.jsonl"}};
  Engine engine;
  REQUIRE(m2q_engine_create_json(cfg.dump().c_str(), dir.c_str(), &engine.e) == M2Q_OK);

  Str out;
  const char* msg = R"({"id":"F05","product_id":"P-MUG","text":"Hello. I was wondering if this mug is dishwasher safe. My old one cracked after a few washes."})";
  REQUIRE(m2q_answer(engine.e, msg, nullptr, &out.s) == M2Q_OK);
  const json o = out.Json();
  CHECK(o["routing"] == "INSTANT_ANSWER");
  CHECK(o["question"]["method"] == "GENERATIVE");

  Str ex;
  REQUIRE(m2q_answer(engine.e, msg, R"({"strategy":"EXTRACTIVE_ONLY"})", &ex.s) == M2Q_OK);
  CHECK(ex.Json()["reason"] == "NO_INTENT");

  Str q;
  REQUIRE(m2q_reformulate(engine.e, msg, "rule", &q.s) == M2Q_OK);
  CHECK(q.Json()["text"] == "is this product dishwasher safe?");

  Str none;
  CHECK(m2q_reformulate(engine.e, R"({"text":"Nice shop."})", "rule", &none.s) ==
        M2Q_ERR_NO_INTENT);
  CHECK(none.s == nullptr);
  CHECK(std::string(m2q_last_error()).size() > 0);
  CHECK(m2q_reformulate(engine.e, R"({"text":"Is it?"})", "bogus", &none.s) ==
        M2Q_ERR_INVALID_ARGUMENT);
  CHECK(m2q_answer(engine.e, "{not json", nullptr, &none.s) == M2Q_ERR_SCHEMA);
  CHECK(m2q_answer(nullptr, msg, nullptr, &none.s) == M2Q_ERR_INVALID_ARGUMENT);

  Str report, table;
  const std::string pairs = dir + "/pairs.jsonl";
  REQUIRE(m2q_eval_offline(engine.e, pairs.c_str(), nullptr, &report.s, &table.s) == M2Q_OK);
  CHECK(report.Json()["rows"].size() == 5);
  CHECK(std::string(table.s).find("GOLD_ORACLE") != std::string::npos);
}

TEST_CASE("bad configs are rejected") {
  Engine engine;
  CHECK(m2q_engine_create_json(R"({"answer_threshold": 7})", "", &engine.e) ==
        M2Q_ERR_INVALID_CONFIG);
  CHECK(engine.e == nullptr);
  CHECK(m2q_engine_create("/nonexistent/m2q.json", &engine.e) == M2Q_ERR_IO);
}

TEST_CASE("score generation and online eval") {
  Str s;
  REQUIRE(m2q_score_generation("the cat sat", "the cat sat down", &s.s) == M2Q_OK);
  CHECK(s.Json()["bleu"][1].get<double>() == doctest::Approx(0.716531310574));
  Str report, table;
  REQUIRE(m2q_eval_online(R"({"users": 2000, "seed": 3, "messages": 50})", &report.s, &table.s) ==
          M2Q_OK);
  CHECK(report.Json()["cohorts"].size() == 3);
  Str bad_r, bad_t;
  CHECK(m2q_eval_online(R"({"uplift": 0})", &bad_r.s, &bad_t.s) == M2Q_ERR_INVALID_CONFIG);
}
