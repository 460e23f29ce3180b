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


#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "m2q/harness.hpp"

using namespace m2q;
using namespace m2q::harness;

namespace {

std::string Line(const std::string& id, const std::string& split,
                 const std::string& gold = "is this red?") {
  return R"({"id":")" + id + R"(","product_id":"P","user_id":"u","text":"Hi. Is this red?",)" +
         R"("gold_question":")" + gold + R"(","split":")" + split + "\"}\n";
}

std::size_t Words(const std::string& s) { return text::SplitWhitespace(s).size(); }

Pipeline RulePipeline(const World& w) {
  return Pipeline(std::make_shared<RuleBasedReformulator>(), w.Backends());
}

PipelineConfig Thresholds() {
  PipelineConfig c;
  c.federation_deadline = std::chrono::milliseconds(2000);
  return c;
}

}  // namespace

TEST_CASE("dataset loader accepts valid lines") {
  const auto load = ParseParallelDataset(Line("a", "train") + Line("b", "dev") + Line("c", "test"));
  CHECK(load.pairs.size() == 3);
  CHECK(load.errors.empty());
  CHECK(load.pairs[1].split == Split::kDev);
}

TEST_CASE("dataset loader reports bad lines with numbers") {
  const std::string jsonl = Line("a", "test") +
                            R"({"id":"b","product_id":"P","text":"hi","split":"test"})" "\n" +
                            "garbage\n" + Line("d", "test", "not a question");
  const auto load = ParseParallelDataset(jsonl);
  CHECK(load.pairs.size() == 1);
  REQUIRE(load.errors.size() == 3);
  CHECK(load.errors[0].line == 2);
  CHECK(load.errors[0].message.find("gold_question") != std::string::npos);
  CHECK(load.errors[1].line == 3);
  CHECK(load.errors[2].line == 4);
}

TEST_CASE("dataset loader error codes") {
  auto code = [](auto fn) -> std::optional<ErrorCode> {
    try {
      fn();
    } catch (const M2qError& e) {
      return e.code();
    }
    return std::nullopt;
  };
  CHECK(code([] { ParseParallelDataset("\n\n"); }) == ErrorCode::kEmptyDataset);
  CHECK(code([] { ParseParallelDataset("garbage\n"); }) == ErrorCode::kSchema);
  CHECK(code([] { LoadParallelDataset("/nonexistent/m2q/pairs.jsonl"); }) == ErrorCode::kIo);
  // 10 train / 1 dev / 1 test is close to the 5000/600/450 ratios; all-test is not.
  std::string shaped;
  for (int i = 0; i < 10; ++i) shaped += Line("t" + std::to_string(i), "train");
  shaped += Line("d", "dev") + Line("x", "test");
  CHECK_FALSE(code([&] { ParseParallelDataset(shaped, true); }).has_value());
  CHECK(code([] { ParseParallelDataset(Line("a", "test"), true); }) == ErrorCode::kSchema);
}

TEST_CASE("dataset write and load round trip with histogram") {
  const auto world = FixtureWorld();
  const auto path = (std::filesystem::temp_directory_path() / "m2q_pairs.jsonl").string();
  WriteParallelDataset(path, world.pairs);
  const auto load = LoadParallelDataset(path);
  REQUIRE(load.pairs.size() == world.pairs.size());
  CHECK(load.pairs[1].message.text == world.pairs[1].message.text);
  std::size_t histogram_total = 0;
  for (const auto& [bucket, count] : load.word_histogram) histogram_total += count;
  CHECK(histogram_total == world.pairs.size());
}

TEST_CASE("synthetic messages stay within 25 to 75 words and are reproducible") {
  const auto a = SyntheticWorld();
  const auto b = SyntheticWorld();
  REQUIRE(a.pairs.size() == 200);
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    const auto n = Words(a.pairs[i].message.text);
    CHECK(n >= 25);
    CHECK(n <= 75);
    CHECK(a.pairs[i].message.text == b.pairs[i].message.text);
    CHECK(a.pairs[i].gold_question.back() == '?');
  }
  CHECK(SyntheticWorld({200, 20, 8, 0.25}).pairs[0].message.text != a.pairs[0].message.text);
  CHECK_THROWS_AS(SyntheticWorld({0, 20, 7, 0.25}), M2qError);
}

TEST_CASE("world files load back through the store loaders") {
  const auto dir = std::filesystem::temp_directory_path() / "m2q_world";
  std::filesystem::create_directories(dir);
  const auto world = FixtureWorld();
  world.WriteTo(dir.string());
  CHECK(LoadCatalog((dir / "catalog.jsonl").string()).size() == world.catalog.size());
  CHECK(LoadCommunityQa((dir / "community_qa.jsonl").string()).size() == world.community_qa.size());
  CHECK(LoadReviews((dir / "reviews.jsonl").string()).size() == world.reviews.size());
  CHECK(LoadParallelDataset((dir / "pairs.jsonl").string()).pairs.size() == world.pairs.size());
}

TEST_CASE("gold oracle scores 1.0 on generation metrics") {
  const auto world = FixtureWorld();
  const auto pipeline = RulePipeline(world);
  const auto report = RunOfflineEval(world.pairs, {EvalStrategy::Of(Strategy::kExtractiveOnly),
                                                   EvalStrategy::GoldOracle()},
                                     pipeline, Thresholds());
  const EvalRow* gold = report.Find("GOLD_ORACLE");
  REQUIRE(gold != nullptr);
  for (double b : gold->generation.bleu) CHECK(b == doctest::Approx(1.0));
  CHECK(gold->generation.rouge1_f == doctest::Approx(1.0));
  CHECK(gold->generation.rouge2_f == doctest::Approx(1.0));
  CHECK(gold->generation.rougeL_f == doctest::Approx(1.0));
  const EvalRow* base = report.Find("EXTRACTIVE_ONLY");
  REQUIRE(base != nullptr);
  if (base->answer_improvement) CHECK(*base->answer_improvement == 0.0);
  CHECK_NOTHROW(CheckReportConsistency(report));
}

TEST_CASE("single pair report has no division errors") {
  const auto world = FixtureWorld();
  const auto pipeline = RulePipeline(world);
  const std::vector<ParallelPair> one = {world.pairs[3]};
  const auto report = RunOfflineEval(
      one, {EvalStrategy::Of(Strategy::kExtractiveOnly), EvalStrategy::Of(Strategy::kM2q)},
      pipeline, Thresholds());
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].n == 1);
  CHECK_FALSE(report.ToTable().empty());
  CHECK(report.ToJson()["rows"].size() == 2);
}

TEST_CASE("offline eval rejects empty inputs and is deterministic") {
  const auto world = FixtureWorld();
  const auto pipeline = RulePipeline(world);
  CHECK_THROWS_AS(RunOfflineEval({}, {EvalStrategy::Of(Strategy::kM2q)}, pipeline, Thresholds()),
                  M2qError);
  CHECK_THROWS_AS(RunOfflineEval(world.pairs, {}, pipeline, Thresholds()), M2qError);
  const std::vector<EvalStrategy> all = {
      EvalStrategy::Of(Strategy::kExtractiveOnly), EvalStrategy::Of(Strategy::kPassthrough),
      EvalStrategy::Of(Strategy::kM2q), EvalStrategy::Of(Strategy::kM2qHybrid),
      EvalStrategy::GoldOracle()};
  auto reversed = world.pairs;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(RunOfflineEval(world.pairs, all, pipeline, Thresholds()).ToJson().dump() ==
        RunOfflineEval(reversed, all, pipeline, Thresholds()).ToJson().dump());
}

TEST_CASE("report consistency check catches tampering") {
  const auto world = FixtureWorld();
  const auto pipeline = RulePipeline(world);
  auto report = RunOfflineEval(
      world.pairs, {EvalStrategy::Of(Strategy::kExtractiveOnly), EvalStrategy::Of(Strategy::kM2q)},
      pipeline, Thresholds());
  REQUIRE(report.rows[1].answer_improvement.has_value());
  *report.rows[1].answer_improvement += 1.0;
  CHECK_THROWS_AS(CheckReportConsistency(report), M2qError);
}

TEST_CASE("cohort assignment partitions users evenly") {
  std::size_t control = 0;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) {
    char id[24];
    std::snprintf(id, sizeof id, "user-%07zu", i);
    if (AssignCohort(id) == Cohort::kControl) ++control;
  }
  CHECK(std::fabs(static_cast<double>(control) / n - 0.5) <= 0.01);
  CHECK(AssignCohort("same") == AssignCohort("same"));
}

TEST_CASE("ab simulation is reproducible and structurally sound") {
  const auto world = SyntheticWorld();
  const auto pipeline = RulePipeline(world);
  AbConfig config;
  config.pipeline = Thresholds();
  const auto a = RunAbSimulation(2000, 5, config, pipeline, world.pairs);
  const auto b = RunAbSimulation(2000, 5, config, pipeline, world.pairs);
  CHECK(a.report.ToJson().dump() == b.report.ToJson().dump());
  REQUIRE(a.report.rows.size() == 3);
  const CohortRow* c = a.report.Find("C");
  const CohortRow* t = a.report.Find("T");
  const CohortRow* tp = a.report.Find("T_pos");
  REQUIRE((c && t && tp));
  CHECK(c->users + t->users == 2000);
  CHECK(tp->users <= t->users);
  CHECK(c->successful_answer_rate == 0.0);
  CHECK(c->sar_absolute);
  CHECK_FALSE(t->sar_improvement.has_value());
  CHECK(t->successful_answer_rate > 0.0);
  for (std::size_t i = 1; i < a.events.size(); ++i) {
    REQUIRE(a.events[i - 1].timestamp <= a.events[i].timestamp);
  }
  CHECK(a.report.ToTable().find("absolute") != std::string::npos);
}

TEST_CASE("ab simulation config validation") {
  const auto world = FixtureWorld();
  const auto pipeline = RulePipeline(world);
  AbConfig config;
  config.uplift = 0.0;
  CHECK_THROWS_AS(RunAbSimulation(100, 1, config, pipeline, world.pairs), M2qError);
  config.uplift = 1.0;
  CHECK_THROWS_AS(RunAbSimulation(1, 1, config, pipeline, world.pairs), M2qError);
  config.base_purchase_rate = 1.5;
  CHECK_THROWS_AS(RunAbSimulation(100, 1, config, pipeline, world.pairs), M2qError);
}
