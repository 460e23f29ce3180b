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
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "m2q/metrics.hpp"
#include "oracles.hpp"

using namespace m2q;
using namespace m2q::metrics;
using oracle::Words;

TEST_CASE("metric fixtures match hand values") {
  for (const auto& f : oracle::MetricFixtures()) {
    const auto c = Words(f.candidate);
    const auto r = Words(f.reference);
    CAPTURE(f.candidate);
    for (int k = 1; k <= 4; ++k) {
      CHECK(std::fabs(Bleu(c, r, k) - f.bleu[k - 1]) <= 1e-6);
    }
    CHECK(std::fabs(RougeN(c, r, 1) - f.rouge1) <= 1e-6);
    CHECK(std::fabs(RougeN(c, r, 2) - f.rouge2) <= 1e-6);
    CHECK(std::fabs(RougeL(c, r) - f.rougeL) <= 1e-6);
  }
}

TEST_CASE("worked examples") {
  const auto c = Words("the cat sat");
  const auto r = Words("the cat sat down");
  CHECK(Bleu(c, r, 2) == doctest::Approx(std::exp(1.0 - 4.0 / 3.0)));
  CHECK(RougeL(Words("a b c d"), Words("a c d")) == doctest::Approx(2 * 0.75 / 1.75));
  CHECK(LcsLength(Words("a b c d"), Words("a c d")) == 3);
}

TEST_CASE("lcs equals brute force for all short lists") {
  // Every pair of lists over {a, b, c} up to length 8 would be 9841^2; sample
  // a full length grid with exhaustive enumeration on the 2-letter alphabet.
  std::vector<std::vector<std::string>> lists = {{}};
  for (std::size_t len = 1; len <= 8; ++len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::vector<std::string> l;
      for (std::size_t i = 0; i < len; ++i) l.push_back((bits >> i & 1) ? "a" : "b");
      lists.push_back(l);
    }
  }
  std::mt19937 rng(8);
  for (int iter = 0; iter < 20000; ++iter) {
    const auto& a = lists[rng() % lists.size()];
    const auto& b = lists[rng() % lists.size()];
    REQUIRE(LcsLength(a, b) == oracle::BruteForceLcs(a, b));
  }
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  for (int iter = 0; iter < 5000; ++iter) {
    std::vector<std::string> a, b;
    for (std::size_t i = rng() % 9; i > 0; --i) a.push_back(alphabet[rng() % 4]);
    for (std::size_t i = rng() % 9; i > 0; --i) b.push_back(alphabet[rng() % 4]);
    REQUIRE(LcsLength(a, b) == oracle::BruteForceLcs(a, b));
  }
}

TEST_CASE("library metrics agree with the oracle on random texts") {
  std::mt19937 rng(21);
  const std::vector<std::string> vocab = {"is", "this", "product", "red", "?", "the", "a"};
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<std::string> c, r;
    for (std::size_t i = rng() % 9; i > 0; --i) c.push_back(vocab[rng() % vocab.size()]);
    for (std::size_t i = 1 + rng() % 8; i > 0; --i) r.push_back(vocab[rng() % vocab.size()]);
    for (int k = 1; k <= 4; ++k) {
      const double v = Bleu(c, r, k);
      REQUIRE(v == doctest::Approx(oracle::Bleu(c, r, k)).epsilon(1e-9));
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
    REQUIRE(RougeN(c, r, 1) == doctest::Approx(oracle::RougeN(c, r, 1)));
    REQUIRE(RougeN(c, r, 2) == doctest::Approx(oracle::RougeN(c, r, 2)));
    REQUIRE(RougeL(c, r) == doctest::Approx(oracle::RougeL(c, r)));
    REQUIRE((RougeL(c, r) == 1.0) == (c == r));
  }
}

TEST_CASE("bleu is non-increasing in k with full n-gram support") {
  const auto c = Words("a b c d e f");
  const auto r = Words("a b c d e g");
  double prev = 2.0;
  for (int k = 1; k <= 4; ++k) {
    const double v = Bleu(c, r, k);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("metric errors and edges") {
  const auto r = Words("a b");
  CHECK_THROWS_AS(Bleu(r, r, 0), M2qError);
  CHECK_THROWS_AS(Bleu(r, r, 5), M2qError);
  CHECK(Bleu({}, r, 2) == 0.0);
  CHECK_THROWS_AS(Bleu(r, {}, 2), M2qError);
  CHECK(RougeN(Words("x"), Words("y"), 1) == 0.0);
  CHECK(TokenF1(Words("a b c"), Words("c b a")) == 1.0);
  CHECK(TokenF1(Words("a a"), Words("a b")) == doctest::Approx(0.5));
}

TEST_CASE("score generation tokenizes both sides") {
  const auto s = ScoreGeneration("Is this product red?", "is this product red ?");
  for (double b : s.bleu) CHECK(b == doctest::Approx(1.0));
  CHECK(s.rougeL_f == doctest::Approx(1.0));
}

TEST_CASE("qa rates") {
  std::vector<QaObservation> all_one(5, QaObservation{1.0, 1.0});
  CHECK(ComputeQaRates(all_one, 0.4, 0.6).answer_rate == 1.0);
  std::vector<QaObservation> below(4, QaObservation{0.9, 0.99});
  CHECK(ComputeQaRates(below, 0.4, 1.0).answer_rate == 0.0);

  // Ten responses: seven clear theta_u = 0.4; four clear theta_a = 0.6.
  const std::vector<QaObservation> ten = {
      {0.9, 0.9}, {0.8, 0.7}, {0.5, 0.6}, {0.45, 0.95}, {0.4, 0.1},
      {0.7, std::nullopt}, {0.6, 0.59}, {0.3, 0.2}, {0.1, std::nullopt}, {0.39, 0.0}};
  const auto rates = ComputeQaRates(ten, 0.4, 0.6);
  CHECK(rates.understand_rate == doctest::Approx(0.7));
  CHECK(rates.answer_rate == doctest::Approx(0.4));
  CHECK(rates.n == 10);
  CHECK_THROWS_AS(ComputeQaRates({}, 0.4, 0.6), M2qError);
}

TEST_CASE("observations from pipeline outcomes count only instant answers") {
  RoutingOutcome forwarded;
  forwarded.understand_score = 0.8;
  forwarded.confidence = 0.3;
  CHECK_FALSE(Observe(forwarded).best_confidence.has_value());
  RoutingOutcome instant;
  instant.routing = Routing::kInstantAnswer;
  instant.understand_score = 0.8;
  instant.confidence = 0.9;
  CHECK(Observe(instant).best_confidence == 0.9);
}

TEST_CASE("relative improvement") {
  CHECK(RelativeImprovement(0.28, 0.04) == doctest::Approx(600.0));
  CHECK(RelativeImprovement(0.3, 0.3) == 0.0);
  CHECK(RelativeImprovement(1.2857 * 0.3, 0.3) == doctest::Approx(28.57));
  CHECK_THROWS_AS(RelativeImprovement(1.0, 0.0), M2qError);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> x(0.001, 10.0), p(-99.0, 500.0);
  for (int i = 0; i < 1000; ++i) {
    const double xv = x(rng), pv = p(rng);
    REQUIRE(RelativeImprovement(xv * (1 + pv / 100), xv) == doctest::Approx(pv).epsilon(1e-9));
  }
}

TEST_CASE("purchase rate and SAR on the fifty event log") {
  const auto log = oracle::FiftyEventLog();
  REQUIRE(log.size() == 50);
  CHECK(PurchaseRate(log) == doctest::Approx(0.3));
  CHECK(SuccessfulAnswerRate(log) == doctest::Approx(0.4));
  CHECK(SuccessfulAnswerRate(log, SarDenominator::kAnswers) == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("purchase rate counts asker pairs once") {
  using K = EventKind;
  const std::vector<EventRecord> log = {{"u", "P", 0, K::kAsk, "a"},
                                        {"u", "P", 10, K::kAsk, "b"},
                                        {"u", "P", 20, K::kPurchase, std::nullopt},
                                        {"v", "P", 30, K::kAsk, "c"}};
  CHECK(PurchaseRate(log) == doctest::Approx(0.5));
  CHECK_THROWS_AS(PurchaseRate(std::vector<EventRecord>{{"u", "P", 0, K::kPurchase, {}}}),
                  M2qError);
  CHECK(SuccessfulAnswerRate(log) == 0.0);
}

TEST_CASE("rates are invariant under per-user order preserving permutations") {
  const auto log = oracle::FiftyEventLog();
  std::map<std::string, std::vector<EventRecord>> by_user;
  for (const auto& e : log) by_user[e.user_id].push_back(e);
  std::mt19937 rng(13);
  for (int iter = 0; iter < 200; ++iter) {
    // Random interleaving of the per-user streams.
    std::vector<std::string> tickets;
    for (const auto& [u, events] : by_user) tickets.insert(tickets.end(), events.size(), u);
    std::shuffle(tickets.begin(), tickets.end(), rng);
    std::map<std::string, std::size_t> next;
    std::vector<EventRecord> mixed;
    for (const auto& u : tickets) mixed.push_back(by_user[u][next[u]++]);
    REQUIRE(PurchaseRate(mixed) == doctest::Approx(0.3));
    REQUIRE(SuccessfulAnswerRate(mixed) == doctest::Approx(0.4));
  }
}

TEST_CASE("event log round trip and ordering check") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = (dir / "m2q_events.jsonl").string();
  const auto log = oracle::FiftyEventLog();
  WriteEventLog(path, log);
  const auto back = LoadEventLog(path);
  REQUIRE(back.size() == log.size());
  CHECK(back[1].kind == EventKind::kAsk);
  CHECK(back[1].message_id == "m01");
  CHECK_FALSE(back[0].message_id.has_value());
  CHECK(std::string(ToString(EventKind::kInstantAnswer)) == "instant_answer");
  CHECK(ParseEventKind("feedback_positive") == EventKind::kFeedbackPositive);

  const auto bad = (dir / "m2q_events_bad.jsonl").string();
  std::ofstream(bad) << R"({"user_id":"u","product_id":"P","timestamp":5,"kind":"ask"})" "\n"
                     << R"({"user_id":"u","product_id":"P","timestamp":4,"kind":"purchase"})" "\n";
  CHECK_THROWS_AS(LoadEventLog(bad), M2qError);
}

TEST_CASE("relevance labels") {
  const auto a = ParseRelevanceLabels(
      "{\"message_id\":\"1\",\"label\":\"helpful\"}\n"
      "{\"message_id\":\"2\",\"label\":\"unhelpful\"}\n"
      "{\"message_id\":\"3\",\"label\":\"helpful\"}\n");
  const auto b = ParseRelevanceLabels(
      "{\"message_id\":\"1\",\"label\":\"helpful\"}\n"
      "{\"message_id\":\"2\",\"label\":\"helpful\"}\n"
      "{\"message_id\":\"4\",\"label\":\"helpful\"}\n");
  CHECK(HelpfulRate(a) == doctest::Approx(2.0 / 3.0));
  CHECK(PercentAgreement(a, b) == doctest::Approx(50.0));
  CHECK_THROWS_AS(ParseRelevanceLabels("{\"message_id\":\"1\",\"label\":\"helpful\"}\n"
                                       "{\"message_id\":\"1\",\"label\":\"unhelpful\"}\n"),
                  M2qError);
  CHECK_THROWS_AS(ParseRelevanceLabels("{\"message_id\":\"1\",\"label\":\"maybe\"}\n"), M2qError);
  const bool verdicts[] = {true, true, false, true};
  CHECK(AccuracyRate(verdicts) == doctest::Approx(0.75));
}
