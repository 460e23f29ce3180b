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
#include <random>

#include "doctest.h"
#include "m2q/question.hpp"

using namespace m2q;

namespace {

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

text::RawMessage Msg(std::string text) {
  text::RawMessage m;
  m.id = "m";
  m.text = std::move(text);
  return m;
}

const char* kRow2 =
    "Hello! I'm curious whether this Re:Zero REM figure you're selling is from the authentic "
    "Taito Coreful brand? Thank you.";

}  // namespace

TEST_CASE("classifier examples") {
  QuestionClassifier c;
  CHECK(c.Score("Is this waterproof?") == doctest::Approx(Sigmoid(3.0)).epsilon(1e-12));
  CHECK(c.Score("Is this waterproof?") == doctest::Approx(0.953).epsilon(1e-3));
  CHECK(c.Score("Thanks.") == doctest::Approx(Sigmoid(-2.5)).epsilon(1e-12));
  CHECK(c.Score("Thanks.") == doctest::Approx(0.076).epsilon(2e-3));
  CHECK(c.Score("what is the sourcing material of this product?") > 0.9);
}

TEST_CASE("classifier features fire as documented") {
  auto f = QuestionClassifier::Features("Could you let me know the size?");
  CHECK(f.ends_with_question);
  CHECK(f.aux_first);
  CHECK_FALSE(f.wh_first);
  CHECK(f.request_idiom);
  CHECK(f.length_in_range);
  auto g = QuestionClassifier::Features("Hi");
  CHECK_FALSE(g.length_in_range);
  CHECK_FALSE(g.ends_with_question);
}

TEST_CASE("classifier weights load from json") {
  const auto w = ClassifierWeights::FromJson(R"({"bias": -1.0, "wh_first": 4.0})");
  CHECK(w.bias == -1.0);
  CHECK(w.wh_first == 4.0);
  CHECK(w.ends_with_question == 3.0);
  QuestionClassifier c(w);
  CHECK(c.Score("Thanks.") == doctest::Approx(Sigmoid(-1.0)));
  const auto file =
      ClassifierWeights::FromFile(std::string(M2Q_RESOURCE_DIR) + "/classifier_weights.json");
  const ClassifierWeights defaults;
  CHECK(file.ends_with_question == defaults.ends_with_question);
  CHECK(file.wh_first == defaults.wh_first);
  CHECK(file.aux_first == defaults.aux_first);
  CHECK(file.request_idiom == defaults.request_idiom);
  CHECK(file.length_in_range == defaults.length_in_range);
  CHECK(file.bias == defaults.bias);
}

TEST_CASE("extract picks the intent sentence of the worked example") {
  const auto q = ExtractQuestion(Msg(kRow2), 0.5);
  REQUIRE(q.has_value());
  CHECK(q->text ==
        "I'm curious whether this Re:Zero REM figure you're selling is from the authentic "
        "Taito Coreful brand?");
  CHECK(q->method == ReformulationMethod::kExtractive);
  REQUIRE(q->source_spans.size() == 1);
  CHECK(q->source_spans[0].first == 7);
}

TEST_CASE("extract returns nothing below threshold") {
  CHECK_FALSE(ExtractQuestion(Msg("Nice store. Fast shipping last time."), 0.5).has_value());
}

TEST_CASE("single question sentence scores by the linear model") {
  const auto q = ExtractQuestion(Msg("can you ship to Canada?"), 0.5);
  REQUIRE(q.has_value());
  CHECK(q->text == "can you ship to Canada?");
  // '?' 3.0 + aux-first 2.0 + length 0.5 - 2.5.
  CHECK(q->confidence == doctest::Approx(Sigmoid(3.0)));
}

TEST_CASE("extract scrubs and terminates") {
  const auto q = ExtractQuestion(Msg("Can you ship to a.b@example.com."), 0.5);
  REQUIRE(q.has_value());
  CHECK(q->text == "Can you ship to [EMAIL]?");
}

TEST_CASE("extract is the argmax and is invariant under thresholds") {
  std::mt19937 rng(5);
  const std::vector<std::string> pool = {
      "Hello!",           "Is this waterproof?",      "Thanks.",
      "Let me know if it fits.", "What size is it?", "I bought one before.",
      "Can it be shipped?", "Great.",                  "I am able to pick it up."};
  QuestionClassifier c;
  for (int iter = 0; iter < 300; ++iter) {
    std::string text;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) text += pool[rng() % pool.size()] + " ";
    const auto scores = ScoreSentences(text, c);
    double best = 0.0;
    for (const auto& s : scores) best = std::max(best, s.confidence);
    const auto chosen = ExtractQuestion(Msg(text), 0.0, c);
    REQUIRE(chosen.has_value());
    REQUIRE(chosen->confidence == doctest::Approx(best));
    for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto q = ExtractQuestion(Msg(text), theta, c);
      REQUIRE(q.has_value() == (best >= theta));
      if (q) REQUIRE(q->text == chosen->text);
    }
  }
}

TEST_CASE("permuting trailing non-selected sentences keeps the selection") {
  const std::string head = "Hi. Is this waterproof? ";
  std::vector<std::string> tail = {"Thanks.", "Great shop.", "Bye now."};
  std::sort(tail.begin(), tail.end());
  std::string first;
  do {
    std::string text = head;
    for (const auto& t : tail) text += t + " ";
    const auto q = ExtractQuestion(Msg(text), 0.5);
    REQUIRE(q.has_value());
    if (first.empty()) first = q->text;
    CHECK(q->text == first);
  } while (std::next_permutation(tail.begin(), tail.end()));
}

TEST_CASE("ties go to the earliest sentence") {
  const auto q = ExtractQuestion(Msg("Is it red? Is it blue?"), 0.5);
  REQUIRE(q.has_value());
  CHECK(q->text == "Is it red?");
}
