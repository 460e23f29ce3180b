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


#include <random>
#include <set>

#include "doctest.h"
#include "m2q/generative.hpp"

using namespace m2q;

namespace {

text::RawMessage Msg(std::string body) {
  text::RawMessage m;
  m.id = "g";
  m.text = std::move(body);
  return m;
}

std::string Rewrite(const std::string& body) {
  static const RuleBasedReformulator r;
  auto q = r.Reformulate(Msg(body));
  REQUIRE_MESSAGE(q.ok(), body);
  return q->text;
}

// Multiset token overlap F1, written independently of the metrics module.
double BagF1(const std::string& a, const std::string& b) {
  auto ta = text::Tokenize(a);
  auto tb = text::Tokenize(b);
  std::multiset<std::string> mb(tb.begin(), tb.end());
  double overlap = 0;
  for (const auto& t : ta) {
    auto it = mb.find(t);
    if (it != mb.end()) {
      mb.erase(it);
      ++overlap;
    }
  }
  if (overlap == 0) return 0;
  const double p = overlap / ta.size();
  const double r = overlap / tb.size();
  return 2 * p * r / (p + r);
}

}  // namespace

TEST_CASE("worked reformulation rows") {
  CHECK(Rewrite("Hello! I'm curious whether this Re:Zero REM figure you're selling is from the "
                "authentic Taito Coreful brand? Thank you.") ==
        "is this product from the authentic taito coreful brand?");
  CHECK(Rewrite("My family surname is not a known surname. Are you able to create a family crest "
                "with all the emblems and mottos? Looking forward to hear from you.") ==
        "can this product be created with all the emblems and mottos?");
  const std::string row1 = Rewrite(
      "I'm trying to look into Forids trash bags, and have found that the website and facebook "
      "on the box dont exist :( I'm curious about their sourcing and material is used !!");
  CHECK(row1 == "what is the sourcing and material used for this product?");
  CHECK(BagF1(row1, "what is the sourcing material used for this product?") >= 0.7);
}

TEST_CASE("typographic apostrophes behave like ascii ones") {
  CHECK(Rewrite("Hello! I\xE2\x80\x99m curious whether this Re:Zero REM figure you\xE2\x80\x99re "
                "selling is from the authentic Taito Coreful brand? Thank you.") ==
        "is this product from the authentic taito coreful brand?");
}

TEST_CASE("pattern table rewrites") {
  CHECK(Rewrite("Hi. I was wondering if this lamp is available in blue. Thanks.") ==
        "is this product available in blue?");
  CHECK(Rewrite("Would you be able to ship this blender to Canada.") ==
        "can this product be shipped to canada?");
  CHECK(Rewrite("Is it possible to engrave this watch with my initials.") ==
        "can this product be engraved with my initials?");
  CHECK(Rewrite("Please let me know what material this jacket is made of.") ==
        "what material is this product made of?");
  CHECK(Rewrite("I need to know how many pieces this kit includes.") ==
        "how many pieces does this product include?");
  CHECK(Rewrite("I would like to know whether this chair comes with a warranty.") ==
        "does this product come with a warranty?");
  CHECK(Rewrite("I'm wondering if this backpack has a laptop sleeve.") ==
        "does this product have a laptop sleeve?");
  CHECK(Rewrite("Can you ship this blender to Canada?") == "can this product be shipped to canada?");
}

TEST_CASE("interrogative clauses pass through") {
  CHECK(Rewrite("Hi there. What material is this jacket made of? Thanks.") ==
        "what material is this product made of?");
}

TEST_CASE("no intent is an error") {
  RuleBasedReformulator r;
  auto q = r.Reformulate(Msg("Nice store. Fast shipping last time."));
  REQUIRE_FALSE(q.ok());
  CHECK(q.error().code == ErrorCode::kNoIntentFound);
}

TEST_CASE("past participles") {
  CHECK(PastParticiple("create") == "created");
  CHECK(PastParticiple("ship") == "shipped");
  CHECK(PastParticiple("make") == "made");
  CHECK(PastParticiple("customize") == "customized");
  CHECK(PastParticiple("carry") == "carried");
  CHECK(PastParticiple("deliver") == "delivered");
  CHECK(PastParticiple("stay") == "stayed");
  CHECK(PastParticiple("engrave") == "engraved");
  CHECK(PastParticiple("sew") == "sewn");
}

TEST_CASE("finalize lowercases, terminates and caps length") {
  CHECK(FinalizeQuestion("Is THIS ok!!", 30) == "is this ok?");
  CHECK(FinalizeQuestion("mail [EMAIL] now.", 30) == "mail [EMAIL] now?");
  std::string long_q;
  for (int i = 0; i < 50; ++i) long_q += "word ";
  CHECK(text::Tokenize(FinalizeQuestion(long_q, 30)).size() <= 30);
}

TEST_CASE("canonical questions reformulate to themselves") {
  for (const char* q : {"is this product waterproof?", "can this product be shipped to canada?",
                        "what material is this product made of?",
                        "does this product come with a warranty?",
                        "how many pieces does this product include?"}) {
    CHECK(Rewrite(q) == q);
  }
}

TEST_CASE("outputs are short, terminated, deterministic and PII free") {
  std::mt19937 rng(11);
  const std::vector<std::string> intents = {
      "I'm curious whether this shirt is machine washable.",
      "Would you be able to ship this lamp to a.b@example.com.",
      "Please let me know if you can call 555-123-4567 about this kit.",
      "Is this mug sold at www.mugs.example?",
      "I was wondering if this tent fits four people.",
      "Can you deliver this speaker before Friday?"};
  const std::vector<std::string> fillers = {
      "Hello.", "My old one broke last week after many years.",
      "Reach me at jo@mail.example if needed.", "Thanks so much.",
      "I have been shopping around for a while now and your price is the best."};
  RuleBasedReformulator r;
  for (int iter = 0; iter < 200; ++iter) {
    std::string body = fillers[rng() % fillers.size()] + " " + intents[rng() % intents.size()] +
                       " " + fillers[rng() % fillers.size()];
    auto a = r.Reformulate(Msg(body));
    auto b = r.Reformulate(Msg(body));
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a->text == b->text);
    CHECK(a->text.back() == '?');
    CHECK(text::Tokenize(a->text).size() <= kMaxQuestionTokens);
    CHECK(text::ScrubPii(a->text).redactions.empty());
    CHECK(a->method == ReformulationMethod::kGenerative);
  }
}

TEST_CASE("intent patterns load from json and the shipped file matches the defaults") {
  const auto parsed = ParseIntentPatterns(
      R"([{"trigger": "do you sell", "rewrite": "is {X} sold?", "priority": 5}])");
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].priority == 5);
  CHECK_THROWS_AS(ParseIntentPatterns(R"([{"trigger": "x", "rewrite": "no mark", "priority": 1}])"),
                  M2qError);
  const auto file = LoadIntentPatterns(std::string(M2Q_RESOURCE_DIR) + "/intent_patterns.json");
  const auto& defaults = DefaultIntentPatterns();
  REQUIRE(file.size() == defaults.size());
  for (std::size_t i = 0; i < file.size(); ++i) {
    CHECK(file[i].trigger == defaults[i].trigger);
    CHECK(file[i].rewrite == defaults[i].rewrite);
    CHECK(file[i].priority == defaults[i].priority);
  }
}

TEST_CASE("custom patterns drive the rewrite") {
  RuleBasedOptions options;
  options.patterns = {{"do you sell", "is {X} sold here?", 10}};
  RuleBasedReformulator r(options);
  auto q = r.Reformulate(Msg("Hey. Do you sell replacement straps for this watch."));
  REQUIRE(q.ok());
  CHECK(q->text == "is replacement straps for this product sold here?");
}

TEST_CASE("remote config validation") {
  RemoteModelConfig c;
  CHECK_THROWS_AS(c.Validate(), M2qError);
  c.endpoint = "http://127.0.0.1:1";
  CHECK_NOTHROW(c.Validate());
  c.max_output_tokens = 3;
  CHECK_THROWS_AS(c.Validate(), M2qError);
  c.max_output_tokens = 64;
  c.timeout = std::chrono::milliseconds(0);
  CHECK_THROWS_AS(c.Validate(), M2qError);
}
