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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "doctest.h"
#include "m2q/backends.hpp"

using namespace m2q;

namespace {

ReformulatedQuestion Q(std::string text) {
  ReformulatedQuestion q;
  q.text = std::move(text);
  return q;
}

std::string WriteTemp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("m2q_backends_" + name);
  std::ofstream(path) << body;
  return path.string();
}

std::optional<ErrorCode> CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const M2qError& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("bm25 against a hand computation") {
  const std::vector<QaPair> pairs = {{"Q1", "P", "Is this jacket waterproof?", "yes"},
                                     {"Q2", "P", "What color is the jacket?", "navy"},
                                     {"Q3", "P", "Does the tent have a warranty?", "two years"}};
  // Content tokens per document, each of length two, so every length norm is k1.
  REQUIRE(text::ContentTokens(pairs[0].question) == std::vector<std::string>{"jacket", "waterproof"});
  REQUIRE(text::ContentTokens(pairs[1].question) == std::vector<std::string>{"color", "jacket"});
  REQUIRE(text::ContentTokens(pairs[2].question) == std::vector<std::string>{"tent", "warranty"});

  CommunityQaBackend qa(pairs);
  const double idf_jacket = std::log(1.0 + (3 - 2 + 0.5) / (2 + 0.5));
  const double idf_waterproof = std::log(1.0 + (3 - 1 + 0.5) / (1 + 0.5));
  CHECK(qa.Idf("jacket") == doctest::Approx(idf_jacket));
  CHECK(qa.Idf("waterproof") == doctest::Approx(idf_waterproof));
  CHECK(qa.Idf("absent") == doctest::Approx(std::log(1.0 + 3.5 / 0.5)));

  const auto r = qa.Query(Q("is this jacket waterproof?"), "P");
  REQUIRE(r.candidates.size() == 2);
  CHECK(r.candidates[0].evidence_id == "Q1");
  CHECK(r.candidates[0].confidence == doctest::Approx(1.0));
  CHECK(r.candidates[0].text == "yes");
  CHECK(r.candidates[1].evidence_id == "Q2");
  CHECK(r.candidates[1].confidence ==
        doctest::Approx(idf_jacket / (idf_jacket + idf_waterproof)));
  CHECK(r.backend_id == "community_qa");
}

TEST_CASE("bm25 length normalization") {
  CommunityQaBackend qa({{"A", "P", "jacket", "a"}, {"B", "P", "jacket jacket zipper hood", "b"}});
  // avgdl = 2.5; tf 1 in a length-1 document.
  const double k1 = 1.2, b = 0.75, avgdl = 2.5;
  const double idf = std::log(1.0 + (2 - 2 + 0.5) / 2.5);
  const double expected = idf * (1 * (k1 + 1)) / (1 + k1 * (1 - b + b * 1 / avgdl));
  CHECK(qa.Score({"jacket"}, {{"jacket", 1}}, 1) == doctest::Approx(expected));
  const double expected2 = idf * (2 * (k1 + 1)) / (2 + k1 * (1 - b + b * 4 / avgdl));
  CHECK(qa.Score({"jacket"}, {{"jacket", 2}, {"zipper", 1}, {"hood", 1}}, 4) ==
        doctest::Approx(expected2));
}

TEST_CASE("community qa respects product scope") {
  CommunityQaBackend qa({{"Q1", "P", "Is this jacket waterproof?", "yes"},
                         {"Q2", "R", "Is this jacket waterproof?", "no"}});
  const auto r = qa.Query(Q("is this jacket waterproof?"), "R");
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].text == "no");
}

TEST_CASE("catalog scores attributes by jaccard overlap") {
  CatalogRecord rec;
  rec.product_id = "P";
  rec.attributes = {{"battery_life", "10 hours"}, {"color", "black"}};
  rec.synonyms["battery_life"] = {"battery last"};
  CatalogBackend cat({rec});
  const auto r = cat.Query(Q("what is the battery life?"), "P");
  REQUIRE(r.candidates.size() == 1);
  // {battery, life} vs {battery, life, last}.
  CHECK(r.candidates[0].confidence == doctest::Approx(2.0 / 3.0));
  CHECK(r.candidates[0].text == "the battery life is 10 hours.");
  CHECK(r.candidates[0].evidence_id == "battery_life");
  CHECK(cat.Query(Q("what is the battery life?"), "other").candidates.empty());
}

TEST_CASE("reviews score by damped content overlap") {
  ReviewBackend rev({{"R1", "P", "Great tent. It stays waterproof in heavy rain."}});
  const auto r = rev.Query(Q("is this tent waterproof?"), "P");
  REQUIRE(r.candidates.size() == 2);
  CHECK(r.candidates[0].confidence == doctest::Approx(0.8 * 0.5));
  CHECK(r.candidates[0].evidence_id == "R1#0");
  CHECK(r.candidates[1].evidence_id == "R1#1");
}

TEST_CASE("loaders report schema errors with line numbers") {
  const auto cat = WriteTemp("cat.jsonl", "{\"product_id\": \"P\", \"attributes\": {}}\n\n{\"product_id\": 3}\n");
  try {
    LoadCatalog(cat);
    FAIL("expected a schema error");
  } catch (const M2qError& e) {
    CHECK(e.code() == ErrorCode::kSchema);
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  const auto qa = WriteTemp("qa.jsonl", "not json\n");
  CHECK(CodeOf([&] { LoadCommunityQa(qa); }) == ErrorCode::kSchema);
  const auto rev = WriteTemp("rev.jsonl", "{\"review_id\": \"R\", \"product_id\": \"P\"}\n");
  CHECK(CodeOf([&] { LoadReviews(rev); }) == ErrorCode::kSchema);
  CHECK(CodeOf([] { LoadReviews("/nonexistent/m2q/reviews.jsonl"); }) == ErrorCode::kIo);
  const auto good = WriteTemp("good.jsonl",
                              "{\"qa_id\": \"Q\", \"product_id\": \"P\", \"question\": \"q?\", "
                              "\"answer\": \"a\"}\n");
  CHECK(LoadCommunityQa(good).size() == 1);
}

TEST_CASE("default backends register in a fixed order") {
  const auto list = MakeDefaultBackends({}, {}, {});
  REQUIRE(list.size() == 3);
  CHECK(list[0]->id() == "catalog");
  CHECK(list[1]->id() == "community_qa");
  CHECK(list[2]->id() == "reviews");
}
