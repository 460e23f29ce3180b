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


#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "m2q/federation.hpp"
#include "m2q/question.hpp"

namespace m2q {

// Store records. Files are JSONL, UTF-8, one record per line.
//   catalog:      {"product_id", "attributes": {name: value}, "synonyms": {name: [str]}}
//   community_qa: {"qa_id", "product_id", "question", "answer"}
//   reviews:      {"review_id", "product_id", "text"}
struct CatalogRecord {
  std::string product_id;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::map<std::string, std::vector<std::string>> synonyms;
};

struct QaPair {
  std::string qa_id;
  std::string product_id;
  std::string question;
  std::string answer;
};

struct Review {
  std::string review_id;
  std::string product_id;
  std::string text;
};

// Throw M2qError(kIo) or M2qError(kSchema, "<path>:<line>: ...").
std::vector<CatalogRecord> LoadCatalog(const std::string& path);
std::vector<QaPair> LoadCommunityQa(const std::string& path);
std::vector<Review> LoadReviews(const std::string& path);

// Scores each product attribute by Jaccard overlap between the question's
// content tokens and the attribute name plus synonyms.
class CatalogBackend final : public AnswerBackend {
 public:
  explicit CatalogBackend(std::vector<CatalogRecord> records);
  const std::string& id() const override { return id_; }
  BackendResult Query(const ReformulatedQuestion& question,
                      std::string_view product_id) const override;

 private:
  struct Attribute {
    std::string name;
    std::string value;
    std::vector<std::string> tokens;  // sorted, unique
  };
  std::string id_ = "catalog";
  std::unordered_map<std::string, std::vector<Attribute>> products_;
  QuestionClassifier classifier_;
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

// Okapi BM25 over stored question texts. Confidence is the best score divided
// by the query's score against itself, so a stored question asked verbatim
// scores exactly 1.
class CommunityQaBackend final : public AnswerBackend {
 public:
  explicit CommunityQaBackend(std::vector<QaPair> pairs, Bm25Params params = {});
  const std::string& id() const override { return id_; }
  BackendResult Query(const ReformulatedQuestion& question,
                      std::string_view product_id) const override;

  double Idf(const std::string& term) const;
  // BM25 of `query_terms` against a document with the given term counts/length.
  double Score(const std::vector<std::string>& query_terms,
               const std::unordered_map<std::string, int>& doc_tf,
               std::size_t doc_len) const;

  static constexpr std::size_t kTopK = 3;

 private:
  struct Doc {
    std::unordered_map<std::string, int> tf;
    std::size_t length = 0;
  };
  std::string id_ = "community_qa";
  std::vector<QaPair> pairs_;
  std::vector<Doc> docs_;
  std::unordered_map<std::string, int> df_;
  double avgdl_ = 0.0;
  Bm25Params params_;
  QuestionClassifier classifier_;
};

// Review sentences scored by the share of question content tokens they
// contain, damped because reviews are weaker evidence than curated answers.
class ReviewBackend final : public AnswerBackend {
 public:
  static constexpr double kDefaultDampening = 0.8;
  static constexpr std::size_t kTopK = 3;

  explicit ReviewBackend(std::vector<Review> reviews, double dampening = kDefaultDampening);
  const std::string& id() const override { return id_; }
  BackendResult Query(const ReformulatedQuestion& question,
                      std::string_view product_id) const override;

 private:
  struct ReviewSentence {
    std::string evidence_id;
    std::string text;
    std::vector<std::string> tokens;  // sorted, unique
  };
  std::string id_ = "reviews";
  std::unordered_map<std::string, std::vector<ReviewSentence>> products_;
  double dampening_;
  QuestionClassifier classifier_;
};

struct StorePaths {
  std::string catalog;
  std::string community_qa;
  std::string reviews;
};

// catalog, community_qa, reviews in that registration order; empty paths
// yield empty stores.
BackendList MakeDefaultBackends(const StorePaths& paths);
BackendList MakeDefaultBackends(std::vector<CatalogRecord> catalog, std::vector<QaPair> qa,
                                std::vector<Review> reviews);

}  // namespace m2q
