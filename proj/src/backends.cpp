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


#include "m2q/backends.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"

namespace m2q {
namespace {

std::vector<std::string> SortedUnique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t IntersectionSize(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::string Underscores(std::string s) {
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

template <typename Fn>
void ForEachJsonLine(const std::string& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw M2qError(ErrorCode::kIo, "cannot open store: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    auto fail = [&](const std::string& why) {
      throw M2qError(ErrorCode::kSchema, path + ":" + std::to_string(line_no) + ": " + why);
    };
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) fail("not a JSON object");
    fn(doc, fail);
  }
}

template <typename Fail>
std::string RequireString(const nlohmann::json& doc, const char* key, Fail&& fail) {
  if (!doc.contains(key) || !doc[key].is_string()) fail(std::string("missing string field ") + key);
  return doc[key].get<std::string>();
}

std::vector<std::string> Words(std::string_view s) {
  std::vector<std::string> out;
  for (std::string& t : text::Tokenize(s)) {
    if (!text::IsPunctuationToken(t)) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::vector<CatalogRecord> LoadCatalog(const std::string& path) {
  std::vector<CatalogRecord> out;
  ForEachJsonLine(path, [&](const nlohmann::json& doc, auto&& fail) {
    CatalogRecord r;
    r.product_id = RequireString(doc, "product_id", fail);
    if (!doc.contains("attributes") || !doc["attributes"].is_object()) {
      fail("missing object field attributes");
    }
    for (const auto& [name, value] : doc["attributes"].items()) {
      if (!value.is_string()) fail("attribute value must be a string: " + name);
      r.attributes.emplace_back(name, value.template get<std::string>());
    }
    if (doc.contains("synonyms")) {
      if (!doc["synonyms"].is_object()) fail("synonyms must be an object");
      for (const auto& [name, list] : doc["synonyms"].items()) {
        if (!list.is_array()) fail("synonym list must be an array: " + name);
        for (const auto& s : list) {
          if (!s.is_string()) fail("synonym must be a string");
          r.synonyms[name].push_back(s.template get<std::string>());
        }
      }
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<QaPair> LoadCommunityQa(const std::string& path) {
  std::vector<QaPair> out;
  ForEachJsonLine(path, [&](const nlohmann::json& doc, auto&& fail) {
    QaPair p;
    p.qa_id = RequireString(doc, "qa_id", fail);
    p.product_id = RequireString(doc, "product_id", fail);
    p.question = RequireString(doc, "question", fail);
    p.answer = RequireString(doc, "answer", fail);
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<Review> LoadReviews(const std::string& path) {
  std::vector<Review> out;
  ForEachJsonLine(path, [&](const nlohmann::json& doc, auto&& fail) {
    Review r;
    r.review_id = RequireString(doc, "review_id", fail);
    r.product_id = RequireString(doc, "product_id", fail);
    r.text = RequireString(doc, "text", fail);
    out.push_back(std::move(r));
  });
  return out;
}

CatalogBackend::CatalogBackend(std::vector<CatalogRecord> records) {
  for (CatalogRecord& r : records) {
    auto& attrs = products_[r.product_id];
    for (auto& [name, value] : r.attributes) {
      std::vector<std::string> tokens = Words(Underscores(name));
      if (auto it = r.synonyms.find(name); it != r.synonyms.end()) {
        for (const std::string& syn : it->second) {
          for (std::string& t : Words(syn)) tokens.push_back(std::move(t));
        }
      }
      attrs.push_back({name, value, SortedUnique(std::move(tokens))});
    }
  }
}

BackendResult CatalogBackend::Query(const ReformulatedQuestion& question,
                                    std::string_view product_id) const {
  BackendResult result;
  result.backend_id = id_;
  result.understand_score = classifier_.Score(question.text);
  auto it = products_.find(std::string(product_id));
  if (it == products_.end()) return result;
  const std::vector<std::string> q = SortedUnique(text::ContentTokens(question.text));
  if (q.empty()) return result;
  for (const Attribute& a : it->second) {
    const std::size_t inter = IntersectionSize(q, a.tokens);
    if (inter == 0) continue;
    const std::size_t uni = q.size() + a.tokens.size() - inter;
    AnswerCandidate c;
    c.text = text::ToLowerAscii("the " + Underscores(a.name) + " is " + a.value + ".");
    c.confidence = static_cast<double>(inter) / static_cast<double>(uni);
    c.backend_id = id_;
    c.evidence_id = a.name;
    result.candidates.push_back(std::move(c));
  }
  SortCandidates(result.candidates);
  return result;
}

CommunityQaBackend::CommunityQaBackend(std::vector<QaPair> pairs, Bm25Params params)
    : pairs_(std::move(pairs)), params_(params) {
  std::size_t total = 0;
  docs_.reserve(pairs_.size());
  for (const QaPair& p : pairs_) {
    Doc d;
    for (const std::string& t : text::ContentTokens(p.question)) {
      ++d.tf[t];
      ++d.length;
    }
    for (const auto& [term, count] : d.tf) ++df_[term];
    total += d.length;
    docs_.push_back(std::move(d));
  }
  avgdl_ = docs_.empty() ? 0.0 : static_cast<double>(total) / docs_.size();
}

double CommunityQaBackend::Idf(const std::string& term) const {
  const double n = static_cast<double>(docs_.size());
  auto it = df_.find(term);
  const double df = it == df_.end() ? 0.0 : it->second;
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double CommunityQaBackend::Score(const std::vector<std::string>& query_terms,
                                 const std::unordered_map<std::string, int>& doc_tf,
                                 std::size_t doc_len) const {
  const double avgdl = avgdl_ > 0.0 ? avgdl_ : 1.0;
  const double norm = params_.k1 * (1.0 - params_.b + params_.b * doc_len / avgdl);
  double score = 0.0;
  for (const std::string& t : query_terms) {
    auto it = doc_tf.find(t);
    if (it == doc_tf.end()) continue;
    const double tf = it->second;
    score += Idf(t) * tf * (params_.k1 + 1.0) / (tf + norm);
  }
  return score;
}

BackendResult CommunityQaBackend::Query(const ReformulatedQuestion& question,
                                        std::string_view product_id) const {
  BackendResult result;
  result.backend_id = id_;
  result.understand_score = classifier_.Score(question.text);
  if (pairs_.empty()) return result;

  std::unordered_map<std::string, int> query_tf;
  std::size_t query_len = 0;
  for (const std::string& t : text::ContentTokens(question.text)) {
    ++query_tf[t];
    ++query_len;
  }
  if (query_len == 0) return result;
  std::vector<std::string> terms;
  for (const auto& [term, count] : query_tf) terms.push_back(term);
  std::sort(terms.begin(), terms.end());

  const double self = Score(terms, query_tf, query_len);
  if (self <= 0.0) return result;

  struct Hit {
    std::size_t index;
    double score;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const QaPair& p = pairs_[i];
    if (!product_id.empty() && !p.product_id.empty() && p.product_id != product_id) continue;
    const double s = Score(terms, docs_[i].tf, docs_[i].length);
    if (s > 0.0) hits.push_back({i, s});
  }
  std::sort(hits.begin(), hits.end(), [&](const Hit& a, const Hit& b) {
    if (a.score != b.score) return a.score > b.score;
    return pairs_[a.index].qa_id < pairs_[b.index].qa_id;
  });
  if (hits.size() > kTopK) hits.resize(kTopK);
  for (const Hit& h : hits) {
    AnswerCandidate c;
    c.text = pairs_[h.index].answer;
    c.confidence = std::clamp(h.score / self, 0.0, 1.0);
    c.backend_id = id_;
    c.evidence_id = pairs_[h.index].qa_id;
    result.candidates.push_back(std::move(c));
  }
  SortCandidates(result.candidates);
  return result;
}

ReviewBackend::ReviewBackend(std::vector<Review> reviews, double dampening)
    : dampening_(dampening) {
  for (const Review& r : reviews) {
    auto& sentences = products_[r.product_id];
    for (const text::Sentence& s : text::SegmentSentences(r.text)) {
      sentences.push_back({r.review_id + "#" + std::to_string(s.index), s.text,
                           SortedUnique(text::ContentTokens(s.text))});
    }
  }
}

BackendResult ReviewBackend::Query(const ReformulatedQuestion& question,
                                   std::string_view product_id) const {
  BackendResult result;
  result.backend_id = id_;
  result.understand_score = classifier_.Score(question.text);
  auto it = products_.find(std::string(product_id));
  if (it == products_.end()) return result;
  const std::vector<std::string> q = SortedUnique(text::ContentTokens(question.text));
  if (q.empty()) return result;
  for (const ReviewSentence& s : it->second) {
    const std::size_t inter = IntersectionSize(q, s.tokens);
    if (inter == 0) continue;
    AnswerCandidate c;
    c.text = s.text;
    c.confidence = dampening_ * static_cast<double>(inter) / static_cast<double>(q.size());
    c.backend_id = id_;
    c.evidence_id = s.evidence_id;
    result.candidates.push_back(std::move(c));
  }
  SortCandidates(result.candidates);
  if (result.candidates.size() > kTopK) result.candidates.resize(kTopK);
  return result;
}

BackendList MakeDefaultBackends(std::vector<CatalogRecord> catalog, std::vector<QaPair> qa,
                                std::vector<Review> reviews) {
  BackendList out;
  out.push_back(std::make_shared<CatalogBackend>(std::move(catalog)));
  out.push_back(std::make_shared<CommunityQaBackend>(std::move(qa)));
  out.push_back(std::make_shared<ReviewBackend>(std::move(reviews)));
  return out;
}

BackendList MakeDefaultBackends(const StorePaths& paths) {
  return MakeDefaultBackends(
      paths.catalog.empty() ? std::vector<CatalogRecord>{} : LoadCatalog(paths.catalog),
      paths.community_qa.empty() ? std::vector<QaPair>{} : LoadCommunityQa(paths.community_qa),
      paths.reviews.empty() ? std::vector<Review>{} : LoadReviews(paths.reviews));
}

}  // namespace m2q
