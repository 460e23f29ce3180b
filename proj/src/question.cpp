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


#include "m2q/question.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "m2q/error.hpp"

namespace m2q {
namespace {

constexpr std::array<std::string_view, 7> kWhWords = {
    "what", "who", "when", "where", "why", "how", "which"};

constexpr std::array<std::string_view, 14> kAuxiliaries = {
    "is",    "are",   "do",     "does",   "did", "can",  "could",
    "will",  "would", "should", "has",    "have", "was", "were"};

constexpr std::array<std::string_view, 7> kRequestIdioms = {
    "let me know", "please tell",   "i'm curious",    "i am curious",
    "wondering if", "wondering whether", "able to"};

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

const char* ToString(ReformulationMethod method) {
  switch (method) {
    case ReformulationMethod::kExtractive: return "EXTRACTIVE";
    case ReformulationMethod::kGenerative: return "GENERATIVE";
    case ReformulationMethod::kPassthrough: return "PASSTHROUGH";
  }
  return "";
}

ClassifierWeights ClassifierWeights::FromJson(std::string_view json) {
  ClassifierWeights w;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw M2qError(ErrorCode::kInvalidConfig,
                   std::string("classifier weights: ") + e.what());
  }
  if (!doc.is_object()) {
    throw M2qError(ErrorCode::kInvalidConfig, "classifier weights must be an object");
  }
  auto read = [&](const char* key, double& field) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number()) {
      throw M2qError(ErrorCode::kInvalidConfig,
                     std::string("classifier weight not numeric: ") + key);
    }
    field = doc[key].get<double>();
  };
  read("ends_with_question", w.ends_with_question);
  read("wh_first", w.wh_first);
  read("aux_first", w.aux_first);
  read("request_idiom", w.request_idiom);
  read("length_in_range", w.length_in_range);
  read("bias", w.bias);
  return w;
}

ClassifierWeights ClassifierWeights::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw M2qError(ErrorCode::kIo, "cannot open classifier weights: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str());
}

bool QuestionClassifier::IsWhWord(std::string_view lowered) {
  for (auto w : kWhWords) {
    if (w == lowered) return true;
  }
  return false;
}

bool QuestionClassifier::IsAuxiliary(std::string_view lowered) {
  for (auto w : kAuxiliaries) {
    if (w == lowered) return true;
  }
  return false;
}

QuestionFeatures QuestionClassifier::Features(std::string_view sentence) {
  QuestionFeatures f;
  const std::string trimmed = text::Trim(sentence);
  f.ends_with_question = !trimmed.empty() && trimmed.back() == '?';
  const std::vector<std::string> tokens = text::Tokenize(trimmed);
  if (!tokens.empty()) {
    f.wh_first = IsWhWord(tokens.front());
    f.aux_first = IsAuxiliary(tokens.front());
  }
  const std::string lowered = text::ToLowerAscii(text::NormalizeQuotes(trimmed));
  for (auto idiom : kRequestIdioms) {
    if (text::ContainsPhrase(lowered, idiom)) {
      f.request_idiom = true;
      break;
    }
  }
  f.length_in_range = tokens.size() >= 3 && tokens.size() <= 30;
  return f;
}

double QuestionClassifier::Score(std::string_view sentence) const {
  const QuestionFeatures f = Features(sentence);
  double z = weights_.bias;
  if (f.ends_with_question) z += weights_.ends_with_question;
  if (f.wh_first) z += weights_.wh_first;
  if (f.aux_first) z += weights_.aux_first;
  if (f.request_idiom) z += weights_.request_idiom;
  if (f.length_in_range) z += weights_.length_in_range;
  return Sigmoid(z);
}

std::vector<SentenceScore> ScoreSentences(std::string_view message_text,
                                          const QuestionClassifier& classifier) {
  std::vector<SentenceScore> out;
  for (text::Sentence& s : text::SegmentSentences(message_text)) {
    double score = classifier.Score(s.text);
    out.push_back({std::move(s), score});
  }
  return out;
}

std::optional<ReformulatedQuestion> ExtractQuestion(const text::RawMessage& message,
                                                    double threshold,
                                                    const QuestionClassifier& classifier) {
  const std::vector<SentenceScore> scored = ScoreSentences(message.text, classifier);
  const SentenceScore* best = nullptr;
  for (const SentenceScore& s : scored) {
    if (best == nullptr || s.confidence > best->confidence) best = &s;
  }
  if (best == nullptr || best->confidence < threshold) return std::nullopt;

  std::string question = text::ScrubPii(best->sentence.text).text;
  while (!question.empty() &&
         (question.back() == '.' || question.back() == '!' || text::IsSpace(question.back()))) {
    question.pop_back();
  }
  if (question.empty() || question.back() != '?') question += '?';

  ReformulatedQuestion out;
  out.text = std::move(question);
  out.method = ReformulationMethod::kExtractive;
  out.confidence = best->confidence;
  out.source_spans.emplace_back(best->sentence.start, best->sentence.end);
  return out;
}

}  // namespace m2q
