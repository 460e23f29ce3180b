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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "m2q/text.hpp"

namespace m2q {

enum class ReformulationMethod { kExtractive, kGenerative, kPassthrough };

const char* ToString(ReformulationMethod method);

struct ReformulatedQuestion {
  std::string text;
  ReformulationMethod method = ReformulationMethod::kExtractive;
  double confidence = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> source_spans;
};

// Linear question-likelihood model over five binary features. Weights are
// published so every score can be checked by hand:
//
//   ends_with_question  3.0   last character is '?'
//   wh_first            2.0   first token in {what,who,when,where,why,how,which}
//   aux_first           2.0   first token is an auxiliary verb
//   request_idiom       1.5   contains "let me know", "i'm curious", "able to", ...
//   length_in_range     0.5   3 <= token count <= 30
//   bias               -2.5
struct ClassifierWeights {
  double ends_with_question = 3.0;
  double wh_first = 2.0;
  double aux_first = 2.0;
  double request_idiom = 1.5;
  double length_in_range = 0.5;
  double bias = -2.5;

  // JSON object keyed by the field names above; missing keys keep defaults.
  static ClassifierWeights FromFile(const std::string& path);
  static ClassifierWeights FromJson(std::string_view json);
};

struct QuestionFeatures {
  bool ends_with_question = false;
  bool wh_first = false;
  bool aux_first = false;
  bool request_idiom = false;
  bool length_in_range = false;
};

class QuestionClassifier {
 public:
  QuestionClassifier() = default;
  explicit QuestionClassifier(ClassifierWeights weights) : weights_(weights) {}

  static QuestionFeatures Features(std::string_view sentence);
  double Score(std::string_view sentence) const;
  const ClassifierWeights& weights() const { return weights_; }

  static bool IsWhWord(std::string_view lowered);
  static bool IsAuxiliary(std::string_view lowered);

 private:
  ClassifierWeights weights_;
};

struct SentenceScore {
  text::Sentence sentence;
  double confidence = 0.0;
};

std::vector<SentenceScore> ScoreSentences(std::string_view message_text,
                                          const QuestionClassifier& classifier);

// Picks the most question-like sentence (earliest on ties) and returns it,
// PII-scrubbed and '?'-terminated, iff its score reaches `threshold`.
std::optional<ReformulatedQuestion> ExtractQuestion(
    const text::RawMessage& message, double threshold,
    const QuestionClassifier& classifier = QuestionClassifier());

}  // namespace m2q
