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

#include <chrono>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "m2q/error.hpp"
#include "m2q/question.hpp"
#include "m2q/text.hpp"

namespace m2q {

// Rewrites a whole buyer message into one succinct standalone question.
// Implementations must be safe to call concurrently.
class Reformulator {
 public:
  virtual ~Reformulator() = default;
  virtual Result<ReformulatedQuestion> Reformulate(const text::RawMessage& message) const = 0;
};

// Successful reformulations never exceed this many tokens.
inline constexpr std::size_t kMaxQuestionTokens = 30;

// A trigger is a case-insensitive ECMAScript regex matched against a
// sentence (typographic quotes already folded to ASCII). Everything after the
// match, minus trailing punctuation, is the remainder X. The rewrite template
// understands:
//   {X}               the remainder verbatim
//   {X|invert}        subject-auxiliary inversion ("this is red" -> "is this red");
//                     prefixes "is" when no auxiliary is found
//   {X|drop_copula}   remainder without its first "is"/"are"
//   {X|passive}       "VERB OBJ REST" -> "VERB-ed REST" (object dropped)
//   {1}..{9}          capture groups of the trigger
struct IntentPattern {
  std::string trigger;
  std::string rewrite;
  int priority = 0;
};

const std::vector<IntentPattern>& DefaultIntentPatterns();

// JSON array of {"trigger", "rewrite", "priority"} objects.
std::vector<IntentPattern> LoadIntentPatterns(const std::string& path);
std::vector<IntentPattern> ParseIntentPatterns(std::string_view json);

// Regular past participle with consonant doubling, e-elision and y->ied,
// backed by a table of common irregular verbs.
std::string PastParticiple(std::string_view verb);

struct RuleBasedOptions {
  double question_threshold = 0.5;
  ClassifierWeights weights;
  std::vector<IntentPattern> patterns = DefaultIntentPatterns();
};

class RuleBasedReformulator final : public Reformulator {
 public:
  RuleBasedReformulator();
  explicit RuleBasedReformulator(RuleBasedOptions options);

  Result<ReformulatedQuestion> Reformulate(const text::RawMessage& message) const override;

  struct Normalized {
    std::string text;
    bool possessive = false;  // "their X" seen; "for this product" owed
  };
  // Collapses mentions of the product being sold into "this product".
  static Normalized NormalizeProductMentions(std::string_view sentence);

 private:
  struct CompiledPattern {
    IntentPattern spec;
    std::regex regex;
  };
  struct PatternHit {
    const CompiledPattern* pattern = nullptr;
    std::smatch match;
    std::size_t position = 0;
  };
  bool FindPattern(const std::string& sentence, PatternHit& hit) const;
  static std::string Render(const PatternHit& hit, const std::string& sentence);

  RuleBasedOptions options_;
  QuestionClassifier classifier_;
  std::vector<CompiledPattern> compiled_;
};

// Lowercases (keeping PII placeholders), collapses whitespace, strips
// trailing punctuation, appends a single '?' and caps the token count.
std::string FinalizeQuestion(std::string_view question, std::size_t max_tokens);

struct RemoteModelConfig {
  std::string endpoint;  // http://host:port[/prefix]
  std::chrono::milliseconds timeout{2000};
  int max_output_tokens = 32;

  // Throws M2qError(kInvalidConfig) on violated invariants.
  void Validate() const;
};

// Client for an external seq2seq inference server:
//   POST {endpoint}/v1/reformulate  {"text": str, "max_tokens": int}
//   200 -> {"question": str, "model_id": str}
// PII is scrubbed before anything leaves the process.
class RemoteReformulator final : public Reformulator {
 public:
  explicit RemoteReformulator(RemoteModelConfig config);
  Result<ReformulatedQuestion> Reformulate(const text::RawMessage& message) const override;

 private:
  RemoteModelConfig config_;
  QuestionClassifier classifier_;
};

}  // namespace m2q
