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
#include <optional>
#include <string>

#include "m2q/federation.hpp"
#include "m2q/generative.hpp"
#include "m2q/question.hpp"
#include "m2q/text.hpp"

namespace m2q {

enum class Strategy { kExtractiveOnly, kM2q, kM2qHybrid, kPassthrough };

const char* ToString(Strategy strategy);
// Accepts EXTRACTIVE_ONLY, M2Q, M2Q_HYBRID, PASSTHROUGH (any case).
std::optional<Strategy> ParseStrategy(std::string_view name);

enum class Routing { kInstantAnswer, kForwardToSeller };

enum class RoutingReason {
  kAnswered,
  kNotUnderstood,
  kNoAnswer,
  kNotEnglish,
  kNoIntent,
  kUpstreamFailure,
};

const char* ToString(Routing routing);
const char* ToString(RoutingReason reason);

struct PipelineConfig {
  Strategy strategy = Strategy::kM2qHybrid;
  double question_threshold = 0.5;    // theta_q
  double understand_threshold = 0.4;  // theta_u
  double answer_threshold = 0.6;      // theta_a
  double english_threshold = 0.5;
  std::chrono::milliseconds federation_deadline{250};

  // Throws M2qError(kInvalidConfig).
  void Validate() const;
};

// Per-call counters; lets callers observe which stages actually ran.
struct PipelineTrace {
  int extractive_calls = 0;
  int generative_calls = 0;
  int federation_calls = 0;
};

struct RoutingOutcome {
  Routing routing = Routing::kForwardToSeller;
  RoutingReason reason = RoutingReason::kNoIntent;
  std::optional<ReformulatedQuestion> question;
  std::optional<AnswerCandidate> answer;
  std::optional<double> confidence;
  // Understand score of the last federation, when one ran.
  std::optional<double> understand_score;
  PipelineTrace trace;
};

// Terminal routing: reformulate, federate, threshold. Stateless apart from its
// immutable collaborators, so one instance serves concurrent callers.
class Pipeline {
 public:
  Pipeline(std::shared_ptr<const Reformulator> generative, BackendList backends,
           QuestionClassifier classifier = QuestionClassifier());

  RoutingOutcome Answer(const text::RawMessage& message, const PipelineConfig& config) const;

  // Federates an already reformulated question and applies theta_u / theta_a.
  RoutingOutcome Route(const ReformulatedQuestion& question, const text::RawMessage& message,
                       const PipelineConfig& config, PipelineTrace& trace) const;

  const BackendList& backends() const { return backends_; }
  const QuestionClassifier& classifier() const { return classifier_; }

 private:
  RoutingOutcome Generative(const text::RawMessage& message, const PipelineConfig& config,
                            PipelineTrace& trace) const;

  std::shared_ptr<const Reformulator> generative_;
  BackendList backends_;
  QuestionClassifier classifier_;
};

}  // namespace m2q
