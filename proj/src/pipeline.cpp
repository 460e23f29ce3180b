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


#include "m2q/pipeline.hpp"

namespace m2q {
namespace {

RoutingOutcome Forward(RoutingReason reason, PipelineTrace trace) {
  RoutingOutcome out;
  out.routing = Routing::kForwardToSeller;
  out.reason = reason;
  out.trace = trace;
  return out;
}

bool InUnit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

const char* ToString(Strategy strategy) {
  switch (strategy) {
    case Strategy::kExtractiveOnly: return "EXTRACTIVE_ONLY";
    case Strategy::kM2q: return "M2Q";
    case Strategy::kM2qHybrid: return "M2Q_HYBRID";
    case Strategy::kPassthrough: return "PASSTHROUGH";
  }
  return "";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    if (c == '-') c = '_';
  }
  if (upper == "EXTRACTIVE_ONLY" || upper == "EXTRACTIVE") return Strategy::kExtractiveOnly;
  if (upper == "M2Q") return Strategy::kM2q;
  if (upper == "M2Q_HYBRID" || upper == "HYBRID") return Strategy::kM2qHybrid;
  if (upper == "PASSTHROUGH") return Strategy::kPassthrough;
  return std::nullopt;
}

const char* ToString(Routing routing) {
  return routing == Routing::kInstantAnswer ? "INSTANT_ANSWER" : "FORWARD_TO_SELLER";
}

const char* ToString(RoutingReason reason) {
  switch (reason) {
    case RoutingReason::kAnswered: return "ANSWERED";
    case RoutingReason::kNotUnderstood: return "NOT_UNDERSTOOD";
    case RoutingReason::kNoAnswer: return "NO_ANSWER";
    case RoutingReason::kNotEnglish: return "NOT_ENGLISH";
    case RoutingReason::kNoIntent: return "NO_INTENT";
    case RoutingReason::kUpstreamFailure: return "UPSTREAM_FAILURE";
  }
  return "";
}

void PipelineConfig::Validate() const {
  if (!InUnit(question_threshold) || !InUnit(understand_threshold) ||
      !InUnit(answer_threshold) || !InUnit(english_threshold)) {
    throw M2qError(ErrorCode::kInvalidConfig, "thresholds must lie in [0, 1]");
  }
  if (federation_deadline.count() <= 0) {
    throw M2qError(ErrorCode::kInvalidConfig, "federation deadline must be positive");
  }
}

Pipeline::Pipeline(std::shared_ptr<const Reformulator> generative, BackendList backends,
                   QuestionClassifier classifier)
    : generative_(std::move(generative)),
      backends_(std::move(backends)),
      classifier_(classifier) {}

RoutingOutcome Pipeline::Route(const ReformulatedQuestion& question,
                               const text::RawMessage& message, const PipelineConfig& config,
                               PipelineTrace& trace) const {
  ++trace.federation_calls;
  Result<FederatedResponse> fed = Federate(question, message.product_id,
                                           config.federation_deadline, backends_);
  if (!fed) {
    RoutingOutcome out = Forward(RoutingReason::kNoAnswer, trace);
    out.question = question;
    return out;
  }
  const FederatedResponse& r = *fed;
  RoutingOutcome out;
  out.question = question;
  out.understand_score = r.understand_score;
  out.trace = trace;
  if (r.understand_score < config.understand_threshold) {
    out.reason = RoutingReason::kNotUnderstood;
    return out;
  }
  if (!r.best || r.best->confidence < config.answer_threshold) {
    out.reason = RoutingReason::kNoAnswer;
    return out;
  }
  out.routing = Routing::kInstantAnswer;
  out.reason = RoutingReason::kAnswered;
  out.answer = r.best;
  out.confidence = r.best->confidence;
  return out;
}

RoutingOutcome Pipeline::Generative(const text::RawMessage& message,
                                    const PipelineConfig& config,
                                    PipelineTrace& trace) const {
  ++trace.generative_calls;
  if (!generative_) return Forward(RoutingReason::kUpstreamFailure, trace);
  auto call = [&]() -> Result<ReformulatedQuestion> {
    try {
      return generative_->Reformulate(message);
    } catch (const std::exception& e) {
      return MakeError(ErrorCode::kUpstream, e.what());
    }
  };
  Result<ReformulatedQuestion> q = call();
  if (!q) {
    return Forward(q.error().code == ErrorCode::kNoIntentFound
                       ? RoutingReason::kNoIntent
                       : RoutingReason::kUpstreamFailure,
                   trace);
  }
  return Route(*q, message, config, trace);
}

RoutingOutcome Pipeline::Answer(const text::RawMessage& message,
                                const PipelineConfig& config) const {
  PipelineTrace trace;
  if (text::Trim(message.text).empty()) return Forward(RoutingReason::kNoIntent, trace);
  if (text::EnglishLikelihood(message.text) < config.english_threshold) {
    return Forward(RoutingReason::kNotEnglish, trace);
  }

  switch (config.strategy) {
    case Strategy::kPassthrough: {
      ReformulatedQuestion q;
      q.text = text::ScrubPii(message.text).text;
      q.method = ReformulationMethod::kPassthrough;
      q.confidence = classifier_.Score(q.text);
      q.source_spans.emplace_back(0, message.text.size());
      return Route(q, message, config, trace);
    }
    case Strategy::kExtractiveOnly: {
      ++trace.extractive_calls;
      auto q = ExtractQuestion(message, config.question_threshold, classifier_);
      if (!q) return Forward(RoutingReason::kNoIntent, trace);
      return Route(*q, message, config, trace);
    }
    case Strategy::kM2q:
      return Generative(message, config, trace);
    case Strategy::kM2qHybrid: {
      ++trace.extractive_calls;
      auto q = ExtractQuestion(message, config.question_threshold, classifier_);
      if (q) {
        RoutingOutcome first = Route(*q, message, config, trace);
        if (first.routing == Routing::kInstantAnswer) return first;
      }
      return Generative(message, config, trace);
    }
  }
  return Forward(RoutingReason::kNoIntent, trace);
}

}  // namespace m2q
