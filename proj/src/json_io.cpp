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


#include "m2q/json_io.hpp"

namespace m2q {
namespace {

std::string OptString(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return {};
  if (!doc[key].is_string()) {
    throw M2qError(ErrorCode::kSchema, std::string("field must be a string: ") + key);
  }
  return doc[key].get<std::string>();
}

}  // namespace

nlohmann::json ToJson(const text::RawMessage& message) {
  nlohmann::json doc = {{"id", message.id},
                        {"product_id", message.product_id},
                        {"user_id", message.user_id},
                        {"text", message.text},
                        {"timestamp", message.timestamp}};
  if (message.locale) doc["locale"] = *message.locale;
  return doc;
}

nlohmann::json ToJson(const ReformulatedQuestion& question) {
  nlohmann::json spans = nlohmann::json::array();
  for (const auto& [start, end] : question.source_spans) spans.push_back({start, end});
  return {{"text", question.text},
          {"method", ToString(question.method)},
          {"confidence", question.confidence},
          {"source_spans", spans}};
}

nlohmann::json ToJson(const AnswerCandidate& candidate) {
  nlohmann::json doc = {{"text", candidate.text},
                        {"confidence", candidate.confidence},
                        {"backend_id", candidate.backend_id}};
  doc["evidence_id"] = candidate.evidence_id ? nlohmann::json(*candidate.evidence_id) : nullptr;
  return doc;
}

nlohmann::json ToJson(const BackendResult& result) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const AnswerCandidate& c : result.candidates) candidates.push_back(ToJson(c));
  return {{"backend_id", result.backend_id},
          {"understand_score", result.understand_score},
          {"candidates", candidates}};
}

nlohmann::json ToJson(const FederatedResponse& response) {
  nlohmann::json per_backend = nlohmann::json::array();
  for (const BackendResult& r : response.per_backend) per_backend.push_back(ToJson(r));
  nlohmann::json doc = {{"understand_score", response.understand_score},
                        {"per_backend", per_backend},
                        {"timed_out", response.timed_out},
                        {"failed", response.failed}};
  doc["best"] = response.best ? ToJson(*response.best) : nlohmann::json(nullptr);
  return doc;
}

nlohmann::json ToJson(const PipelineTrace& trace) {
  return {{"extractive_calls", trace.extractive_calls},
          {"generative_calls", trace.generative_calls},
          {"federation_calls", trace.federation_calls}};
}

nlohmann::json ToJson(const RoutingOutcome& outcome) {
  nlohmann::json doc = {{"routing", ToString(outcome.routing)},
                        {"reason", ToString(outcome.reason)},
                        {"trace", ToJson(outcome.trace)}};
  doc["question"] = outcome.question ? ToJson(*outcome.question) : nlohmann::json(nullptr);
  doc["answer"] = outcome.answer ? ToJson(*outcome.answer) : nlohmann::json(nullptr);
  doc["confidence"] = outcome.confidence ? nlohmann::json(*outcome.confidence) : nullptr;
  doc["understand_score"] =
      outcome.understand_score ? nlohmann::json(*outcome.understand_score) : nullptr;
  return doc;
}

text::RawMessage RawMessageFromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) throw M2qError(ErrorCode::kSchema, "message must be a JSON object");
  text::RawMessage m;
  if (!doc.contains("text") || !doc["text"].is_string()) {
    throw M2qError(ErrorCode::kSchema, "missing string field text");
  }
  m.text = doc["text"].get<std::string>();
  m.id = OptString(doc, "id");
  m.product_id = OptString(doc, "product_id");
  m.user_id = OptString(doc, "user_id");
  if (doc.contains("timestamp") && !doc["timestamp"].is_null()) {
    if (!doc["timestamp"].is_number_integer()) {
      throw M2qError(ErrorCode::kSchema, "timestamp must be an integer");
    }
    m.timestamp = doc["timestamp"].get<std::int64_t>();
  }
  if (doc.contains("locale") && doc["locale"].is_string()) {
    m.locale = doc["locale"].get<std::string>();
  }
  return m;
}

}  // namespace m2q
