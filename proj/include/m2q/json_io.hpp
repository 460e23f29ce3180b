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

#include "json.hpp"
#include "m2q/federation.hpp"
#include "m2q/pipeline.hpp"
#include "m2q/question.hpp"
#include "m2q/text.hpp"

namespace m2q {

nlohmann::json ToJson(const text::RawMessage& message);
nlohmann::json ToJson(const ReformulatedQuestion& question);
nlohmann::json ToJson(const AnswerCandidate& candidate);
nlohmann::json ToJson(const BackendResult& result);
nlohmann::json ToJson(const FederatedResponse& response);
nlohmann::json ToJson(const RoutingOutcome& outcome);
nlohmann::json ToJson(const PipelineTrace& trace);

// Requires id and text; product_id and user_id default to empty. Throws
// M2qError(kSchema) naming the offending field.
text::RawMessage RawMessageFromJson(const nlohmann::json& doc);

}  // namespace m2q
