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
#include <string_view>
#include <vector>

#include "m2q/error.hpp"
#include "m2q/question.hpp"

namespace m2q {

struct AnswerCandidate {
  std::string text;
  double confidence = 0.0;
  std::string backend_id;
  std::optional<std::string> evidence_id;
};

struct BackendResult {
  std::string backend_id;
  double understand_score = 0.0;
  std::vector<AnswerCandidate> candidates;  // confidence descending
};

struct FederatedResponse {
  double understand_score = 0.0;
  std::optional<AnswerCandidate> best;
  std::vector<BackendResult> per_backend;  // registration order
  std::vector<std::string> timed_out;
  std::vector<std::string> failed;  // threw while answering
};

// One answer source. Query() runs concurrently from several threads against
// stores that are immutable after construction.
class AnswerBackend {
 public:
  virtual ~AnswerBackend() = default;
  virtual const std::string& id() const = 0;
  virtual BackendResult Query(const ReformulatedQuestion& question,
                              std::string_view product_id) const = 0;
};

using BackendList = std::vector<std::shared_ptr<const AnswerBackend>>;

// Confidence descending, then evidence id (absent first), then text.
void SortCandidates(std::vector<AnswerCandidate>& candidates);

// Outcome of one backend call, indexed by registration order.
struct BackendSlot {
  enum class State { kTimedOut, kAnswered, kFailed };
  State state = State::kTimedOut;
  BackendResult result;
};

// Pure reduction over slots. best = argmax confidence, ties by registration
// order then evidence id; independent of the order results arrived in.
FederatedResponse Aggregate(const BackendList& backends, std::vector<BackendSlot> slots);

// Fans the question out to every backend concurrently and gathers whatever
// answered before `deadline`. Late results are recorded in timed_out.
// Fails with kAllBackendsFailed when nothing answered.
Result<FederatedResponse> Federate(const ReformulatedQuestion& question,
                                   std::string_view product_id,
                                   std::chrono::milliseconds deadline,
                                   const BackendList& backends);

// Canonical JSON; byte-identical for equal responses.
std::string Serialize(const FederatedResponse& response);

}  // namespace m2q
