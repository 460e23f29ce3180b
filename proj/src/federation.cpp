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


#include "m2q/federation.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "m2q/json_io.hpp"

namespace m2q {
namespace {

bool EvidenceLess(const std::optional<std::string>& a, const std::optional<std::string>& b) {
  if (!a) return b.has_value();
  if (!b) return false;
  return *a < *b;
}

struct GatherState {
  std::mutex mu;
  std::condition_variable cv;
  std::vector<BackendSlot> slots;
  std::size_t pending = 0;
  bool closed = false;  // deadline passed; later arrivals are dropped
};

}  // namespace

void SortCandidates(std::vector<AnswerCandidate>& candidates) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const AnswerCandidate& a, const AnswerCandidate& b) {
                     if (a.confidence != b.confidence) return a.confidence > b.confidence;
                     if (a.evidence_id != b.evidence_id) {
                       return EvidenceLess(a.evidence_id, b.evidence_id);
                     }
                     return a.text < b.text;
                   });
}

FederatedResponse Aggregate(const BackendList& backends, std::vector<BackendSlot> slots) {
  FederatedResponse out;
  bool any_answered = false;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    BackendSlot& slot = slots[i];
    const std::string& id = backends[i]->id();
    if (slot.state == BackendSlot::State::kTimedOut) {
      out.timed_out.push_back(id);
      continue;
    }
    if (slot.state == BackendSlot::State::kFailed) {
      out.failed.push_back(id);
      continue;
    }
    BackendResult& r = slot.result;
    r.backend_id = id;
    for (AnswerCandidate& c : r.candidates) c.backend_id = id;
    SortCandidates(r.candidates);
    if (!any_answered || r.understand_score > out.understand_score) {
      out.understand_score = r.understand_score;
    }
    any_answered = true;
    // Strict '>' keeps the earlier backend on ties; within a backend the
    // sorted order already puts the smaller evidence id first.
    if (!r.candidates.empty() &&
        (!out.best || r.candidates.front().confidence > out.best->confidence)) {
      out.best = r.candidates.front();
    }
    out.per_backend.push_back(std::move(r));
  }
  return out;
}

Result<FederatedResponse> Federate(const ReformulatedQuestion& question,
                                   std::string_view product_id,
                                   std::chrono::milliseconds deadline,
                                   const BackendList& backends) {
  if (backends.empty()) {
    return MakeError(ErrorCode::kInvalidArgument, "no backends registered");
  }
  if (deadline.count() <= 0) {
    return MakeError(ErrorCode::kInvalidArgument, "deadline must be positive");
  }
  const auto until = std::chrono::steady_clock::now() + deadline;

  auto state = std::make_shared<GatherState>();
  state->slots.resize(backends.size());
  state->pending = backends.size();
  auto shared_question = std::make_shared<const ReformulatedQuestion>(question);
  auto shared_product = std::make_shared<const std::string>(product_id);

  for (std::size_t i = 0; i < backends.size(); ++i) {
    std::thread([state, i, backend = backends[i], shared_question, shared_product] {
      BackendSlot slot;
      try {
        slot.result = backend->Query(*shared_question, *shared_product);
        slot.state = BackendSlot::State::kAnswered;
      } catch (...) {
        slot.state = BackendSlot::State::kFailed;
      }
      std::lock_guard<std::mutex> lock(state->mu);
      if (state->closed) return;
      state->slots[i] = std::move(slot);
      --state->pending;
      state->cv.notify_all();
    }).detach();
  }

  std::vector<BackendSlot> snapshot;
  {
    std::unique_lock<std::mutex> lock(state->mu);
    state->cv.wait_until(lock, until, [&] { return state->pending == 0; });
    state->closed = true;
    snapshot = std::move(state->slots);
  }

  FederatedResponse response = Aggregate(backends, std::move(snapshot));
  if (response.per_backend.empty()) {
    return MakeError(ErrorCode::kAllBackendsFailed,
                     "every backend timed out or failed");
  }
  return response;
}

std::string Serialize(const FederatedResponse& response) {
  return ToJson(response).dump();
}

}  // namespace m2q
