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
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "m2q/federation.hpp"
#include "m2q/pipeline.hpp"

namespace m2q::metrics {

using Tokens = std::span<const std::string>;

// Cumulative BLEU-k for one candidate: brevity penalty times the uniform
// geometric mean of clipped n-gram precisions p_1..p_k. Orders for which the
// candidate has no n-grams are left out of the mean; a zero-match precision
// is floored at kBleuEpsilon. Throws M2qError(kInvalidK) unless 1 <= k <= 4.
inline constexpr double kBleuEpsilon = 1e-9;
double Bleu(Tokens candidate, Tokens reference, int k);

// F1 of clipped n-gram overlap, n in {1, 2}.
double RougeN(Tokens candidate, Tokens reference, int n);
// F1 from longest-common-subsequence length.
double RougeL(Tokens candidate, Tokens reference);
std::size_t LcsLength(Tokens a, Tokens b);

// Bag-of-tokens F1 (multiset overlap).
double TokenF1(Tokens candidate, Tokens reference);

struct GenerationScores {
  std::array<double, 4> bleu{};
  double rouge1_f = 0.0;
  double rouge2_f = 0.0;
  double rougeL_f = 0.0;
};

// Both texts go through text::Tokenize first.
GenerationScores ScoreGeneration(std::string_view candidate, std::string_view reference);

struct QaObservation {
  double understand_score = 0.0;
  std::optional<double> best_confidence;
};

QaObservation Observe(const FederatedResponse& response);
// Only an instant answer counts as having a best answer.
QaObservation Observe(const RoutingOutcome& outcome);

struct QaRates {
  double understand_rate = 0.0;
  double answer_rate = 0.0;
  std::size_t n = 0;
};

// understand_rate: share with understand_score >= theta_u.
// answer_rate: share whose best answer has confidence >= theta_a.
// Throws M2qError(kEmptyInput) on an empty span.
QaRates ComputeQaRates(std::span<const QaObservation> observations, double theta_u,
                       double theta_a);

// 100 * (treatment - control) / control. Throws M2qError(kZeroControl)
// unless control > 0.
double RelativeImprovement(double treatment, double control);

enum class EventKind { kAsk, kInstantAnswer, kForwardToSeller, kFeedbackPositive, kPurchase };

const char* ToString(EventKind kind);  // lowercase wire form
std::optional<EventKind> ParseEventKind(std::string_view s);

struct EventRecord {
  std::string user_id;
  std::string product_id;
  std::int64_t timestamp = 0;  // epoch ms
  EventKind kind = EventKind::kAsk;
  std::optional<std::string> message_id;
};

inline constexpr std::chrono::milliseconds kPurchaseWindow{7LL * 24 * 3600 * 1000};

// Unique (user, product) pairs with an ASK followed by a PURCHASE of the same
// product strictly less than `window` later, over all unique asking pairs.
// Throws M2qError(kNoAskEvents) when nobody asked.
double PurchaseRate(std::span<const EventRecord> events,
                    std::chrono::milliseconds window = kPurchaseWindow);

enum class SarDenominator { kAsks, kAnswers };

// Instantly answered messages with no later FORWARD_TO_SELLER for the same
// message id, over asked messages (or over answered messages).
double SuccessfulAnswerRate(std::span<const EventRecord> events,
                            SarDenominator denominator = SarDenominator::kAsks);

// JSONL event log; timestamps must be non-decreasing.
std::vector<EventRecord> LoadEventLog(const std::string& path);
void WriteEventLog(const std::string& path, std::span<const EventRecord> events);

enum class Relevance { kHelpful, kUnhelpful };

struct RelevanceJudgment {
  std::string message_id;
  Relevance label = Relevance::kUnhelpful;
};

// JSONL {"message_id", "label": "helpful"|"unhelpful"}; one label per message.
std::vector<RelevanceJudgment> LoadRelevanceLabels(const std::string& path);
std::vector<RelevanceJudgment> ParseRelevanceLabels(std::string_view jsonl);

double HelpfulRate(std::span<const RelevanceJudgment> labels);

// Share of message ids present in both files that carry the same label.
double PercentAgreement(std::span<const RelevanceJudgment> a,
                        std::span<const RelevanceJudgment> b);

// Share of true judgments (human reformulation-accuracy verdicts).
double AccuracyRate(std::span<const bool> judgments);

}  // namespace m2q::metrics
