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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "m2q/backends.hpp"
#include "m2q/metrics.hpp"
#include "m2q/pipeline.hpp"

namespace m2q::harness {

enum class Split { kTrain, kDev, kTest };

const char* ToString(Split split);  // "train" | "dev" | "test"
std::optional<Split> ParseSplit(std::string_view s);

struct ParallelPair {
  text::RawMessage message;
  std::string gold_question;
  Split split = Split::kTest;
};

struct LineError {
  std::size_t line = 0;
  std::string message;
};

struct DatasetLoad {
  std::vector<ParallelPair> pairs;
  std::vector<LineError> errors;
  // Message word counts bucketed by tens: key 20 holds 20..29 words.
  std::map<std::size_t, std::size_t> word_histogram;
  std::size_t within_25_75 = 0;
};

// Split sizes of the reference corpus this layout follows.
inline constexpr std::size_t kReferenceTrain = 5000;
inline constexpr std::size_t kReferenceDev = 600;
inline constexpr std::size_t kReferenceTest = 450;

// JSONL {"id","product_id","user_id","text","gold_question","split"}.
// Malformed lines land in `errors`. Throws kIo for an unreadable file,
// kEmptyDataset when no line was given, kSchema when no line was valid, and
// kSchema when `reference_split` is set and the split ratios drift more than two
// points from 5000/600/450.
DatasetLoad LoadParallelDataset(const std::string& path, bool reference_split = false);
DatasetLoad ParseParallelDataset(std::string_view jsonl, bool reference_split = false);

void WriteParallelDataset(const std::string& path, const std::vector<ParallelPair>& pairs);

// In-memory stores plus a message corpus whose gold questions are the stored
// community questions.
struct World {
  std::vector<CatalogRecord> catalog;
  std::vector<QaPair> community_qa;
  std::vector<Review> reviews;
  std::vector<ParallelPair> pairs;

  BackendList Backends() const;
  void WriteTo(const std::string& directory) const;  // catalog/qa/reviews/pairs .jsonl
};

// Twelve hand-written pairs, three of them the worked reformulation examples.
World FixtureWorld();

struct SyntheticOptions {
  std::size_t messages = 200;
  std::size_t products = 20;
  std::uint64_t seed = 7;
  // Share of messages whose intent is stated as a direct question; the rest
  // wrap it in an indirect request.
  double direct_share = 0.25;
};

// Verbose 25-75 word messages: greeting, filler, one intent sentence, filler,
// sign-off. The intent comes from a fixed template table so the corpus can be
// regenerated from the seed alone.
World SyntheticWorld(const SyntheticOptions& options = {});

// A strategy row of the offline report: a pipeline strategy, or the oracle
// that hands the gold question straight to federation.
struct EvalStrategy {
  std::string name;
  std::optional<Strategy> pipeline;  // nullopt = gold oracle

  static EvalStrategy Of(Strategy s);
  static EvalStrategy GoldOracle();
};

struct EvalRow {
  std::string strategy;
  std::size_t n = 0;
  metrics::GenerationScores generation;
  metrics::QaRates qa;
  // Percent versus the EXTRACTIVE_ONLY row; absent when that row is missing
  // or its rate is zero.
  std::optional<double> understand_improvement;
  std::optional<double> answer_improvement;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::string baseline = "EXTRACTIVE_ONLY";

  nlohmann::json ToJson() const;
  std::string ToTable() const;
  const EvalRow* Find(std::string_view strategy) const;
};

// Evaluates every TEST-split pair (all pairs if none is marked TEST) under
// each strategy. Pairs are processed in message-id order. Throws
// kEmptyDataset / kInvalidArgument on empty inputs.
EvalReport RunOfflineEval(const std::vector<ParallelPair>& pairs,
                          const std::vector<EvalStrategy>& strategies, const Pipeline& pipeline,
                          const PipelineConfig& thresholds);

// Recomputes every improvement cell from the absolute rates; throws
// M2qError(kInvalidArgument) on a mismatch.
void CheckReportConsistency(const EvalReport& report);

enum class Cohort { kControl, kTreatment };

// FNV-1a of the user id, mod 2.
Cohort AssignCohort(std::string_view user_id);

struct AbConfig {
  double base_purchase_rate = 0.5;
  // Target PR(T) / PR(C). 1.0 means no effect.
  double uplift = 1.2857;
  double p_satisfied = 0.8;  // answered buyer does not escalate to the seller
  double p_feedback = 0.5;   // satisfied buyer leaves positive feedback
  std::int64_t start_ms = 1'700'000'000'000;
  metrics::SarDenominator sar_denominator = metrics::SarDenominator::kAsks;
  PipelineConfig pipeline;

  // Throws M2qError(kInvalidConfig).
  void Validate() const;
};

struct CohortRow {
  std::string name;  // C, T, T_pos
  std::size_t users = 0;
  double purchase_rate = 0.0;
  double successful_answer_rate = 0.0;
  std::optional<double> pr_improvement;   // percent vs C
  std::optional<double> sar_improvement;  // percent vs C; absent when C is 0
  bool sar_absolute = false;              // control SAR was 0: compare absolutes
};

struct AbReport {
  std::vector<CohortRow> rows;
  std::size_t events = 0;
  double treatment_answered_share = 0.0;
  double answered_purchase_rate = 0.0;

  nlohmann::json ToJson() const;
  std::string ToTable() const;
  const CohortRow* Find(std::string_view name) const;
};

struct AbRun {
  AbReport report;
  std::vector<metrics::EventRecord> events;  // sorted by timestamp
};

// Each user asks one message drawn from `corpus`; C is always forwarded,
// T goes through `pipeline`. Purchases within six days are Bernoulli draws.
// Throws kInvalidConfig for user_count < 2 or an infeasible uplift.
AbRun RunAbSimulation(std::size_t user_count, std::uint64_t seed, const AbConfig& config,
                      const Pipeline& pipeline, const std::vector<ParallelPair>& corpus);

}  // namespace m2q::harness
