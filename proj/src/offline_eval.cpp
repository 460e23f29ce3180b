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


#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "m2q/harness.hpp"

namespace m2q::harness {
namespace {

std::optional<double> Improvement(double value, const EvalRow* baseline, double base_rate) {
  if (baseline == nullptr || !(base_rate > 0.0)) return std::nullopt;
  return metrics::RelativeImprovement(value, base_rate);
}

nlohmann::json OptionalNumber(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string Cell(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.2f%%", *v);
  return buf;
}

}  // namespace

EvalStrategy EvalStrategy::Of(Strategy s) { return {ToString(s), s}; }

EvalStrategy EvalStrategy::GoldOracle() { return {"GOLD_ORACLE", std::nullopt}; }

const EvalRow* EvalReport::Find(std::string_view strategy) const {
  for (const EvalRow& r : rows) {
    if (r.strategy == strategy) return &r;
  }
  return nullptr;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json out = {{"baseline", baseline}, {"rows", nlohmann::json::array()}};
  for (const EvalRow& r : rows) {
    out["rows"].push_back({
        {"strategy", r.strategy},
        {"n", r.n},
        {"bleu", r.generation.bleu},
        {"rouge1", r.generation.rouge1_f},
        {"rouge2", r.generation.rouge2_f},
        {"rougeL", r.generation.rougeL_f},
        {"understand_rate", r.qa.understand_rate},
        {"answer_rate", r.qa.answer_rate},
        {"understand_improvement_pct", OptionalNumber(r.understand_improvement)},
        {"answer_improvement_pct", OptionalNumber(r.answer_improvement)},
    });
  }
  return out;
}

std::string EvalReport::ToTable() const {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %5s %7s %7s %7s %7s %7s %7s %7s %8s %8s %11s %11s\n",
                "strategy", "n", "BLEU1", "BLEU2", "BLEU3", "BLEU4", "ROUGE1", "ROUGE2",
                "ROUGEL", "underst", "answer", "d_underst", "d_answer");
  out << line;
  for (const EvalRow& r : rows) {
    const auto& g = r.generation;
    std::snprintf(line, sizeof line,
                  "%-16s %5zu %7.4f %7.4f %7.4f %7.4f %7.4f %7.4f %7.4f %8.4f %8.4f %11s %11s\n",
                  r.strategy.c_str(), r.n, g.bleu[0], g.bleu[1], g.bleu[2], g.bleu[3],
                  g.rouge1_f, g.rouge2_f, g.rougeL_f, r.qa.understand_rate, r.qa.answer_rate,
                  Cell(r.understand_improvement).c_str(), Cell(r.answer_improvement).c_str());
    out << line;
  }
  out << "relative improvements are against " << baseline << '\n';
  return out.str();
}

EvalReport RunOfflineEval(const std::vector<ParallelPair>& pairs,
                          const std::vector<EvalStrategy>& strategies, const Pipeline& pipeline,
                          const PipelineConfig& thresholds) {
  if (pairs.empty()) throw M2qError(ErrorCode::kEmptyDataset, "no pairs to evaluate");
  if (strategies.empty()) throw M2qError(ErrorCode::kInvalidArgument, "no strategies given");
  thresholds.Validate();

  std::vector<const ParallelPair*> selected;
  for (const ParallelPair& p : pairs) {
    if (p.split == Split::kTest) selected.push_back(&p);
  }
  if (selected.empty()) {
    for (const ParallelPair& p : pairs) selected.push_back(&p);
  }
  std::stable_sort(selected.begin(), selected.end(), [](const auto* a, const auto* b) {
    return a->message.id < b->message.id;
  });

  EvalReport report;
  for (const EvalStrategy& strategy : strategies) {
    EvalRow row;
    row.strategy = strategy.name;
    row.n = selected.size();
    std::vector<metrics::QaObservation> observations;
    observations.reserve(selected.size());
    for (const ParallelPair* pair : selected) {
      RoutingOutcome outcome;
      if (strategy.pipeline) {
        PipelineConfig config = thresholds;
        config.strategy = *strategy.pipeline;
        outcome = pipeline.Answer(pair->message, config);
      } else {
        ReformulatedQuestion gold;
        gold.text = pair->gold_question;
        gold.method = ReformulationMethod::kPassthrough;
        gold.confidence = pipeline.classifier().Score(gold.text);
        PipelineTrace trace;
        outcome = pipeline.Route(gold, pair->message, thresholds, trace);
      }
      const std::string candidate = outcome.question ? outcome.question->text : std::string();
      const metrics::GenerationScores s = metrics::ScoreGeneration(candidate, pair->gold_question);
      for (std::size_t k = 0; k < 4; ++k) row.generation.bleu[k] += s.bleu[k];
      row.generation.rouge1_f += s.rouge1_f;
      row.generation.rouge2_f += s.rouge2_f;
      row.generation.rougeL_f += s.rougeL_f;
      observations.push_back(metrics::Observe(outcome));
    }
    const double n = static_cast<double>(row.n);
    for (double& b : row.generation.bleu) b /= n;
    row.generation.rouge1_f /= n;
    row.generation.rouge2_f /= n;
    row.generation.rougeL_f /= n;
    row.qa = metrics::ComputeQaRates(observations, thresholds.understand_threshold,
                                     thresholds.answer_threshold);
    report.rows.push_back(std::move(row));
  }

  if (const EvalRow* base = report.Find(report.baseline)) {
    const metrics::QaRates base_qa = base->qa;
    for (EvalRow& row : report.rows) {
      row.understand_improvement =
          Improvement(row.qa.understand_rate, base, base_qa.understand_rate);
      row.answer_improvement = Improvement(row.qa.answer_rate, base, base_qa.answer_rate);
    }
  }
  CheckReportConsistency(report);
  return report;
}

void CheckReportConsistency(const EvalReport& report) {
  const EvalRow* base = report.Find(report.baseline);
  auto check = [&](const EvalRow& row, const std::optional<double>& cell, double value,
                   double base_value, const char* what) {
    const bool defined = base != nullptr && base_value > 0.0;
    if (cell.has_value() != defined) {
      throw M2qError(ErrorCode::kInvalidArgument,
                     row.strategy + ": " + what + " improvement presence mismatch");
    }
    if (!defined) return;
    const double expected = 100.0 * (value - base_value) / base_value;
    if (std::abs(*cell - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw M2qError(ErrorCode::kInvalidArgument,
                     row.strategy + ": " + what + " improvement does not recompute");
    }
  };
  for (const EvalRow& row : report.rows) {
    check(row, row.understand_improvement, row.qa.understand_rate,
          base ? base->qa.understand_rate : 0.0, "understand");
    check(row, row.answer_improvement, row.qa.answer_rate, base ? base->qa.answer_rate : 0.0,
          "answer");
  }
}

}  // namespace m2q::harness
