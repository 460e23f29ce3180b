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


#include "m2q/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace m2q::metrics {
namespace {

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts CountNgrams(Tokens tokens, int n) {
  NgramCounts counts;
  const auto un = static_cast<std::size_t>(n);
  if (tokens.size() < un) return counts;
  for (std::size_t i = 0; i + un <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + un))];
  }
  return counts;
}

int ClippedOverlap(const NgramCounts& cand, const NgramCounts& ref) {
  int overlap = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

int Total(const NgramCounts& counts) {
  int total = 0;
  for (const auto& [gram, count] : counts) total += count;
  return total;
}

double F1(double overlap, double cand_total, double ref_total) {
  if (overlap <= 0.0 || cand_total <= 0.0 || ref_total <= 0.0) return 0.0;
  const double p = overlap / cand_total;
  const double r = overlap / ref_total;
  return 2.0 * p * r / (p + r);
}

std::string RequireStr(const nlohmann::json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key) || !doc[key].is_string()) {
    throw M2qError(ErrorCode::kSchema, where + ": missing string field " + key);
  }
  return doc[key].get<std::string>();
}

}  // namespace

double Bleu(Tokens candidate, Tokens reference, int k) {
  if (k < 1 || k > 4) throw M2qError(ErrorCode::kInvalidK, "BLEU order must be in [1, 4]");
  if (reference.empty()) {
    throw M2qError(ErrorCode::kEmptyInput, "BLEU reference must be non-empty");
  }
  if (candidate.empty()) return 0.0;

  double log_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= k; ++n) {
    const NgramCounts cand = CountNgrams(candidate, n);
    const int total = Total(cand);
    if (total == 0) continue;
    const int overlap = ClippedOverlap(cand, CountNgrams(reference, n));
    const double p = overlap == 0 ? kBleuEpsilon : static_cast<double>(overlap) / total;
    log_sum += std::log(p);
    ++orders;
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = std::min(1.0, std::exp(1.0 - r / c));
  return bp * std::exp(log_sum / orders);
}

double RougeN(Tokens candidate, Tokens reference, int n) {
  if (n < 1 || n > 2) throw M2qError(ErrorCode::kInvalidK, "ROUGE-N order must be 1 or 2");
  if (reference.empty()) {
    throw M2qError(ErrorCode::kEmptyInput, "ROUGE reference must be non-empty");
  }
  const NgramCounts cand = CountNgrams(candidate, n);
  const NgramCounts ref = CountNgrams(reference, n);
  if (cand.empty() && ref.empty()) {
    // Too short for this order on both sides: identical texts still match.
    return std::equal(candidate.begin(), candidate.end(), reference.begin(), reference.end())
               ? 1.0
               : 0.0;
  }
  return F1(ClippedOverlap(cand, ref), Total(cand), Total(ref));
}

std::size_t LcsLength(Tokens a, Tokens b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double RougeL(Tokens candidate, Tokens reference) {
  if (reference.empty()) {
    throw M2qError(ErrorCode::kEmptyInput, "ROUGE reference must be non-empty");
  }
  return F1(static_cast<double>(LcsLength(candidate, reference)),
            static_cast<double>(candidate.size()), static_cast<double>(reference.size()));
}

double TokenF1(Tokens candidate, Tokens reference) {
  std::unordered_map<std::string, int> ref_counts;
  for (const std::string& t : reference) ++ref_counts[t];
  int overlap = 0;
  for (const std::string& t : candidate) {
    auto it = ref_counts.find(t);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return F1(overlap, static_cast<double>(candidate.size()),
            static_cast<double>(reference.size()));
}

GenerationScores ScoreGeneration(std::string_view candidate, std::string_view reference) {
  const std::vector<std::string> c = text::Tokenize(candidate);
  const std::vector<std::string> r = text::Tokenize(reference);
  GenerationScores s;
  for (int k = 1; k <= 4; ++k) s.bleu[static_cast<std::size_t>(k - 1)] = Bleu(c, r, k);
  s.rouge1_f = RougeN(c, r, 1);
  s.rouge2_f = RougeN(c, r, 2);
  s.rougeL_f = RougeL(c, r);
  return s;
}

QaObservation Observe(const FederatedResponse& response) {
  QaObservation o;
  o.understand_score = response.understand_score;
  if (response.best) o.best_confidence = response.best->confidence;
  return o;
}

QaObservation Observe(const RoutingOutcome& outcome) {
  QaObservation o;
  o.understand_score = outcome.understand_score.value_or(0.0);
  if (outcome.routing == Routing::kInstantAnswer) o.best_confidence = outcome.confidence;
  return o;
}

QaRates ComputeQaRates(std::span<const QaObservation> observations, double theta_u,
                       double theta_a) {
  if (observations.empty()) {
    throw M2qError(ErrorCode::kEmptyInput, "no QA observations");
  }
  std::size_t understood = 0;
  std::size_t answered = 0;
  for (const QaObservation& o : observations) {
    if (o.understand_score >= theta_u) ++understood;
    if (o.best_confidence && *o.best_confidence >= theta_a) ++answered;
  }
  const double n = static_cast<double>(observations.size());
  return {understood / n, answered / n, observations.size()};
}

double RelativeImprovement(double treatment, double control) {
  if (!(control > 0.0)) {
    throw M2qError(ErrorCode::kZeroControl, "relative improvement needs a positive control");
  }
  return 100.0 * (treatment - control) / control;
}

const char* ToString(EventKind kind) {
  switch (kind) {
    case EventKind::kAsk: return "ask";
    case EventKind::kInstantAnswer: return "instant_answer";
    case EventKind::kForwardToSeller: return "forward_to_seller";
    case EventKind::kFeedbackPositive: return "feedback_positive";
    case EventKind::kPurchase: return "purchase";
  }
  return "";
}

std::optional<EventKind> ParseEventKind(std::string_view s) {
  for (EventKind k : {EventKind::kAsk, EventKind::kInstantAnswer, EventKind::kForwardToSeller,
                      EventKind::kFeedbackPositive, EventKind::kPurchase}) {
    if (s == ToString(k)) return k;
  }
  return std::nullopt;
}

double PurchaseRate(std::span<const EventRecord> events, std::chrono::milliseconds window) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::vector<std::int64_t>> asks;
  std::map<Key, std::vector<std::int64_t>> purchases;
  for (const EventRecord& e : events) {
    if (e.kind == EventKind::kAsk) asks[{e.user_id, e.product_id}].push_back(e.timestamp);
    if (e.kind == EventKind::kPurchase) {
      purchases[{e.user_id, e.product_id}].push_back(e.timestamp);
    }
  }
  if (asks.empty()) throw M2qError(ErrorCode::kNoAskEvents, "event log has no ASK events");
  std::size_t converted = 0;
  for (const auto& [key, ask_times] : asks) {
    auto it = purchases.find(key);
    if (it == purchases.end()) continue;
    bool hit = false;
    for (std::int64_t a : ask_times) {
      for (std::int64_t p : it->second) {
        if (p >= a && p - a < window.count()) {
          hit = true;
          break;
        }
      }
      if (hit) break;
    }
    if (hit) ++converted;
  }
  return static_cast<double>(converted) / static_cast<double>(asks.size());
}

double SuccessfulAnswerRate(std::span<const EventRecord> events, SarDenominator denominator) {
  std::set<std::string> asked;
  std::size_t anonymous_asks = 0;
  std::map<std::string, std::int64_t> first_answer;
  std::map<std::string, std::int64_t> last_forward;
  for (const EventRecord& e : events) {
    switch (e.kind) {
      case EventKind::kAsk:
        if (e.message_id) {
          asked.insert(*e.message_id);
        } else {
          ++anonymous_asks;
        }
        break;
      case EventKind::kInstantAnswer:
        if (e.message_id) {
          auto [it, inserted] = first_answer.emplace(*e.message_id, e.timestamp);
          if (!inserted) it->second = std::min(it->second, e.timestamp);
        }
        break;
      case EventKind::kForwardToSeller:
        if (e.message_id) {
          auto [it, inserted] = last_forward.emplace(*e.message_id, e.timestamp);
          if (!inserted) it->second = std::max(it->second, e.timestamp);
        }
        break;
      default:
        break;
    }
  }
  const std::size_t ask_count = asked.size() + anonymous_asks;
  if (ask_count == 0) throw M2qError(ErrorCode::kNoAskEvents, "event log has no ASK events");
  std::size_t successful = 0;
  for (const auto& [id, answered_at] : first_answer) {
    auto it = last_forward.find(id);
    if (it == last_forward.end() || it->second < answered_at) ++successful;
  }
  const std::size_t denom = denominator == SarDenominator::kAsks ? ask_count : first_answer.size();
  if (denom == 0) return 0.0;
  return static_cast<double>(successful) / static_cast<double>(denom);
}

std::vector<EventRecord> LoadEventLog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw M2qError(ErrorCode::kIo, "cannot open event log: " + path);
  std::vector<EventRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw M2qError(ErrorCode::kSchema, where + ": not a JSON object");
    }
    EventRecord e;
    e.user_id = RequireStr(doc, "user_id", where);
    e.product_id = RequireStr(doc, "product_id", where);
    if (!doc.contains("timestamp") || !doc["timestamp"].is_number_integer()) {
      throw M2qError(ErrorCode::kSchema, where + ": missing integer timestamp");
    }
    e.timestamp = doc["timestamp"].get<std::int64_t>();
    auto kind = ParseEventKind(RequireStr(doc, "kind", where));
    if (!kind) throw M2qError(ErrorCode::kSchema, where + ": unknown event kind");
    e.kind = *kind;
    if (doc.contains("message_id") && doc["message_id"].is_string()) {
      e.message_id = doc["message_id"].get<std::string>();
    }
    if (!out.empty() && e.timestamp < out.back().timestamp) {
      throw M2qError(ErrorCode::kSchema, where + ": timestamps must be non-decreasing");
    }
    out.push_back(std::move(e));
  }
  return out;
}

void WriteEventLog(const std::string& path, std::span<const EventRecord> events) {
  std::ofstream out(path);
  if (!out) throw M2qError(ErrorCode::kIo, "cannot write event log: " + path);
  for (const EventRecord& e : events) {
    nlohmann::json doc = {{"user_id", e.user_id},
                          {"product_id", e.product_id},
                          {"timestamp", e.timestamp},
                          {"kind", ToString(e.kind)}};
    if (e.message_id) doc["message_id"] = *e.message_id;
    out << doc.dump() << '\n';
  }
}

std::vector<RelevanceJudgment> ParseRelevanceLabels(std::string_view jsonl) {
  std::vector<RelevanceJudgment> out;
  std::set<std::string> seen;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw M2qError(ErrorCode::kSchema, where + ": not a JSON object");
    }
    RelevanceJudgment j;
    j.message_id = RequireStr(doc, "message_id", where);
    const std::string label = RequireStr(doc, "label", where);
    if (label == "helpful") {
      j.label = Relevance::kHelpful;
    } else if (label == "unhelpful") {
      j.label = Relevance::kUnhelpful;
    } else {
      throw M2qError(ErrorCode::kSchema, where + ": label must be helpful or unhelpful");
    }
    if (!seen.insert(j.message_id).second) {
      throw M2qError(ErrorCode::kSchema, where + ": duplicate label for " + j.message_id);
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<RelevanceJudgment> LoadRelevanceLabels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw M2qError(ErrorCode::kIo, "cannot open relevance labels: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseRelevanceLabels(buf.str());
}

double HelpfulRate(std::span<const RelevanceJudgment> labels) {
  if (labels.empty()) throw M2qError(ErrorCode::kEmptyInput, "no relevance labels");
  const auto helpful = std::count_if(labels.begin(), labels.end(), [](const auto& j) {
    return j.label == Relevance::kHelpful;
  });
  return static_cast<double>(helpful) / static_cast<double>(labels.size());
}

double PercentAgreement(std::span<const RelevanceJudgment> a,
                        std::span<const RelevanceJudgment> b) {
  std::map<std::string, Relevance> first;
  for (const auto& j : a) first[j.message_id] = j.label;
  std::size_t shared = 0;
  std::size_t agree = 0;
  for (const auto& j : b) {
    auto it = first.find(j.message_id);
    if (it == first.end()) continue;
    ++shared;
    if (it->second == j.label) ++agree;
  }
  if (shared == 0) throw M2qError(ErrorCode::kEmptyInput, "no shared message ids");
  return 100.0 * static_cast<double>(agree) / static_cast<double>(shared);
}

double AccuracyRate(std::span<const bool> judgments) {
  if (judgments.empty()) throw M2qError(ErrorCode::kEmptyInput, "no judgments");
  const auto good = std::count(judgments.begin(), judgments.end(), true);
  return static_cast<double>(good) / static_cast<double>(judgments.size());
}

}  // namespace m2q::metrics
