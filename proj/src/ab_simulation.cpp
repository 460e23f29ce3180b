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
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "m2q/harness.hpp"

namespace m2q::harness {
namespace {

constexpr std::int64_t kMinute = 60'000;
constexpr std::int64_t kHour = 60 * kMinute;
constexpr std::int64_t kPurchaseHorizon = 6 * 24 * kHour;

double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

bool InUnit(double x) { return x >= 0.0 && x <= 1.0; }

std::vector<metrics::EventRecord> EventsOf(const std::vector<metrics::EventRecord>& events,
                                           const std::set<std::string>& users) {
  std::vector<metrics::EventRecord> out;
  for (const metrics::EventRecord& e : events) {
    if (users.count(e.user_id) != 0) out.push_back(e);
  }
  return out;
}

nlohmann::json OptionalNumber(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

Cohort AssignCohort(std::string_view user_id) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : user_id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h % 2 == 0 ? Cohort::kControl : Cohort::kTreatment;
}

void AbConfig::Validate() const {
  if (!(base_purchase_rate > 0.0) || base_purchase_rate > 1.0) {
    throw M2qError(ErrorCode::kInvalidConfig, "base purchase rate must be in (0, 1]");
  }
  if (!(uplift > 0.0)) throw M2qError(ErrorCode::kInvalidConfig, "uplift must be positive");
  if (!InUnit(p_satisfied) || !InUnit(p_feedback)) {
    throw M2qError(ErrorCode::kInvalidConfig, "probabilities must lie in [0, 1]");
  }
  pipeline.Validate();
}

const CohortRow* AbReport::Find(std::string_view name) const {
  for (const CohortRow& r : rows) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

nlohmann::json AbReport::ToJson() const {
  nlohmann::json out = {{"events", events},
                        {"treatment_answered_share", treatment_answered_share},
                        {"answered_purchase_rate", answered_purchase_rate},
                        {"cohorts", nlohmann::json::array()}};
  for (const CohortRow& r : rows) {
    out["cohorts"].push_back({{"cohort", r.name},
                              {"users", r.users},
                              {"purchase_rate", r.purchase_rate},
                              {"successful_answer_rate", r.successful_answer_rate},
                              {"pr_improvement_pct", OptionalNumber(r.pr_improvement)},
                              {"sar_improvement_pct", OptionalNumber(r.sar_improvement)},
                              {"sar_absolute", r.sar_absolute}});
  }
  return out;
}

std::string AbReport::ToTable() const {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-7s %8s %8s %8s %12s %14s\n", "cohort", "users", "PR", "SAR",
                "PR vs C", "SAR vs C");
  out << line;
  for (const CohortRow& r : rows) {
    char pr[32] = "-";
    char sar[32] = "-";
    if (r.pr_improvement) std::snprintf(pr, sizeof pr, "%+.2f%%", *r.pr_improvement);
    if (r.sar_improvement) {
      std::snprintf(sar, sizeof sar, "%+.2f%%", *r.sar_improvement);
    } else if (r.sar_absolute && r.name != "C") {
      std::snprintf(sar, sizeof sar, "abs %.4f", r.successful_answer_rate);
    }
    std::snprintf(line, sizeof line, "%-7s %8zu %8.4f %8.4f %12s %14s\n", r.name.c_str(),
                  r.users, r.purchase_rate, r.successful_answer_rate, pr, sar);
    out << line;
  }
  if (const CohortRow* c = Find("C"); c != nullptr && c->sar_absolute) {
    out << "control SAR is 0, so SAR is compared in absolute terms\n";
  }
  return out.str();
}

AbRun RunAbSimulation(std::size_t user_count, std::uint64_t seed, const AbConfig& config,
                      const Pipeline& pipeline, const std::vector<ParallelPair>& corpus) {
  if (user_count < 2) throw M2qError(ErrorCode::kInvalidConfig, "need at least two users");
  if (corpus.empty()) throw M2qError(ErrorCode::kInvalidConfig, "message corpus is empty");
  config.Validate();

  std::mt19937_64 rng(seed);
  std::vector<std::optional<bool>> answered_memo(corpus.size());
  auto answered = [&](std::size_t idx) {
    if (!answered_memo[idx]) {
      answered_memo[idx] =
          pipeline.Answer(corpus[idx].message, config.pipeline).routing == Routing::kInstantAnswer;
    }
    return *answered_memo[idx];
  };

  struct User {
    std::string id;
    Cohort cohort;
    std::size_t message;
    bool answered;
  };
  std::vector<User> users;
  users.reserve(user_count);
  std::size_t treated = 0;
  std::size_t treated_answered = 0;
  for (std::size_t i = 0; i < user_count; ++i) {
    char id[24];
    std::snprintf(id, sizeof id, "user-%07zu", i);
    User u{id, AssignCohort(id), static_cast<std::size_t>(rng() % corpus.size()), false};
    if (u.cohort == Cohort::kTreatment) {
      u.answered = answered(u.message);
      ++treated;
      if (u.answered) ++treated_answered;
    }
    users.push_back(std::move(u));
  }

  // Answered treatment users carry the whole uplift so that PR(T)/PR(C)
  // matches the configured ratio in expectation.
  const double share = treated == 0 ? 0.0 : static_cast<double>(treated_answered) / treated;
  double p_answered = config.base_purchase_rate;
  if (share > 0.0) {
    p_answered = config.base_purchase_rate * (1.0 + (config.uplift - 1.0) / share);
  } else if (config.uplift != 1.0) {
    throw M2qError(ErrorCode::kInvalidConfig, "uplift needs at least one answered user");
  }
  if (p_answered < 0.0 || p_answered > 1.0) {
    throw M2qError(ErrorCode::kInvalidConfig,
                   "uplift is not reachable with the realised answer share");
  }

  AbRun run;
  auto& events = run.events;
  std::set<std::string> control_users;
  std::set<std::string> treatment_users;
  std::set<std::string> positive_users;
  for (std::size_t i = 0; i < users.size(); ++i) {
    const User& u = users[i];
    const ParallelPair& pair = corpus[u.message];
    const std::int64_t t0 = config.start_ms + static_cast<std::int64_t>(i) * 1000;
    const std::string message_id = "msg-" + u.id.substr(5);
    const std::string& product = pair.message.product_id;
    auto emit = [&](std::int64_t t, metrics::EventKind kind) {
      events.push_back({u.id, product, t, kind, message_id});
    };
    emit(t0, metrics::EventKind::kAsk);
    const double u_satisfied = Uniform(rng);
    const double u_feedback = Uniform(rng);
    const double u_purchase = Uniform(rng);
    const double u_when = Uniform(rng);
    double p_purchase = config.base_purchase_rate;
    if (u.cohort == Cohort::kControl) {
      control_users.insert(u.id);
      emit(t0 + kMinute, metrics::EventKind::kForwardToSeller);
    } else {
      treatment_users.insert(u.id);
      if (u.answered) {
        p_purchase = p_answered;
        emit(t0 + 100, metrics::EventKind::kInstantAnswer);
        if (u_satisfied < config.p_satisfied) {
          if (u_feedback < config.p_feedback) {
            emit(t0 + 2 * kMinute, metrics::EventKind::kFeedbackPositive);
            positive_users.insert(u.id);
          }
        } else {
          emit(t0 + kHour, metrics::EventKind::kForwardToSeller);
        }
      } else {
        emit(t0 + kMinute, metrics::EventKind::kForwardToSeller);
      }
    }
    if (u_purchase < p_purchase) {
      const auto delay = static_cast<std::int64_t>(u_when * static_cast<double>(kPurchaseHorizon));
      events.push_back(
          {u.id, product, t0 + 3 * kMinute + delay, metrics::EventKind::kPurchase, std::nullopt});
    }
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });

  AbReport& report = run.report;
  report.events = events.size();
  report.treatment_answered_share = share;
  report.answered_purchase_rate = p_answered;

  auto make_row = [&](const char* name, const std::set<std::string>& members) {
    CohortRow row;
    row.name = name;
    row.users = members.size();
    if (members.empty()) return row;
    const auto subset = EventsOf(events, members);
    row.purchase_rate = metrics::PurchaseRate(subset);
    row.successful_answer_rate = metrics::SuccessfulAnswerRate(subset, config.sar_denominator);
    return row;
  };
  CohortRow c = make_row("C", control_users);
  CohortRow t = make_row("T", treatment_users);
  CohortRow t_pos = make_row("T_pos", positive_users);
  const bool sar_absolute = !(c.successful_answer_rate > 0.0);
  for (CohortRow* row : {&c, &t, &t_pos}) {
    row->sar_absolute = sar_absolute;
    if (row->users == 0 || c.users == 0) continue;
    if (c.purchase_rate > 0.0) {
      row->pr_improvement = metrics::RelativeImprovement(row->purchase_rate, c.purchase_rate);
    }
    if (!sar_absolute) {
      row->sar_improvement =
          metrics::RelativeImprovement(row->successful_answer_rate, c.successful_answer_rate);
    }
  }
  report.rows = {c, t, t_pos};
  return run;
}

}  // namespace m2q::harness
