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


#include "m2q/m2q.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>

#include "m2q/config.hpp"
#include "m2q/harness.hpp"
#include "m2q/json_io.hpp"
#include "m2q/service.hpp"

struct m2q_engine {
  m2q::AppConfig config;
  std::once_flag built;
  std::shared_ptr<const m2q::Pipeline> pipeline;  // loaded on first use
};

namespace {

thread_local std::string g_last_error;

m2q_status StatusOf(m2q::ErrorCode code) {
  using m2q::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return M2Q_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return M2Q_ERR_IO;
    case ErrorCode::kSchema: return M2Q_ERR_SCHEMA;
    case ErrorCode::kEmptyDataset: return M2Q_ERR_EMPTY_DATASET;
    case ErrorCode::kNoIntentFound: return M2Q_ERR_NO_INTENT;
    case ErrorCode::kTimeout: return M2Q_ERR_TIMEOUT;
    case ErrorCode::kProtocol: return M2Q_ERR_PROTOCOL;
    case ErrorCode::kUpstream: return M2Q_ERR_UPSTREAM;
    case ErrorCode::kAllBackendsFailed: return M2Q_ERR_ALL_BACKENDS_FAILED;
    case ErrorCode::kInvalidK: return M2Q_ERR_INVALID_K;
    case ErrorCode::kEmptyInput: return M2Q_ERR_EMPTY_INPUT;
    case ErrorCode::kZeroControl: return M2Q_ERR_ZERO_CONTROL;
    case ErrorCode::kNoAskEvents: return M2Q_ERR_NO_ASK_EVENTS;
    case ErrorCode::kInvalidConfig: return M2Q_ERR_INVALID_CONFIG;
  }
  return M2Q_ERR_INTERNAL;
}

template <typename Fn>
m2q_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return M2Q_OK;
  } catch (const m2q::M2qError& e) {
    g_last_error = e.what();
    return StatusOf(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return M2Q_ERR_SCHEMA;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return M2Q_ERR_INTERNAL;
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void Require(bool ok, const char* what) {
  if (!ok) throw m2q::M2qError(m2q::ErrorCode::kInvalidArgument, what);
}

nlohmann::json ParseOptions(const char* json) {
  if (json == nullptr || *json == '\0') return nlohmann::json::object();
  nlohmann::json doc = nlohmann::json::parse(json, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw m2q::M2qError(m2q::ErrorCode::kInvalidArgument, "options must be a JSON object");
  }
  return doc;
}

template <typename T>
void Read(const nlohmann::json& doc, const char* key, T& out) {
  if (doc.contains(key) && !doc[key].is_null()) out = doc[key].get<T>();
}

m2q::PipelineConfig WithOverrides(m2q::PipelineConfig cfg, const nlohmann::json& doc) {
  if (doc.contains("strategy")) {
    auto s = m2q::ParseStrategy(doc["strategy"].get<std::string>());
    if (!s) throw m2q::M2qError(m2q::ErrorCode::kInvalidArgument, "unknown strategy");
    cfg.strategy = *s;
  }
  Read(doc, "question_threshold", cfg.question_threshold);
  Read(doc, "understand_threshold", cfg.understand_threshold);
  Read(doc, "answer_threshold", cfg.answer_threshold);
  Read(doc, "english_threshold", cfg.english_threshold);
  std::int64_t deadline = cfg.federation_deadline.count();
  Read(doc, "federation_deadline_ms", deadline);
  cfg.federation_deadline = std::chrono::milliseconds(deadline);
  cfg.Validate();
  return cfg;
}

const m2q::Pipeline& PipelineOf(m2q_engine& engine) {
  std::call_once(engine.built, [&] {
    engine.pipeline = std::make_shared<const m2q::Pipeline>(
        m2q::MakeGenerative(engine.config), m2q::MakeDefaultBackends(engine.config.stores),
        m2q::MakeClassifier(engine.config));
  });
  return *engine.pipeline;
}

}  // namespace

extern "C" {

const char* m2q_version(void) { return "1.0.0"; }

const char* m2q_status_name(m2q_status status) {
  switch (status) {
    case M2Q_OK: return "OK";
    case M2Q_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case M2Q_ERR_IO: return "Io";
    case M2Q_ERR_SCHEMA: return "Schema";
    case M2Q_ERR_EMPTY_DATASET: return "EmptyDataset";
    case M2Q_ERR_NO_INTENT: return "NoIntentFound";
    case M2Q_ERR_TIMEOUT: return "Timeout";
    case M2Q_ERR_PROTOCOL: return "Protocol";
    case M2Q_ERR_UPSTREAM: return "Upstream";
    case M2Q_ERR_ALL_BACKENDS_FAILED: return "AllBackendsFailed";
    case M2Q_ERR_INVALID_K: return "InvalidK";
    case M2Q_ERR_EMPTY_INPUT: return "EmptyInput";
    case M2Q_ERR_ZERO_CONTROL: return "ZeroControl";
    case M2Q_ERR_NO_ASK_EVENTS: return "NoAskEvents";
    case M2Q_ERR_INVALID_CONFIG: return "InvalidConfig";
    case M2Q_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* m2q_last_error(void) { return g_last_error.c_str(); }

void m2q_free_string(char* s) { std::free(s); }

m2q_status m2q_engine_create(const char* config_path, m2q_engine** out) {
  return Guard([&] {
    Require(out != nullptr, "out must not be NULL");
    *out = nullptr;
    auto engine = std::make_unique<m2q_engine>();
    const std::string path = m2q::ResolveConfigPath(config_path ? config_path : "");
    if (!path.empty()) engine->config = m2q::AppConfig::FromFile(path);
    *out = engine.release();
  });
}

m2q_status m2q_engine_create_json(const char* config_json, const char* base_dir,
                                  m2q_engine** out) {
  return Guard([&] {
    Require(out != nullptr && config_json != nullptr, "config_json and out are required");
    *out = nullptr;
    auto engine = std::make_unique<m2q_engine>();
    engine->config = m2q::AppConfig::FromJson(config_json, base_dir ? base_dir : "");
    *out = engine.release();
  });
}

void m2q_engine_destroy(m2q_engine* engine) { delete engine; }

m2q_status m2q_reformulate(m2q_engine* engine, const char* message_json, const char* method,
                           char** out_json) {
  return Guard([&] {
    Require(engine && message_json && out_json, "engine, message_json and out_json are required");
    *out_json = nullptr;
    const m2q::text::RawMessage message =
        m2q::RawMessageFromJson(nlohmann::json::parse(message_json));
    const std::string how = method ? method : "rule";
    std::optional<m2q::ReformulatedQuestion> q;
    if (how == "extractive") {
      q = m2q::ExtractQuestion(message, engine->config.pipeline.question_threshold,
                               PipelineOf(*engine).classifier());
      if (!q) throw m2q::M2qError(m2q::ErrorCode::kNoIntentFound, "no question-like sentence");
    } else if (how == "rule" || how == "remote") {
      m2q::AppConfig cfg = engine->config;
      cfg.generative = how == "rule" ? m2q::GenerativeBackend::kRule
                                     : m2q::GenerativeBackend::kRemote;
      if (cfg.generative == m2q::GenerativeBackend::kRemote) cfg.remote.Validate();
      q = m2q::MakeGenerative(cfg)->Reformulate(message).value();
    } else {
      throw m2q::M2qError(m2q::ErrorCode::kInvalidArgument, "method must be rule, extractive or remote");
    }
    *out_json = Dup(m2q::ToJson(*q).dump());
  });
}

m2q_status m2q_answer(m2q_engine* engine, const char* message_json, const char* overrides_json,
                      char** out_json) {
  return Guard([&] {
    Require(engine && message_json && out_json, "engine, message_json and out_json are required");
    *out_json = nullptr;
    const m2q::text::RawMessage message =
        m2q::RawMessageFromJson(nlohmann::json::parse(message_json));
    const m2q::PipelineConfig cfg =
        WithOverrides(engine->config.pipeline, ParseOptions(overrides_json));
    *out_json = Dup(m2q::ToJson(PipelineOf(*engine).Answer(message, cfg)).dump());
  });
}

m2q_status m2q_eval_offline(m2q_engine* engine, const char* pairs_path, const char* options_json,
                            char** out_json, char** out_table) {
  return Guard([&] {
    Require(engine && pairs_path && out_json && out_table,
            "engine, pairs_path, out_json and out_table are required");
    *out_json = nullptr;
    *out_table = nullptr;
    const nlohmann::json options = ParseOptions(options_json);
    bool reference_split = false;
    Read(options, "reference_split", reference_split);
    const m2q::harness::DatasetLoad data =
        m2q::harness::LoadParallelDataset(pairs_path, reference_split);
    std::vector<m2q::harness::EvalStrategy> strategies;
    if (options.contains("strategies")) {
      for (const auto& name : options["strategies"]) {
        const std::string n = name.get<std::string>();
        if (n == "GOLD_ORACLE" || n == "gold") {
          strategies.push_back(m2q::harness::EvalStrategy::GoldOracle());
          continue;
        }
        auto s = m2q::ParseStrategy(n);
        if (!s) throw m2q::M2qError(m2q::ErrorCode::kInvalidArgument, "unknown strategy " + n);
        strategies.push_back(m2q::harness::EvalStrategy::Of(*s));
      }
    } else {
      for (m2q::Strategy s : {m2q::Strategy::kExtractiveOnly, m2q::Strategy::kPassthrough,
                              m2q::Strategy::kM2q, m2q::Strategy::kM2qHybrid}) {
        strategies.push_back(m2q::harness::EvalStrategy::Of(s));
      }
      strategies.push_back(m2q::harness::EvalStrategy::GoldOracle());
    }
    const m2q::PipelineConfig cfg = WithOverrides(engine->config.pipeline, options);
    const m2q::harness::EvalReport report =
        m2q::harness::RunOfflineEval(data.pairs, strategies, PipelineOf(*engine), cfg);
    nlohmann::json doc = report.ToJson();
    doc["dataset"] = {{"pairs", data.pairs.size()},
                      {"within_25_75_words", data.within_25_75},
                      {"errors", nlohmann::json::array()}};
    for (const auto& e : data.errors) {
      doc["dataset"]["errors"].push_back({{"line", e.line}, {"message", e.message}});
    }
    *out_json = Dup(doc.dump(2));
    *out_table = Dup(report.ToTable());
  });
}

m2q_status m2q_eval_online(const char* options_json, char** out_json, char** out_table) {
  return Guard([&] {
    Require(out_json && out_table, "out_json and out_table are required");
    *out_json = nullptr;
    *out_table = nullptr;
    const nlohmann::json options = ParseOptions(options_json);
    std::size_t users = 100000;
    std::uint64_t seed = 42;
    Read(options, "users", users);
    Read(options, "seed", seed);
    m2q::harness::AbConfig cfg;
    Read(options, "uplift", cfg.uplift);
    Read(options, "base_purchase_rate", cfg.base_purchase_rate);
    Read(options, "p_satisfied", cfg.p_satisfied);
    Read(options, "p_feedback", cfg.p_feedback);
    std::string sar = "asks";
    Read(options, "sar_denominator", sar);
    if (sar != "asks" && sar != "answers") {
      throw m2q::M2qError(m2q::ErrorCode::kInvalidConfig, "sar_denominator must be asks or answers");
    }
    cfg.sar_denominator =
        sar == "asks" ? m2q::metrics::SarDenominator::kAsks : m2q::metrics::SarDenominator::kAnswers;
    cfg.pipeline = WithOverrides(cfg.pipeline, options);
    m2q::harness::SyntheticOptions world_opts;
    Read(options, "messages", world_opts.messages);
    Read(options, "products", world_opts.products);
    Read(options, "corpus_seed", world_opts.seed);
    const m2q::harness::World world = m2q::harness::SyntheticWorld(world_opts);
    const m2q::Pipeline pipeline(std::make_shared<m2q::RuleBasedReformulator>(),
                                 world.Backends());
    const m2q::harness::AbRun run =
        m2q::harness::RunAbSimulation(users, seed, cfg, pipeline, world.pairs);
    std::string events_out;
    Read(options, "events_out", events_out);
    if (!events_out.empty()) m2q::metrics::WriteEventLog(events_out, run.events);
    *out_json = Dup(run.report.ToJson().dump(2));
    *out_table = Dup(run.report.ToTable());
  });
}

m2q_status m2q_gen_synthetic(const char* options_json, const char* directory) {
  return Guard([&] {
    Require(directory != nullptr, "directory is required");
    const nlohmann::json options = ParseOptions(options_json);
    m2q::harness::SyntheticOptions opts;
    Read(options, "messages", opts.messages);
    Read(options, "products", opts.products);
    Read(options, "seed", opts.seed);
    Read(options, "direct_share", opts.direct_share);
    m2q::harness::SyntheticWorld(opts).WriteTo(directory);
  });
}

m2q_status m2q_write_fixtures(const char* directory) {
  return Guard([&] {
    Require(directory != nullptr, "directory is required");
    m2q::harness::FixtureWorld().WriteTo(directory);
  });
}

m2q_status m2q_score_generation(const char* candidate, const char* reference, char** out_json) {
  return Guard([&] {
    Require(candidate && reference && out_json, "candidate, reference and out_json are required");
    *out_json = nullptr;
    const auto s = m2q::metrics::ScoreGeneration(candidate, reference);
    const nlohmann::json doc = {{"bleu", s.bleu},
                                {"rouge1", s.rouge1_f},
                                {"rouge2", s.rouge2_f},
                                {"rougeL", s.rougeL_f}};
    *out_json = Dup(doc.dump());
  });
}

m2q_status m2q_serve(m2q_engine* engine) {
  return Guard([&] {
    Require(engine != nullptr, "engine is required");
    m2q::Service service(engine->config);
    service.Start();
    // Health answers 503 until this returns.
    service.LoadStores();
    service.Wait();
  });
}

}  // extern "C"
