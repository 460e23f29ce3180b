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


#include "m2q/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace m2q {
namespace {

namespace fs = std::filesystem;

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

template <typename T>
void Read(const nlohmann::json& doc, const char* key, T& out) {
  if (!doc.contains(key) || doc[key].is_null()) return;
  try {
    out = doc[key].get<T>();
  } catch (const nlohmann::json::exception&) {
    throw M2qError(ErrorCode::kInvalidConfig, std::string("bad type for config key ") + key);
  }
}

}  // namespace

AppConfig AppConfig::FromJson(std::string_view json, const std::string& base_dir) {
  nlohmann::json doc = nlohmann::json::parse(json, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw M2qError(ErrorCode::kInvalidConfig, "config must be a JSON object");
  }
  AppConfig c;
  std::string strategy = ToString(c.pipeline.strategy);
  Read(doc, "strategy", strategy);
  auto parsed = ParseStrategy(strategy);
  if (!parsed) throw M2qError(ErrorCode::kInvalidConfig, "unknown strategy: " + strategy);
  c.pipeline.strategy = *parsed;
  Read(doc, "question_threshold", c.pipeline.question_threshold);
  Read(doc, "understand_threshold", c.pipeline.understand_threshold);
  Read(doc, "answer_threshold", c.pipeline.answer_threshold);
  Read(doc, "english_threshold", c.pipeline.english_threshold);
  std::int64_t deadline_ms = c.pipeline.federation_deadline.count();
  Read(doc, "federation_deadline_ms", deadline_ms);
  c.pipeline.federation_deadline = std::chrono::milliseconds(deadline_ms);
  c.pipeline.Validate();

  Read(doc, "catalog", c.stores.catalog);
  Read(doc, "community_qa", c.stores.community_qa);
  Read(doc, "reviews", c.stores.reviews);
  c.stores.catalog = Resolve(base_dir, c.stores.catalog);
  c.stores.community_qa = Resolve(base_dir, c.stores.community_qa);
  c.stores.reviews = Resolve(base_dir, c.stores.reviews);

  std::string generative = "rule";
  Read(doc, "generative", generative);
  if (generative == "rule") {
    c.generative = GenerativeBackend::kRule;
  } else if (generative == "remote") {
    c.generative = GenerativeBackend::kRemote;
  } else {
    throw M2qError(ErrorCode::kInvalidConfig, "generative must be rule or remote");
  }
  Read(doc, "remote_endpoint", c.remote.endpoint);
  std::int64_t remote_ms = c.remote.timeout.count();
  Read(doc, "remote_timeout_ms", remote_ms);
  c.remote.timeout = std::chrono::milliseconds(remote_ms);
  Read(doc, "remote_max_output_tokens", c.remote.max_output_tokens);
  if (c.generative == GenerativeBackend::kRemote) c.remote.Validate();

  Read(doc, "intent_patterns", c.intent_patterns);
  Read(doc, "classifier_weights", c.classifier_weights);
  c.intent_patterns = Resolve(base_dir, c.intent_patterns);
  c.classifier_weights = Resolve(base_dir, c.classifier_weights);

  std::string sar = "asks";
  Read(doc, "sar_denominator", sar);
  if (sar == "asks") {
    c.sar_denominator = metrics::SarDenominator::kAsks;
  } else if (sar == "answers") {
    c.sar_denominator = metrics::SarDenominator::kAnswers;
  } else {
    throw M2qError(ErrorCode::kInvalidConfig, "sar_denominator must be asks or answers");
  }

  Read(doc, "host", c.host);
  Read(doc, "port", c.port);
  if (c.port < 0 || c.port > 65535) throw M2qError(ErrorCode::kInvalidConfig, "bad port");
  Read(doc, "message_log", c.message_log);
  c.message_log = Resolve(base_dir, c.message_log);
  Read(doc, "fsync_log", c.fsync_log);
  return c;
}

AppConfig AppConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw M2qError(ErrorCode::kIo, "cannot open config: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return FromJson(buf.str(), fs::path(path).parent_path().string());
}

std::string ResolveConfigPath(const std::string& cli_path) {
  if (const char* env = std::getenv("M2Q_CONFIG"); env != nullptr && *env != '\0') return env;
  return cli_path;
}

QuestionClassifier MakeClassifier(const AppConfig& config) {
  if (config.classifier_weights.empty()) return QuestionClassifier();
  return QuestionClassifier(ClassifierWeights::FromFile(config.classifier_weights));
}

std::shared_ptr<const Reformulator> MakeGenerative(const AppConfig& config) {
  if (config.generative == GenerativeBackend::kRemote) {
    return std::make_shared<RemoteReformulator>(config.remote);
  }
  RuleBasedOptions options;
  options.question_threshold = config.pipeline.question_threshold;
  if (!config.classifier_weights.empty()) {
    options.weights = ClassifierWeights::FromFile(config.classifier_weights);
  }
  if (!config.intent_patterns.empty()) {
    options.patterns = LoadIntentPatterns(config.intent_patterns);
  }
  return std::make_shared<RuleBasedReformulator>(std::move(options));
}

}  // namespace m2q
