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

#include <memory>
#include <string>
#include <string_view>

#include "m2q/backends.hpp"
#include "m2q/generative.hpp"
#include "m2q/metrics.hpp"
#include "m2q/pipeline.hpp"

namespace m2q {

enum class GenerativeBackend { kRule, kRemote };

// Everything the CLI and the service read from the config file. Relative
// paths are resolved against the directory holding the file.
struct AppConfig {
  PipelineConfig pipeline;
  StorePaths stores;
  GenerativeBackend generative = GenerativeBackend::kRule;
  RemoteModelConfig remote;
  std::string intent_patterns;     // optional JSON file
  std::string classifier_weights;  // optional JSON file
  metrics::SarDenominator sar_denominator = metrics::SarDenominator::kAsks;

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string message_log = "m2q_messages.jsonl";
  bool fsync_log = false;

  // Throws M2qError(kInvalidConfig) for unknown enum values or bad ranges.
  static AppConfig FromJson(std::string_view json, const std::string& base_dir = "");
  static AppConfig FromFile(const std::string& path);
};

// $M2Q_CONFIG wins over the path given on the command line.
std::string ResolveConfigPath(const std::string& cli_path);

QuestionClassifier MakeClassifier(const AppConfig& config);
std::shared_ptr<const Reformulator> MakeGenerative(const AppConfig& config);

}  // namespace m2q
