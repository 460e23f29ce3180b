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

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "json.hpp"
#include "m2q/config.hpp"
#include "m2q/pipeline.hpp"

namespace httplib {
class Server;
}

namespace m2q {

// Append-only JSONL writer shared by all request threads.
class MessageLog {
 public:
  MessageLog(const std::string& path, bool fsync_each);
  ~MessageLog();
  MessageLog(const MessageLog&) = delete;
  MessageLog& operator=(const MessageLog&) = delete;

  void Append(const nlohmann::json& record);
  std::size_t records() const;

 private:
  mutable std::mutex mu_;
  int fd_ = -1;
  bool fsync_each_;
  std::size_t records_ = 0;
};

// HTTP front end:
//   POST /v1/answer    message fields -> RoutingOutcome JSON
//                      (query: strategy, theta_q, theta_u, theta_a, theta_en)
//   POST /v1/feedback  {"message_id", "positive"}
//   GET  /v1/health    200 once stores are loaded, 503 before
//   GET  /v1/metrics   answer-rate and SAR counters
// Every handled request is logged before its response goes out.
class Service {
 public:
  explicit Service(AppConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds config.host:config.port (0 picks a free port) and serves on a
  // background thread. Returns the bound port.
  int Start();
  // Loads the stores named in the config.
  void LoadStores();
  // Installs an already built pipeline instead of reading stores.
  void UsePipeline(std::shared_ptr<const Pipeline> pipeline);
  void Stop();
  void Wait();

  bool ready() const;
  const MessageLog& log() const { return *log_; }

 private:
  struct Counters {
    std::size_t asks = 0;
    std::size_t instant_answers = 0;
    std::size_t forwards = 0;
    std::size_t feedback_positive = 0;
    std::size_t feedback_negative = 0;
    std::map<std::string, bool> answered;  // message id -> escalated afterwards
  };

  void Install();
  std::shared_ptr<const Pipeline> pipeline() const;
  nlohmann::json MetricsJson() const;

  AppConfig config_;
  std::unique_ptr<httplib::Server> server_;
  std::unique_ptr<MessageLog> log_;
  std::thread thread_;
  mutable std::mutex mu_;
  std::shared_ptr<const Pipeline> pipeline_;
  Counters counters_;
  std::atomic<std::uint64_t> next_id_{0};
};

}  // namespace m2q
