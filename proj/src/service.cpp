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


#include "m2q/service.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "httplib.h"
#include "m2q/backends.hpp"
#include "m2q/json_io.hpp"

namespace m2q {
namespace {

std::int64_t NowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void Reply(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

double ParseUnit(const httplib::Request& req, const char* key, double fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string raw = req.get_param_value(key);
  char* end = nullptr;
  const double v = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0' || !(v >= 0.0 && v <= 1.0)) {
    throw M2qError(ErrorCode::kInvalidArgument, std::string(key) + " must be a number in [0, 1]");
  }
  return v;
}

}  // namespace

MessageLog::MessageLog(const std::string& path, bool fsync_each) : fsync_each_(fsync_each) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw M2qError(ErrorCode::kIo, "cannot open message log " + path + ": " + std::strerror(errno));
  }
}

MessageLog::~MessageLog() {
  if (fd_ >= 0) ::close(fd_);
}

void MessageLog::Append(const nlohmann::json& record) {
  const std::string line = record.dump() + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw M2qError(ErrorCode::kIo, std::string("message log write failed: ") +
                                         std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  if (fsync_each_) ::fsync(fd_);
  ++records_;
}

std::size_t MessageLog::records() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

Service::Service(AppConfig config)
    : config_(std::move(config)),
      server_(std::make_unique<httplib::Server>()),
      log_(std::make_unique<MessageLog>(config_.message_log, config_.fsync_log)) {
  server_->set_tcp_nodelay(true);
  Install();
}

Service::~Service() {
  Stop();
  Wait();
}

int Service::Start() {
  int port = config_.port;
  if (port == 0) {
    port = server_->bind_to_any_port(config_.host);
  } else if (!server_->bind_to_port(config_.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw M2qError(ErrorCode::kIo, "cannot bind " + config_.host + ":" +
                                       std::to_string(config_.port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port;
}

void Service::LoadStores() {
  auto backends = MakeDefaultBackends(config_.stores);
  UsePipeline(std::make_shared<const Pipeline>(MakeGenerative(config_), std::move(backends),
                                               MakeClassifier(config_)));
}

void Service::UsePipeline(std::shared_ptr<const Pipeline> pipeline) {
  std::lock_guard<std::mutex> lock(mu_);
  pipeline_ = std::move(pipeline);
}

void Service::Stop() {
  if (server_) server_->stop();
}

void Service::Wait() {
  if (thread_.joinable()) thread_.join();
}

bool Service::ready() const { return pipeline() != nullptr; }

std::shared_ptr<const Pipeline> Service::pipeline() const {
  std::lock_guard<std::mutex> lock(mu_);
  return pipeline_;
}

nlohmann::json Service::MetricsJson() const {
  std::lock_guard<std::mutex> lock(mu_);
  const Counters& c = counters_;
  std::size_t successful = 0;
  for (const auto& [id, escalated] : c.answered) {
    if (!escalated) ++successful;
  }
  const bool by_answers = config_.sar_denominator == metrics::SarDenominator::kAnswers;
  const std::size_t denom = by_answers ? c.answered.size() : c.asks;
  return {{"asks", c.asks},
          {"instant_answers", c.instant_answers},
          {"forwards", c.forwards},
          {"feedback_positive", c.feedback_positive},
          {"feedback_negative", c.feedback_negative},
          {"answer_rate", c.asks == 0 ? 0.0 : static_cast<double>(c.instant_answers) / c.asks},
          {"successful_answer_rate", denom == 0 ? 0.0 : static_cast<double>(successful) / denom},
          {"sar_denominator", by_answers ? "answers" : "asks"}};
}

void Service::Install() {
  auto logged = [this](const httplib::Request& req, httplib::Response& res,
                       const nlohmann::json& extra) {
    nlohmann::json record = {{"ts", NowMs()},
                             {"method", req.method},
                             {"path", req.path},
                             {"status", res.status}};
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : req.params) params[k] = v;
    if (!params.empty()) record["query"] = params;
    nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
    if (!req.body.empty()) record["request"] = body.is_discarded() ? nlohmann::json(req.body) : body;
    if (!extra.is_null()) record["outcome"] = extra;
    log_->Append(record);
  };

  server_->Post("/v1/answer", [this, logged](const httplib::Request& req,
                                             httplib::Response& res) {
    nlohmann::json outcome_json;
    auto pipe = pipeline();
    if (!pipe) {
      Reply(res, 503, {{"error", "stores are not loaded yet"}});
    } else {
      try {
        nlohmann::json doc = nlohmann::json::parse(req.body, nullptr, false);
        if (doc.is_discarded()) throw M2qError(ErrorCode::kSchema, "body is not JSON");
        text::RawMessage message = RawMessageFromJson(doc);
        if (text::Trim(message.text).empty()) {
          throw M2qError(ErrorCode::kSchema, "text must be non-empty");
        }
        if (message.id.empty()) message.id = "req-" + std::to_string(++next_id_);
        PipelineConfig cfg = config_.pipeline;
        if (req.has_param("strategy")) {
          auto s = ParseStrategy(req.get_param_value("strategy"));
          if (!s) throw M2qError(ErrorCode::kInvalidArgument, "unknown strategy");
          cfg.strategy = *s;
        }
        cfg.question_threshold = ParseUnit(req, "theta_q", cfg.question_threshold);
        cfg.understand_threshold = ParseUnit(req, "theta_u", cfg.understand_threshold);
        cfg.answer_threshold = ParseUnit(req, "theta_a", cfg.answer_threshold);
        cfg.english_threshold = ParseUnit(req, "theta_en", cfg.english_threshold);
        const RoutingOutcome outcome = pipe->Answer(message, cfg);
        outcome_json = ToJson(outcome);
        outcome_json["message_id"] = message.id;
        {
          std::lock_guard<std::mutex> lock(mu_);
          ++counters_.asks;
          if (outcome.routing == Routing::kInstantAnswer) {
            ++counters_.instant_answers;
            counters_.answered.emplace(message.id, false);
          } else {
            ++counters_.forwards;
          }
        }
        Reply(res, 200, outcome_json);
      } catch (const M2qError& e) {
        const bool client = e.code() == ErrorCode::kSchema ||
                            e.code() == ErrorCode::kInvalidArgument;
        Reply(res, client ? 400 : 500, {{"error", e.what()}, {"code", ToString(e.code())}});
      }
    }
    logged(req, res, outcome_json);
  });

  server_->Post("/v1/feedback", [this, logged](const httplib::Request& req,
                                               httplib::Response& res) {
    nlohmann::json doc = nlohmann::json::parse(req.body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("message_id") ||
        !doc["message_id"].is_string() || !doc.contains("positive") ||
        !doc["positive"].is_boolean()) {
      Reply(res, 400, {{"error", "expected {\"message_id\": string, \"positive\": bool}"}});
    } else {
      const std::string id = doc["message_id"].get<std::string>();
      const bool positive = doc["positive"].get<bool>();
      {
        std::lock_guard<std::mutex> lock(mu_);
        if (positive) {
          ++counters_.feedback_positive;
        } else {
          ++counters_.feedback_negative;
          // Negative feedback means the buyer escalates to the seller.
          auto it = counters_.answered.find(id);
          if (it != counters_.answered.end()) it->second = true;
        }
      }
      Reply(res, 200, {{"status", "recorded"}});
    }
    logged(req, res, nullptr);
  });

  server_->Get("/v1/health", [this, logged](const httplib::Request& req,
                                            httplib::Response& res) {
    if (ready()) {
      Reply(res, 200, {{"status", "ok"}});
    } else {
      Reply(res, 503, {{"status", "loading"}});
    }
    logged(req, res, nullptr);
  });

  server_->Get("/v1/metrics", [this, logged](const httplib::Request& req,
                                             httplib::Response& res) {
    Reply(res, 200, MetricsJson());
    logged(req, res, nullptr);
  });
}

}  // namespace m2q
