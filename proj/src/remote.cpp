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
#include <future>
#include <memory>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "m2q/generative.hpp"

namespace m2q {
namespace {

struct Endpoint {
  std::string scheme_host_port;
  std::string path_prefix;
};

Endpoint SplitEndpoint(const std::string& url) {
  Endpoint ep;
  std::size_t scheme = url.find("://");
  std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  std::size_t slash = url.find('/', host_start);
  if (slash == std::string::npos) {
    ep.scheme_host_port = url;
  } else {
    ep.scheme_host_port = url.substr(0, slash);
    ep.path_prefix = url.substr(slash);
  }
  while (!ep.path_prefix.empty() && ep.path_prefix.back() == '/') ep.path_prefix.pop_back();
  return ep;
}

struct Reply {
  bool transport_ok = false;
  bool timed_out = false;
  int status = 0;
  std::string body;
  std::string error;
};

}  // namespace

RemoteReformulator::RemoteReformulator(RemoteModelConfig config)
    : config_(std::move(config)) {
  config_.Validate();
}

Result<ReformulatedQuestion> RemoteReformulator::Reformulate(
    const text::RawMessage& message) const {
  const std::string scrubbed = text::ScrubPii(message.text).text;
  nlohmann::json request = {{"text", scrubbed}, {"max_tokens", config_.max_output_tokens}};
  const Endpoint ep = SplitEndpoint(config_.endpoint);
  const auto timeout = config_.timeout;

  // The HTTP exchange runs on its own thread so the caller's deadline holds
  // even when connect and read timeouts would add up past it.
  auto promise = std::make_shared<std::promise<Reply>>();
  std::future<Reply> future = promise->get_future();
  std::thread([promise, ep, body = request.dump(), timeout] {
    Reply reply;
    try {
      httplib::Client client(ep.scheme_host_port);
      const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
      const auto usecs =
          std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
      client.set_tcp_nodelay(true);
      client.set_connection_timeout(static_cast<time_t>(secs.count()),
                                    static_cast<time_t>(usecs.count()));
      client.set_read_timeout(static_cast<time_t>(secs.count()),
                              static_cast<time_t>(usecs.count()));
      client.set_write_timeout(static_cast<time_t>(secs.count()),
                               static_cast<time_t>(usecs.count()));
      auto res = client.Post(ep.path_prefix + "/v1/reformulate", body, "application/json");
      if (res) {
        reply.transport_ok = true;
        reply.status = res->status;
        reply.body = res->body;
      } else {
        auto err = res.error();
        reply.timed_out = err == httplib::Error::ConnectionTimeout ||
                          err == httplib::Error::Read || err == httplib::Error::Connection;
        reply.error = httplib::to_string(err);
      }
    } catch (const std::exception& e) {
      reply.error = e.what();
    }
    promise->set_value(std::move(reply));
  }).detach();

  if (future.wait_for(timeout) != std::future_status::ready) {
    return MakeError(ErrorCode::kTimeout, "remote model exceeded deadline");
  }
  Reply reply = future.get();
  if (!reply.transport_ok) {
    return MakeError(reply.timed_out ? ErrorCode::kTimeout : ErrorCode::kUpstream,
                     "remote model unavailable: " + reply.error);
  }
  if (reply.status != 200) {
    return MakeError(ErrorCode::kUpstream,
                     "remote model returned status " + std::to_string(reply.status));
  }
  nlohmann::json doc = nlohmann::json::parse(reply.body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("question") ||
      !doc["question"].is_string()) {
    return MakeError(ErrorCode::kProtocol, "remote response lacks a question string");
  }
  std::string question = FinalizeQuestion(
      text::ScrubPii(doc["question"].get<std::string>()).text,
      std::min(kMaxQuestionTokens, static_cast<std::size_t>(config_.max_output_tokens)));
  if (question.size() <= 1) {
    return MakeError(ErrorCode::kProtocol, "remote question is empty");
  }

  ReformulatedQuestion out;
  out.confidence = classifier_.Score(question);
  out.text = std::move(question);
  out.method = ReformulationMethod::kGenerative;
  out.source_spans.emplace_back(0, message.text.size());
  return out;
}

}  // namespace m2q
