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

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace m2q {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kSchema,
  kEmptyDataset,
  kNoIntentFound,
  kTimeout,
  kProtocol,
  kUpstream,
  kAllBackendsFailed,
  kInvalidK,
  kEmptyInput,
  kZeroControl,
  kNoAskEvents,
  kInvalidConfig,
};

const char* ToString(ErrorCode code);

struct Error {
  ErrorCode code = ErrorCode::kInvalidArgument;
  std::string message;
};

// Thrown for violated preconditions (bad k, zero control, empty input...).
class M2qError : public std::runtime_error {
 public:
  M2qError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Value-or-error for operations whose failure is an expected outcome
// (remote model down, no intent in a message, every backend timing out).
template <typename T>
class Result {
 public:
  Result(T value) : state_(std::move(value)) {}
  Result(Error error) : state_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw M2qError(error().code, error().message);
    return std::get<T>(state_);
  }
  T& value() & {
    if (!ok()) throw M2qError(error().code, error().message);
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!ok()) throw M2qError(error().code, error().message);
    return std::get<T>(std::move(state_));
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Error& error() const { return std::get<Error>(state_); }

 private:
  std::variant<T, Error> state_;
};

inline Error MakeError(ErrorCode code, std::string message) {
  return Error{code, std::move(message)};
}

}  // namespace m2q
