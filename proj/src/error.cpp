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


#include "m2q/error.hpp"

namespace m2q {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kSchema: return "Schema";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kNoIntentFound: return "NoIntentFound";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kProtocol: return "Protocol";
    case ErrorCode::kUpstream: return "Upstream";
    case ErrorCode::kAllBackendsFailed: return "AllBackendsFailed";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kZeroControl: return "ZeroControl";
    case ErrorCode::kNoAskEvents: return "NoAskEvents";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace m2q
