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


#include <cmath>
#include <fstream>
#include <sstream>

#include "m2q/harness.hpp"
#include "m2q/json_io.hpp"

namespace m2q::harness {
namespace {

void CheckReferenceSplit(const std::vector<ParallelPair>& pairs) {
  std::size_t counts[3] = {0, 0, 0};
  for (const ParallelPair& p : pairs) ++counts[static_cast<int>(p.split)];
  const double total = static_cast<double>(pairs.size());
  const double reference_total = kReferenceTrain + kReferenceDev + kReferenceTest;
  const double expected[3] = {kReferenceTrain / reference_total, kReferenceDev / reference_total,
                              kReferenceTest / reference_total};
  for (int i = 0; i < 3; ++i) {
    const double share = counts[i] / total;
    if (std::abs(share - expected[i]) > 0.02) {
      std::ostringstream msg;
      msg << "split " << ToString(static_cast<Split>(i)) << " holds " << counts[i] << " of "
          << pairs.size() << " pairs; expected a share near " << expected[i];
      throw M2qError(ErrorCode::kSchema, msg.str());
    }
  }
}

}  // namespace

const char* ToString(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "";
}

std::optional<Split> ParseSplit(std::string_view s) {
  const std::string lower = text::ToLowerAscii(s);
  if (lower == "train") return Split::kTrain;
  if (lower == "dev") return Split::kDev;
  if (lower == "test") return Split::kTest;
  return std::nullopt;
}

DatasetLoad ParseParallelDataset(std::string_view jsonl, bool reference_split) {
  DatasetLoad out;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t non_blank = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    ++non_blank;
    auto fail = [&](std::string why) { out.errors.push_back({line_no, std::move(why)}); };
    nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      fail("not a JSON object");
      continue;
    }
    ParallelPair pair;
    try {
      pair.message = RawMessageFromJson(doc);
    } catch (const M2qError& e) {
      fail(e.what());
      continue;
    }
    if (pair.message.id.empty()) {
      fail("missing string field id");
      continue;
    }
    if (!doc.contains("gold_question") || !doc["gold_question"].is_string()) {
      fail("missing string field gold_question");
      continue;
    }
    pair.gold_question = text::Trim(doc["gold_question"].get<std::string>());
    if (pair.gold_question.empty() || pair.gold_question.back() != '?') {
      fail("gold_question must be non-empty and end with '?'");
      continue;
    }
    std::optional<Split> split;
    if (doc.contains("split") && doc["split"].is_string()) {
      split = ParseSplit(doc["split"].get<std::string>());
    }
    if (!split) {
      fail("split must be train, dev or test");
      continue;
    }
    pair.split = *split;
    const std::size_t words = text::SplitWhitespace(pair.message.text).size();
    ++out.word_histogram[words / 10 * 10];
    if (words >= 25 && words <= 75) ++out.within_25_75;
    out.pairs.push_back(std::move(pair));
  }
  if (non_blank == 0) throw M2qError(ErrorCode::kEmptyDataset, "dataset has no records");
  if (out.pairs.empty()) {
    const LineError& first = out.errors.front();
    throw M2qError(ErrorCode::kSchema,
                   "line " + std::to_string(first.line) + ": " + first.message);
  }
  if (reference_split) CheckReferenceSplit(out.pairs);
  return out;
}

DatasetLoad LoadParallelDataset(const std::string& path, bool reference_split) {
  std::ifstream in(path);
  if (!in) throw M2qError(ErrorCode::kIo, "cannot open dataset: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseParallelDataset(buf.str(), reference_split);
}

void WriteParallelDataset(const std::string& path, const std::vector<ParallelPair>& pairs) {
  std::ofstream out(path);
  if (!out) throw M2qError(ErrorCode::kIo, "cannot write dataset: " + path);
  for (const ParallelPair& p : pairs) {
    nlohmann::json doc = {{"id", p.message.id},
                          {"product_id", p.message.product_id},
                          {"user_id", p.message.user_id},
                          {"text", p.message.text},
                          {"gold_question", p.gold_question},
                          {"split", ToString(p.split)}};
    out << doc.dump() << '\n';
  }
}

}  // namespace m2q::harness
