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


// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "m2q/m2q.h"

namespace {

using nlohmann::json;

struct Owned {
  char* s = nullptr;
  ~Owned() { m2q_free_string(s); }
  std::string str() const { return s ? s : ""; }
};

int Fail(m2q_status st) {
  std::cerr << "m2q: " << m2q_status_name(st) << ": " << m2q_last_error() << "\n";
  return static_cast<int>(st);
}

struct EngineOptions {
  std::string config;
  std::string catalog;
  std::string qa;
  std::string reviews;
  std::string endpoint;
};

void AddEngineOptions(CLI::App* cmd, EngineOptions& o) {
  cmd->add_option("--config", o.config, "JSON config file (M2Q_CONFIG overrides)");
  cmd->add_option("--catalog", o.catalog, "catalog JSONL");
  cmd->add_option("--qa", o.qa, "community QA JSONL");
  cmd->add_option("--reviews", o.reviews, "reviews JSONL");
}

// Config file (if any) with command-line store paths layered on top.
m2q_status MakeEngine(const EngineOptions& o, m2q_engine** engine) {
  std::string path = o.config;
  if (const char* env = std::getenv("M2Q_CONFIG"); env != nullptr && *env != '\0') path = env;
  json doc = json::object();
  std::string base_dir;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "m2q: cannot open config " << path << "\n";
      return M2Q_ERR_IO;
    }
    doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      std::cerr << "m2q: config " << path << " is not a JSON object\n";
      return M2Q_ERR_INVALID_CONFIG;
    }
    base_dir = std::filesystem::path(path).parent_path().string();
  }
  const std::string cwd = std::filesystem::current_path().string();
  auto absolute = [&](const std::string& p) {
    return std::filesystem::absolute(std::filesystem::path(cwd) / p).string();
  };
  if (!o.catalog.empty()) doc["catalog"] = absolute(o.catalog);
  if (!o.qa.empty()) doc["community_qa"] = absolute(o.qa);
  if (!o.reviews.empty()) doc["reviews"] = absolute(o.reviews);
  if (!o.endpoint.empty()) doc["remote_endpoint"] = o.endpoint;
  return m2q_engine_create_json(doc.dump().c_str(), base_dir.c_str(), engine);
}

struct Thresholds {
  std::optional<double> q, u, a, en;
  std::string strategy;

  json ToJson() const {
    json o = json::object();
    if (q) o["question_threshold"] = *q;
    if (u) o["understand_threshold"] = *u;
    if (a) o["answer_threshold"] = *a;
    if (en) o["english_threshold"] = *en;
    if (!strategy.empty()) o["strategy"] = strategy;
    return o;
  }
};

void AddThresholds(CLI::App* cmd, Thresholds& t) {
  cmd->add_option("--theta-q", t.q, "question-likelihood threshold");
  cmd->add_option("--theta-u", t.u, "understand threshold");
  cmd->add_option("--theta-a", t.a, "answer-confidence threshold");
  cmd->add_option("--theta-en", t.en, "English-likelihood threshold");
}

bool WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

int Reformulate(const EngineOptions& eo, const std::string& in_path, const std::string& out_path,
                const std::string& method) {
  m2q_engine* engine = nullptr;
  if (m2q_status st = MakeEngine(eo, &engine); st != M2Q_OK) return Fail(st);
  std::ifstream in(in_path);
  if (!in) {
    m2q_engine_destroy(engine);
    std::cerr << "m2q: cannot open " << in_path << "\n";
    return M2Q_ERR_IO;
  }
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    out = &file;
  }
  std::string line;
  std::size_t failures = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json msg = json::parse(line, nullptr, false);
    const std::string id = msg.is_object() && msg.contains("id") && msg["id"].is_string()
                               ? msg["id"].get<std::string>()
                               : "";
    Owned result;
    const m2q_status st = m2q_reformulate(engine, line.c_str(), method.c_str(), &result.s);
    json row = {{"id", id}};
    if (st == M2Q_OK) {
      row["question"] = json::parse(result.str());
    } else {
      ++failures;
      row["error"] = {{"code", m2q_status_name(st)}, {"message", m2q_last_error()}};
    }
    *out << row.dump() << "\n";
  }
  m2q_engine_destroy(engine);
  if (failures > 0) std::cerr << "m2q: " << failures << " message(s) not reformulated\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Message-to-question gateway"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(m2q_version()));

  EngineOptions reform_eo;
  std::string reform_in, reform_out, reform_strategy = "rule";
  auto* reform = app.add_subcommand("reformulate", "rewrite messages into questions");
  reform->add_option("--in", reform_in, "messages JSONL")->required();
  reform->add_option("--out", reform_out, "output JSONL (default stdout)");
  reform->add_option("--strategy", reform_strategy, "rule | extractive | remote")
      ->check(CLI::IsMember({"rule", "extractive", "remote"}));
  reform->add_option("--endpoint", reform_eo.endpoint, "remote model base URL");
  reform->add_option("--config", reform_eo.config, "JSON config file");

  EngineOptions ans_eo;
  Thresholds ans_t;
  std::string ans_text, ans_product, ans_id = "cli-1";
  auto* answer = app.add_subcommand("answer", "answer one message");
  answer->add_option("--text", ans_text, "message text")->required();
  answer->add_option("--product", ans_product, "product id")->required();
  answer->add_option("--id", ans_id, "message id");
  answer->add_option("--strategy", ans_t.strategy, "EXTRACTIVE_ONLY | M2Q | M2Q_HYBRID | PASSTHROUGH");
  AddEngineOptions(answer, ans_eo);
  AddThresholds(answer, ans_t);

  EngineOptions off_eo;
  Thresholds off_t;
  std::string off_data, off_json_out;
  std::vector<std::string> off_strategies;
  bool off_reference = false;
  auto* offline = app.add_subcommand("eval-offline", "offline generation and QA evaluation");
  offline->add_option("--data", off_data, "parallel pairs JSONL")->required();
  offline->add_option("--strategies", off_strategies, "strategies to evaluate (GOLD_ORACLE allowed)");
  offline->add_option("--json-out", off_json_out, "write the JSON report here");
  offline->add_flag("--reference-split", off_reference, "validate 5000/600/450 split ratios");
  AddEngineOptions(offline, off_eo);
  AddThresholds(offline, off_t);

  std::size_t on_users = 100000;
  std::uint64_t on_seed = 42;
  double on_uplift = 1.2857;
  std::optional<double> on_base;
  std::string on_sar = "asks", on_events, on_json_out;
  auto* online = app.add_subcommand("eval-online", "A/B simulation over synthetic traffic");
  online->add_option("--users", on_users, "number of simulated users");
  online->add_option("--seed", on_seed, "RNG seed");
  online->add_option("--uplift", on_uplift, "target PR(T)/PR(C); 1.0 means no effect");
  online->add_option("--base-rate", on_base, "control purchase probability");
  online->add_option("--sar-denominator", on_sar, "asks | answers")
      ->check(CLI::IsMember({"asks", "answers"}));
  online->add_option("--events-out", on_events, "write the simulated event log here");
  online->add_option("--json-out", on_json_out, "write the JSON report here");

  std::string serve_config;
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--config", serve_config, "JSON config file (M2Q_CONFIG overrides)");

  std::string gen_dir;
  std::size_t gen_messages = 200, gen_products = 20;
  std::uint64_t gen_seed = 7;
  bool gen_fixtures = false;
  auto* gen = app.add_subcommand("gen-synthetic", "write a synthetic world as JSONL stores");
  gen->add_option("--out-dir", gen_dir, "output directory")->required();
  gen->add_option("--messages", gen_messages, "message count");
  gen->add_option("--products", gen_products, "product count");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_flag("--fixtures", gen_fixtures, "write the 12-pair fixture world instead");

  CLI11_PARSE(app, argc, argv);

  if (*reform) return Reformulate(reform_eo, reform_in, reform_out, reform_strategy);

  if (*answer) {
    m2q_engine* engine = nullptr;
    if (m2q_status st = MakeEngine(ans_eo, &engine); st != M2Q_OK) return Fail(st);
    const json msg = {{"id", ans_id}, {"product_id", ans_product}, {"text", ans_text}};
    Owned out;
    const m2q_status st = m2q_answer(engine, msg.dump().c_str(), ans_t.ToJson().dump().c_str(), &out.s);
    m2q_engine_destroy(engine);
    if (st != M2Q_OK) return Fail(st);
    std::cout << json::parse(out.str()).dump(2) << "\n";
    return 0;
  }

  if (*offline) {
    m2q_engine* engine = nullptr;
    if (m2q_status st = MakeEngine(off_eo, &engine); st != M2Q_OK) return Fail(st);
    json options = off_t.ToJson();
    if (!off_strategies.empty()) options["strategies"] = off_strategies;
    options["reference_split"] = off_reference;
    Owned report, table;
    const m2q_status st = m2q_eval_offline(engine, off_data.c_str(), options.dump().c_str(),
                                           &report.s, &table.s);
    m2q_engine_destroy(engine);
    if (st != M2Q_OK) return Fail(st);
    std::cout << table.str();
    if (off_json_out.empty()) {
      std::cout << report.str() << "\n";
    } else if (!WriteFile(off_json_out, report.str() + "\n")) {
      std::cerr << "m2q: cannot write " << off_json_out << "\n";
      return M2Q_ERR_IO;
    }
    return 0;
  }

  if (*online) {
    json options = {{"users", on_users},
                    {"seed", on_seed},
                    {"uplift", on_uplift},
                    {"sar_denominator", on_sar}};
    if (on_base) options["base_purchase_rate"] = *on_base;
    if (!on_events.empty()) options["events_out"] = on_events;
    Owned report, table;
    const m2q_status st = m2q_eval_online(options.dump().c_str(), &report.s, &table.s);
    if (st != M2Q_OK) return Fail(st);
    std::cout << table.str();
    if (on_json_out.empty()) {
      std::cout << report.str() << "\n";
    } else if (!WriteFile(on_json_out, report.str() + "\n")) {
      std::cerr << "m2q: cannot write " << on_json_out << "\n";
      return M2Q_ERR_IO;
    }
    return 0;
  }

  if (*serve) {
    m2q_engine* engine = nullptr;
    if (m2q_status st = m2q_engine_create(serve_config.c_str(), &engine); st != M2Q_OK) {
      return Fail(st);
    }
    const m2q_status st = m2q_serve(engine);
    m2q_engine_destroy(engine);
    return st == M2Q_OK ? 0 : Fail(st);
  }

  if (*gen) {
    m2q_status st;
    if (gen_fixtures) {
      st = m2q_write_fixtures(gen_dir.c_str());
    } else {
      const json options = {{"messages", gen_messages}, {"products", gen_products}, {"seed", gen_seed}};
      st = m2q_gen_synthetic(options.dump().c_str(), gen_dir.c_str());
    }
    if (st != M2Q_OK) return Fail(st);
    std::cout << "wrote " << gen_dir << "\n";
    return 0;
  }
  return 0;
}
