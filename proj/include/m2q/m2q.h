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


#ifndef M2Q_M2Q_H_
#define M2Q_M2Q_H_

/* C interface to the m2q library. Every structured result is a JSON string
 * owned by the caller and released with m2q_free_string(). On failure the
 * functions return a non-zero status and m2q_last_error() describes it (the
 * message is per thread and valid until the next call on that thread). */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define M2Q_API __declspec(dllexport)
#else
#define M2Q_API __attribute__((visibility("default")))
#endif

typedef struct m2q_engine m2q_engine;

typedef enum m2q_status {
  M2Q_OK = 0,
  M2Q_ERR_INVALID_ARGUMENT = 1,
  M2Q_ERR_IO = 2,
  M2Q_ERR_SCHEMA = 3,
  M2Q_ERR_EMPTY_DATASET = 4,
  M2Q_ERR_NO_INTENT = 5,
  M2Q_ERR_TIMEOUT = 6,
  M2Q_ERR_PROTOCOL = 7,
  M2Q_ERR_UPSTREAM = 8,
  M2Q_ERR_ALL_BACKENDS_FAILED = 9,
  M2Q_ERR_INVALID_K = 10,
  M2Q_ERR_EMPTY_INPUT = 11,
  M2Q_ERR_ZERO_CONTROL = 12,
  M2Q_ERR_NO_ASK_EVENTS = 13,
  M2Q_ERR_INVALID_CONFIG = 14,
  M2Q_ERR_INTERNAL = 15
} m2q_status;

M2Q_API const char* m2q_version(void);
M2Q_API const char* m2q_status_name(m2q_status status);
M2Q_API const char* m2q_last_error(void);
M2Q_API void m2q_free_string(char* s);

/* Reads the JSON config at `config_path` (M2Q_CONFIG overrides it). A NULL
 * or empty path with no M2Q_CONFIG set gives defaults and empty stores. */
M2Q_API m2q_status m2q_engine_create(const char* config_path, m2q_engine** out);
/* Same, from JSON text; relative paths resolve against `base_dir`. */
M2Q_API m2q_status m2q_engine_create_json(const char* config_json, const char* base_dir,
                                          m2q_engine** out);
M2Q_API void m2q_engine_destroy(m2q_engine* engine);

/* message_json: {"id","product_id","user_id","text",...}.
 * method: "rule", "extractive" or "remote". Output: ReformulatedQuestion. */
M2Q_API m2q_status m2q_reformulate(m2q_engine* engine, const char* message_json,
                                   const char* method, char** out_json);

/* overrides_json (nullable): {"strategy", "question_threshold",
 * "understand_threshold", "answer_threshold", "english_threshold"}.
 * Output: RoutingOutcome. */
M2Q_API m2q_status m2q_answer(m2q_engine* engine, const char* message_json,
                              const char* overrides_json, char** out_json);

/* Offline evaluation of a pairs JSONL file against the engine's stores.
 * options_json (nullable): {"strategies": [names], threshold overrides,
 * "reference_split": bool}. Emits the report as JSON and as a text table. */
M2Q_API m2q_status m2q_eval_offline(m2q_engine* engine, const char* pairs_path,
                                    const char* options_json, char** out_json,
                                    char** out_table);

/* A/B simulation over the synthetic world. options_json (nullable):
 * {"users", "seed", "uplift", "base_purchase_rate", "p_satisfied",
 *  "p_feedback", "sar_denominator", "messages", "products", "corpus_seed",
 *  "events_out"}. */
M2Q_API m2q_status m2q_eval_online(const char* options_json, char** out_json, char** out_table);

/* Writes catalog/community_qa/reviews/pairs JSONL files into `directory`.
 * options_json (nullable): {"messages", "products", "seed", "direct_share"}. */
M2Q_API m2q_status m2q_gen_synthetic(const char* options_json, const char* directory);
M2Q_API m2q_status m2q_write_fixtures(const char* directory);

/* BLEU-1..4 and ROUGE-1/2/L of a candidate against a reference. */
M2Q_API m2q_status m2q_score_generation(const char* candidate, const char* reference,
                                        char** out_json);

/* Serves HTTP on the configured host and port until the process ends. */
M2Q_API m2q_status m2q_serve(m2q_engine* engine);

#ifdef __cplusplus
}
#endif

#endif /* M2Q_M2Q_H_ */
