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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

// Deterministic text primitives shared by every stage of the answering
// pipeline. All offsets are byte offsets into UTF-8 input.
namespace m2q::text {

struct RawMessage {
  std::string id;
  std::string product_id;
  std::string user_id;
  std::string text;
  std::int64_t timestamp = 0;  // epoch milliseconds
  std::optional<std::string> locale;
};

struct Sentence {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::size_t index = 0;
};

enum class RedactionKind { kEmail, kPhone, kUrl };

struct Redaction {
  RedactionKind kind;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string placeholder;
};

struct ScrubResult {
  std::string text;
  std::vector<Redaction> redactions;
};

const char* Placeholder(RedactionKind kind);

// Word lists used by segmentation and the English heuristic. The compiled-in
// defaults match resources/abbreviations.txt and resources/stopwords.txt.
class Lexicon {
 public:
  static const Lexicon& Default();

  // One entry per line, UTF-8; blank lines and lines starting with '#' skipped.
  static Lexicon FromFiles(const std::string& abbreviations_path,
                           const std::string& stopwords_path);

  Lexicon(std::vector<std::string> abbreviations,
          std::vector<std::string> stopwords);

  bool IsAbbreviation(std::string_view lowered) const;
  bool IsStopword(std::string_view lowered) const;

  const std::vector<std::string>& abbreviations() const { return abbrev_list_; }
  const std::vector<std::string>& stopwords() const { return stop_list_; }

 private:
  std::vector<std::string> abbrev_list_;
  std::vector<std::string> stop_list_;
  std::unordered_set<std::string> abbrev_;
  std::unordered_set<std::string> stop_;
};

const std::vector<std::string>& DefaultAbbreviations();
const std::vector<std::string>& DefaultStopwords();

inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
inline bool IsAsciiAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }
inline bool IsAsciiAlnum(char c) { return IsAsciiAlpha(c) || IsAsciiDigit(c); }
inline bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }

std::string ToLowerAscii(std::string_view s);
std::string Trim(std::string_view s);
std::vector<std::string> SplitWhitespace(std::string_view s);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Maps typographic quotes (U+2018/2019/201C/201D) to their ASCII forms.
std::string NormalizeQuotes(std::string_view s);

// Splits after runs of '.', '!' or '?' followed by whitespace or end of text,
// unless the word ending in a single '.' is a known abbreviation.
std::vector<Sentence> SegmentSentences(std::string_view text,
                                       const Lexicon& lexicon = Lexicon::Default());

// Lowercased tokens; punctuation .,!?;:'"()[] detaches; intra-word
// apostrophes start a contraction-suffix token ("i'm" -> "i", "'m").
std::vector<std::string> Tokenize(std::string_view text);

bool IsPunctuationToken(std::string_view token);

// Tokens with punctuation and stopwords removed.
std::vector<std::string> ContentTokens(std::string_view text,
                                       const Lexicon& lexicon = Lexicon::Default());

ScrubResult ScrubPii(std::string_view text);

// 0.5 * ASCII-letter share of letters + 0.5 * stopword share of word tokens.
double EnglishLikelihood(std::string_view text,
                         const Lexicon& lexicon = Lexicon::Default());

// True if `phrase` occurs in `haystack` bounded by non-letters on both sides.
bool ContainsPhrase(std::string_view haystack, std::string_view phrase);

}  // namespace m2q::text
