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


#include "m2q/text.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "m2q/error.hpp"

namespace m2q::text {
namespace {

std::vector<std::string> ReadListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw M2qError(ErrorCode::kIo, "cannot open word list: " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string entry = Trim(line);
    if (entry.empty() || entry[0] == '#') continue;
    out.push_back(ToLowerAscii(entry));
  }
  return out;
}

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool IsClosing(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool IsDetachable(char c) {
  switch (c) {
    case '.': case ',': case '!': case '?': case ';': case ':':
    case '"': case '(': case ')': case '[': case ']':
      return true;
    default:
      return false;
  }
}

struct Span {
  std::size_t start;
  std::size_t end;
  RedactionKind kind;
};

bool StartsWithIcase(std::string_view s, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char a = s[pos + i];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
    if (a != prefix[i]) return false;
  }
  return true;
}

bool IsUrlTrailing(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':' ||
         c == ')' || c == ']' || c == '"' || c == '\'';
}

bool IsWordBoundaryBefore(std::string_view s, std::size_t pos) {
  return pos == 0 || !IsAsciiAlnum(s[pos - 1]);
}

void FindUrls(std::string_view s, std::vector<Span>& out) {
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t match_end = 0;
    if (IsWordBoundaryBefore(s, i)) {
      if (StartsWithIcase(s, i, "www.")) {
        match_end = i + 4;
      } else if (IsAsciiAlpha(s[i])) {
        std::size_t j = i;
        while (j < s.size() &&
               (IsAsciiAlnum(s[j]) || s[j] == '+' || s[j] == '-' || s[j] == '.')) {
          ++j;
        }
        if (s.substr(j, 3) == "://") match_end = j + 3;
      }
    }
    if (match_end == 0) {
      ++i;
      continue;
    }
    std::size_t j = match_end;
    while (j < s.size() && !IsSpace(s[j])) ++j;
    while (j > match_end && IsUrlTrailing(s[j - 1])) --j;
    if (j > match_end) {
      out.push_back({i, j, RedactionKind::kUrl});
      i = j;
    } else {
      i = match_end;
    }
  }
}

bool IsEmailLocal(char c) {
  return IsAsciiAlnum(c) || c == '.' || c == '_' || c == '%' || c == '+' || c == '-';
}
bool IsEmailDomain(char c) { return IsAsciiAlnum(c) || c == '.' || c == '-'; }

void FindEmails(std::string_view s, std::vector<Span>& out) {
  for (std::size_t at = 0; at < s.size(); ++at) {
    if (s[at] != '@') continue;
    std::size_t left = at;
    while (left > 0 && IsEmailLocal(s[left - 1])) --left;
    std::size_t right = at + 1;
    while (right < s.size() && IsEmailDomain(s[right])) ++right;
    while (right > at + 1 && (s[right - 1] == '.' || s[right - 1] == '-')) --right;
    if (left == at || right == at + 1) continue;
    std::string_view domain = s.substr(at + 1, right - at - 1);
    std::size_t dot = domain.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 >= domain.size()) continue;
    out.push_back({left, right, RedactionKind::kEmail});
    at = right;
  }
}

bool IsPhoneChar(char c) {
  return IsAsciiDigit(c) || c == '-' || c == ' ' || c == '(' || c == ')';
}

void FindPhones(std::string_view s, std::vector<Span>& out) {
  std::size_t i = 0;
  while (i < s.size()) {
    bool starts = false;
    if (IsWordBoundaryBefore(s, i)) {
      if (IsAsciiDigit(s[i])) starts = true;
      if ((s[i] == '(' || s[i] == '+') && i + 1 < s.size() &&
          (IsAsciiDigit(s[i + 1]) || s[i + 1] == '(')) {
        starts = true;
      }
    }
    if (!starts) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < s.size() && IsPhoneChar(s[j])) ++j;
    // The run must not continue into a word ("4567abc").
    std::size_t end = j;
    while (end > i && !IsAsciiDigit(s[end - 1])) --end;
    bool glued = end == j && j < s.size() && IsAsciiAlpha(s[j]);
    int digits = 0;
    for (std::size_t k = i; k < end; ++k) digits += IsAsciiDigit(s[k]) ? 1 : 0;
    if (digits >= 7 && !glued) {
      out.push_back({i, end, RedactionKind::kPhone});
      i = end;
    } else {
      i = j;
    }
  }
}

}  // namespace

const char* Placeholder(RedactionKind kind) {
  switch (kind) {
    case RedactionKind::kEmail: return "[EMAIL]";
    case RedactionKind::kPhone: return "[PHONE]";
    case RedactionKind::kUrl: return "[URL]";
  }
  return "";
}

const std::vector<std::string>& DefaultAbbreviations() {
  static const std::vector<std::string> kList = {
      "mr.",  "mrs.",  "ms.",   "dr.",  "prof.", "sr.",   "jr.",  "st.",
      "mt.",  "e.g.",  "i.e.",  "etc.", "vs.",   "approx.", "inc.", "ltd.",
      "co.",  "corp.", "fig.",  "dept.", "est.", "misc.", "jan.", "feb.",
      "mar.", "apr.",  "jun.",  "jul.", "aug.",  "sep.",  "sept.", "oct.",
      "nov.", "dec."};
  return kList;
}

const std::vector<std::string>& DefaultStopwords() {
  static const std::vector<std::string> kList = {
      "a", "about", "after", "all", "also", "am", "an", "and", "any", "are",
      "as", "at", "be", "because", "been", "but", "by", "can", "could", "did",
      "do", "does", "for", "from", "had", "has", "have", "he", "her", "here",
      "his", "how", "i", "if", "in", "into", "is", "it", "its", "just",
      "me", "my", "no", "not", "of", "on", "or", "our", "please", "she",
      "should", "so", "some", "than", "thank", "thanks", "that", "the", "their", "them",
      "then", "there", "these", "they", "this", "those", "to", "too", "us", "was",
      "we", "were", "what", "when", "where", "which", "who", "why", "will", "with",
      "would", "you", "your", "'m", "'s", "'re", "'ve", "'ll", "'d", "hi",
      "hello", "dear", "very", "much", "get", "got", "let", "know", "may", "more"};
  return kList;
}

const Lexicon& Lexicon::Default() {
  static const Lexicon kDefault(DefaultAbbreviations(), DefaultStopwords());
  return kDefault;
}

Lexicon Lexicon::FromFiles(const std::string& abbreviations_path,
                           const std::string& stopwords_path) {
  return Lexicon(ReadListFile(abbreviations_path), ReadListFile(stopwords_path));
}

Lexicon::Lexicon(std::vector<std::string> abbreviations,
                 std::vector<std::string> stopwords)
    : abbrev_list_(std::move(abbreviations)),
      stop_list_(std::move(stopwords)),
      abbrev_(abbrev_list_.begin(), abbrev_list_.end()),
      stop_(stop_list_.begin(), stop_list_.end()) {}

bool Lexicon::IsAbbreviation(std::string_view lowered) const {
  return abbrev_.count(std::string(lowered)) > 0;
}

bool Lexicon::IsStopword(std::string_view lowered) const {
  return stop_.count(std::string(lowered)) > 0;
}

std::string ToLowerAscii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && IsSpace(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !IsSpace(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string NormalizeQuotes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (static_cast<unsigned char>(s[i]) == 0xE2 && i + 2 < s.size() &&
        static_cast<unsigned char>(s[i + 1]) == 0x80) {
      unsigned char c = static_cast<unsigned char>(s[i + 2]);
      if (c == 0x98 || c == 0x99) {
        out += '\'';
        i += 2;
        continue;
      }
      if (c == 0x9C || c == 0x9D) {
        out += '"';
        i += 2;
        continue;
      }
    }
    out += s[i];
  }
  return out;
}

std::vector<Sentence> SegmentSentences(std::string_view text, const Lexicon& lexicon) {
  std::vector<Sentence> out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  auto emit = [&](std::size_t start, std::size_t end) {
    Sentence s;
    s.start = start;
    s.end = end;
    s.text = std::string(text.substr(start, end - start));
    s.index = out.size();
    out.push_back(std::move(s));
  };
  while (i < n) {
    while (i < n && IsSpace(text[i])) ++i;
    if (i == n) break;
    const std::size_t start = i;
    std::size_t j = start;
    bool emitted = false;
    while (j < n) {
      if (!IsTerminator(text[j])) {
        ++j;
        continue;
      }
      std::size_t k = j;
      while (k < n && IsTerminator(text[k])) ++k;
      std::size_t run_end = k;
      while (k < n && IsClosing(text[k])) ++k;
      if (k < n && !IsSpace(text[k])) {
        j = k;
        continue;
      }
      if (run_end - j == 1 && text[j] == '.') {
        std::size_t w = j;
        while (w > start && !IsSpace(text[w - 1])) --w;
        while (w < j && (text[w] == '(' || text[w] == '"' || text[w] == '\'')) ++w;
        if (lexicon.IsAbbreviation(ToLowerAscii(text.substr(w, run_end - w)))) {
          j = k;
          continue;
        }
      }
      emit(start, k);
      i = k;
      emitted = true;
      break;
    }
    if (!emitted) {
      std::size_t end = n;
      while (end > start && IsSpace(text[end - 1])) --end;
      emit(start, end);
      i = n;
    }
  }
  return out;
}

std::vector<std::string> Tokenize(std::string_view raw) {
  std::vector<std::string> tokens;
  const std::string text = ToLowerAscii(NormalizeQuotes(raw));
  for (const std::string& chunk : SplitWhitespace(text)) {
    std::string current;
    auto flush = [&] {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    };
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      char c = chunk[i];
      if (c == '\'') {
        bool intra = !current.empty() && IsAsciiAlnum(current.back()) &&
                     i + 1 < chunk.size() && IsAsciiAlnum(chunk[i + 1]);
        flush();
        if (intra) {
          current = "'";
        } else {
          tokens.emplace_back("'");
        }
        continue;
      }
      if (IsDetachable(c)) {
        flush();
        tokens.emplace_back(1, c);
        continue;
      }
      current += c;
    }
    flush();
  }
  return tokens;
}

bool IsPunctuationToken(std::string_view token) {
  return token.size() == 1 && (IsDetachable(token[0]) || token[0] == '\'');
}

std::vector<std::string> ContentTokens(std::string_view text, const Lexicon& lexicon) {
  std::vector<std::string> out;
  for (std::string& t : Tokenize(text)) {
    if (IsPunctuationToken(t) || lexicon.IsStopword(t)) continue;
    out.push_back(std::move(t));
  }
  return out;
}

ScrubResult ScrubPii(std::string_view text) {
  std::vector<Span> urls, emails, phones;
  FindUrls(text, urls);
  FindEmails(text, emails);
  FindPhones(text, phones);

  // Priority URL > EMAIL > PHONE; a lower-priority match overlapping an
  // accepted one is dropped.
  std::vector<Span> accepted;
  auto overlaps = [&](const Span& s) {
    return std::any_of(accepted.begin(), accepted.end(), [&](const Span& a) {
      return s.start < a.end && a.start < s.end;
    });
  };
  for (const auto* group : {&urls, &emails, &phones}) {
    for (const Span& s : *group) {
      if (!overlaps(s)) accepted.push_back(s);
    }
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Span& a, const Span& b) { return a.start < b.start; });

  ScrubResult result;
  std::size_t cursor = 0;
  for (const Span& s : accepted) {
    result.text.append(text.substr(cursor, s.start - cursor));
    result.text += Placeholder(s.kind);
    result.redactions.push_back({s.kind, s.start, s.end, Placeholder(s.kind)});
    cursor = s.end;
  }
  result.text.append(text.substr(cursor));
  return result;
}

double EnglishLikelihood(std::string_view text, const Lexicon& lexicon) {
  std::size_t ascii_letters = 0;
  std::size_t other_code_points = 0;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (IsAsciiAlpha(ch)) {
      ++ascii_letters;
    } else if (c >= 0x80 && (c & 0xC0) != 0x80) {
      ++other_code_points;  // lead byte of a non-ASCII code point
    }
  }
  const std::size_t letters = ascii_letters + other_code_points;
  if (letters == 0) return 0.0;
  const double letter_share = static_cast<double>(ascii_letters) / letters;

  std::size_t words = 0;
  std::size_t stop = 0;
  for (const std::string& t : Tokenize(text)) {
    bool has_word_char = std::any_of(t.begin(), t.end(), [](char c) {
      return IsAsciiAlnum(c) || static_cast<unsigned char>(c) >= 0x80;
    });
    if (!has_word_char) continue;
    ++words;
    if (lexicon.IsStopword(t)) ++stop;
  }
  double stop_share = words == 0 ? 0.0 : static_cast<double>(stop) / words;
  stop_share = std::clamp(stop_share, 0.0, 1.0);
  return 0.5 * letter_share + 0.5 * stop_share;
}

bool ContainsPhrase(std::string_view haystack, std::string_view phrase) {
  if (phrase.empty()) return false;
  std::size_t pos = haystack.find(phrase);
  while (pos != std::string_view::npos) {
    bool left_ok = pos == 0 || !IsAsciiAlpha(haystack[pos - 1]);
    std::size_t after = pos + phrase.size();
    bool right_ok = after >= haystack.size() || !IsAsciiAlpha(haystack[after]);
    if (left_ok && right_ok) return true;
    pos = haystack.find(phrase, pos + 1);
  }
  return false;
}

}  // namespace m2q::text
