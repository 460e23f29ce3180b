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


#include "m2q/generative.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace m2q {
namespace {

using text::SplitWhitespace;
using text::ToLowerAscii;

const char* const kProductNouns =
    "item|items|product|products|backpack|bag|bags|bottle|cover|jacket|shirt|"
    "shoes|boots|dress|lamp|kit|set|model|toy|figure|figurine|watch|speaker|"
    "headphones|earbuds|mug|cup|blender|charger|cable|tablet|laptop|chair|desk|"
    "mattress|pillow|blanket|tent|knife|pan|camera|lens|ring|necklace|bracelet|"
    "wallet|purse|drill|vacuum|helmet|bike|scooter|candle|sweater|hoodie|"
    "one|thing|unit|device|listing";

bool IsDeterminerOrPronoun(std::string_view w) {
  static constexpr std::array<std::string_view, 20> kWords = {
      "the", "this", "that", "these", "those", "a",  "an",   "it",  "they", "you",
      "we",  "i",    "my",   "your",  "his",   "her", "its", "our", "their", "he"};
  return std::find(kWords.begin(), kWords.end(), w) != kWords.end();
}

bool IsPreposition(std::string_view w) {
  static constexpr std::array<std::string_view, 21> kWords = {
      "with", "for",  "in",   "on",    "to",      "from",   "of",
      "by",   "at",   "into", "onto",  "as",      "without", "before",
      "after", "within", "using", "through", "under", "over", "inside"};
  return std::find(kWords.begin(), kWords.end(), w) != kWords.end();
}

bool IsInvertibleAux(std::string_view w) {
  return QuestionClassifier::IsAuxiliary(w) || w == "am";
}

std::string ExpandContractions(std::string_view x) {
  static const std::array<std::pair<std::string_view, std::string_view>, 12> kMap = {{
      {"it's", "it is"},       {"that's", "that is"},   {"there's", "there is"},
      {"what's", "what is"},   {"he's", "he is"},       {"she's", "she is"},
      {"you're", "you are"},   {"they're", "they are"}, {"we're", "we are"},
      {"i'm", "i am"},         {"doesn't", "does not"}, {"isn't", "is not"},
  }};
  std::vector<std::string> words = SplitWhitespace(x);
  for (std::string& w : words) {
    const std::string lowered = ToLowerAscii(w);
    for (const auto& [from, to] : kMap) {
      if (lowered == from) {
        w = std::string(to);
        break;
      }
    }
  }
  return text::Join(words, " ");
}

std::string StripTrailingPunct(std::string s) {
  while (!s.empty() && (text::IsSpace(s.back()) || s.back() == '.' || s.back() == '!' ||
                        s.back() == '?' || s.back() == ',' || s.back() == ';' ||
                        s.back() == ':')) {
    s.pop_back();
  }
  return s;
}

// Cuts the clause at a subordinate tail ("..., because ...").
std::string CutClause(std::string x) {
  static const std::regex kTail(
      R"((,\s*(because|since|as|so|but|and thanks|thanks|thank you)\b|\s(because|since)\s).*$)",
      std::regex::icase);
  return std::regex_replace(x, kTail, "");
}

// Third-person singular "comes" -> "come".
std::string BaseForm(std::string_view verb) {
  std::string v(verb);
  auto ends = [&](std::string_view s) {
    return v.size() > s.size() && v.compare(v.size() - s.size(), s.size(), s) == 0;
  };
  if (ends("ies")) return v.substr(0, v.size() - 3) + "y";
  if (ends("ches") || ends("shes") || ends("sses") || ends("xes")) {
    return v.substr(0, v.size() - 2);
  }
  if (ends("s") && !ends("ss")) return v.substr(0, v.size() - 1);
  return v;
}

bool LooksLikeParticiple(std::string_view w) {
  return w == "been" || w == "got" || (w.size() > 3 && (w.substr(w.size() - 2) == "ed" ||
                                                        w.substr(w.size() - 2) == "en"));
}

// "has a sleeve" is a main verb; "has been tested" is an auxiliary.
bool IsMainVerbHave(const std::vector<std::string>& words, std::size_t i) {
  const std::string w = ToLowerAscii(words[i]);
  if (w != "has" && w != "have" && w != "had") return false;
  return i + 1 >= words.size() || !LooksLikeParticiple(ToLowerAscii(words[i + 1]));
}

std::string DoSupport(std::vector<std::string> words, std::size_t verb_at) {
  const std::string verb = ToLowerAscii(words[verb_at]);
  std::string aux = "do";
  if (verb == "had") {
    aux = "did";
    words[verb_at] = "have";
  } else if (verb == "has") {
    aux = "does";
    words[verb_at] = "have";
  } else if (verb.size() > 2 && verb.back() == 's' && verb[verb.size() - 2] != 's') {
    aux = "does";
    words[verb_at] = BaseForm(verb);
  }
  return aux + " " + text::Join(words, " ");
}

std::string Invert(const std::string& x) {
  std::vector<std::string> words = SplitWhitespace(x);
  for (std::size_t i = 1; i < words.size() && i <= 8; ++i) {
    if (IsMainVerbHave(words, i)) return DoSupport(words, i);
    if (IsInvertibleAux(ToLowerAscii(words[i]))) {
      std::string aux = words[i];
      words.erase(words.begin() + static_cast<std::ptrdiff_t>(i));
      return aux + " " + text::Join(words, " ");
    }
  }
  if (!words.empty()) {
    const std::string first = ToLowerAscii(words[0]);
    if (first == "you" || first == "they" || first == "we" || first == "i") {
      return "do " + x;
    }
    std::size_t verb_at = 0;
    if (first == "it" || first == "he" || first == "she") verb_at = 1;
    if (words.size() > 2 && (first == "this" || first == "the") &&
        ToLowerAscii(words[1]) == "product") {
      verb_at = 2;
    }
    if (verb_at > 0 && verb_at < words.size()) {
      const std::string verb = ToLowerAscii(words[verb_at]);
      if (verb.size() > 2 && verb.back() == 's') {
        words[verb_at] = BaseForm(verb);
        return "does " + text::Join(words, " ");
      }
    }
  }
  return "is " + x;
}

bool CouldBeFiniteVerb(std::string_view w) {
  if (w.size() < 3 || IsDeterminerOrPronoun(w)) return false;
  if (w == "is" || w == "was" || w == "this" || w == "its" || w == "yes") return false;
  if (w.back() != 's') return false;
  const std::string_view tail2 = w.substr(w.size() - 2);
  return tail2 != "ss" && tail2 != "us";
}

// "many pieces this product includes" -> "many pieces does this product include".
std::string WhDoSupport(const std::vector<std::string>& words) {
  std::size_t subject = 0;
  while (subject < words.size() && !IsDeterminerOrPronoun(ToLowerAscii(words[subject]))) {
    ++subject;
  }
  if (subject >= words.size()) return text::Join(words, " ");
  std::vector<std::string> head(words.begin(),
                                words.begin() + static_cast<std::ptrdiff_t>(subject));
  std::vector<std::string> tail(words.begin() + static_cast<std::ptrdiff_t>(subject),
                                words.end());
  const std::string first = ToLowerAscii(tail.front());
  std::string clause;
  if (first == "you" || first == "they" || first == "we" || first == "i") {
    clause = "do " + text::Join(tail, " ");
  } else {
    std::size_t verb = 1;
    while (verb < tail.size() && !CouldBeFiniteVerb(ToLowerAscii(tail[verb]))) ++verb;
    if (verb >= tail.size()) return text::Join(words, " ");
    clause = DoSupport(tail, verb);
  }
  return head.empty() ? clause : text::Join(head, " ") + " " + clause;
}

// For wh-clauses: "the warranty is" -> "is the warranty";
// "heavy it is" -> "heavy is it"; without an auxiliary, do-support.
std::string WhInvert(const std::string& x) {
  std::vector<std::string> words = SplitWhitespace(x);
  for (std::size_t i = 1; i < words.size() && i <= 8; ++i) {
    if (IsMainVerbHave(words, i)) break;
    if (!IsInvertibleAux(ToLowerAscii(words[i]))) continue;
    std::string aux = words[i];
    words.erase(words.begin() + static_cast<std::ptrdiff_t>(i));
    if (IsDeterminerOrPronoun(ToLowerAscii(words[0]))) {
      return aux + " " + text::Join(words, " ");
    }
    words.insert(words.begin() + 1, aux);
    return text::Join(words, " ");
  }
  return WhDoSupport(words);
}

std::string DropCopula(const std::string& x) {
  std::vector<std::string> words = SplitWhitespace(x);
  for (std::size_t i = 1; i < words.size() && i <= 8; ++i) {
    const std::string w = ToLowerAscii(words[i]);
    if (w == "is" || w == "are") {
      words.erase(words.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  return text::Join(words, " ");
}

bool ObjectReadsAsProduct(const std::vector<std::string>& object) {
  if (object.empty()) return true;
  for (const std::string& w : object) {
    const std::string lw = ToLowerAscii(w);
    if (lw == "me" || lw == "us" || lw == "you" || lw == "him" || lw == "her") return false;
  }
  const std::string first = ToLowerAscii(object.front());
  return first == "a" || first == "an" || first == "the" || first == "this" ||
         first == "these" || first == "it" || first == "them" || first == "one" ||
         first == "my" || first == "our";
}

std::string Passive(const std::string& x) {
  std::vector<std::string> words = SplitWhitespace(x);
  std::size_t v = 0;
  while (v < words.size()) {
    const std::string lw = ToLowerAscii(words[v]);
    if (lw != "please" && lw != "also" && lw != "really" && lw != "possibly") break;
    ++v;
  }
  if (v >= words.size()) return "you " + x;
  std::size_t rest = v + 1;
  while (rest < words.size() && !IsPreposition(ToLowerAscii(words[rest]))) ++rest;
  std::vector<std::string> object(words.begin() + static_cast<std::ptrdiff_t>(v + 1),
                                  words.begin() + static_cast<std::ptrdiff_t>(rest));
  if (!ObjectReadsAsProduct(object)) {
    return "you " + text::Join(
                        std::vector<std::string>(
                            words.begin() + static_cast<std::ptrdiff_t>(v), words.end()),
                        " ");
  }
  std::string out = "this product be " + PastParticiple(ToLowerAscii(words[v]));
  for (std::size_t i = rest; i < words.size(); ++i) out += " " + words[i];
  return out;
}

std::string StripGreetings(const std::string& s) {
  static const std::regex kLead(
      R"(^\s*(?:(?:hi|hello|hey|dear \w+|good (?:morning|afternoon|evening)|ok|okay|so|also|and|but|well|quick question)\b[,!.:]?\s*)+)",
      std::regex::icase);
  std::string out = std::regex_replace(s, kLead, "");
  return out.empty() ? s : out;
}

std::string ApplyPossessive(const std::string& q, bool& possessive) {
  static const std::regex kTheir(R"(\btheir\b)", std::regex::icase);
  if (!std::regex_search(q, kTheir)) return q;
  possessive = true;
  return std::regex_replace(q, kTheir, "the");
}

}  // namespace

const std::vector<IntentPattern>& DefaultIntentPatterns() {
  static const std::vector<IntentPattern> kPatterns = {
      {R"((?:i'm|i am|im) (?:just |really )?(?:curious|wondering) (?:about |as to )?(what|which|who|when|where|how))",
       "{1} {X|wh_invert}?", 100},
      {R"((?:i'm|i am|im) (?:just |really )?(?:curious|wondering) (?:whether|if))",
       "{X|invert}?", 95},
      {R"(wonder(?:ing)? (?:whether|if))", "{X|invert}?", 90},
      {R"((?:please )?(?:let me know|tell me) (?:whether|if))", "{X|invert}?", 88},
      {R"((?:please )?(?:let me know|tell me) (what|which|who|when|where|how))",
       "{1} {X|wh_invert}?", 87},
      {R"(do you (?:happen to )?know (?:whether|if))", "{X|invert}?", 86},
      {R"((?:i|we)(?:'d| would)? (?:like|want|need) to know (?:whether|if))", "{X|invert}?", 84},
      {R"((?:i|we)(?:'d| would)? (?:like|want|need) to know (what|which|who|when|where|how))",
       "{1} {X|wh_invert}?", 83},
      {R"((?:i'm|i am|im) (?:just |really )?curious (?:about|regarding|as to))",
       "what is {X|drop_copula}?", 80},
      {R"((?:are|were|would|will) you (?:be )?able to)", "can {X|passive}?", 75},
      {R"(is it possible (?:for you )?to)", "can {X|passive}?", 74},
      {R"((?:can|could) you(?: please)?)", "can {X|passive}?", 70},
  };
  return kPatterns;
}

std::vector<IntentPattern> ParseIntentPatterns(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw M2qError(ErrorCode::kInvalidConfig, std::string("intent patterns: ") + e.what());
  }
  if (!doc.is_array()) {
    throw M2qError(ErrorCode::kInvalidConfig, "intent patterns must be a JSON array");
  }
  std::vector<IntentPattern> out;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("trigger") || !item.contains("rewrite") ||
        !item["trigger"].is_string() || !item["rewrite"].is_string()) {
      throw M2qError(ErrorCode::kInvalidConfig, "intent pattern needs trigger and rewrite");
    }
    IntentPattern p;
    p.trigger = item["trigger"].get<std::string>();
    p.rewrite = item["rewrite"].get<std::string>();
    p.priority = item.value("priority", 0);
    if (p.rewrite.empty() || p.rewrite.back() != '?') {
      throw M2qError(ErrorCode::kInvalidConfig,
                     "intent rewrite must end with '?': " + p.rewrite);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<IntentPattern> LoadIntentPatterns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw M2qError(ErrorCode::kIo, "cannot open intent patterns: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseIntentPatterns(buf.str());
}

std::string PastParticiple(std::string_view verb_in) {
  static const std::unordered_map<std::string, std::string> kIrregular = {
      {"make", "made"},     {"build", "built"},    {"buy", "bought"},
      {"bring", "brought"}, {"send", "sent"},      {"sell", "sold"},
      {"tell", "told"},     {"hold", "held"},      {"keep", "kept"},
      {"find", "found"},    {"put", "put"},        {"cut", "cut"},
      {"set", "set"},       {"fit", "fit"},        {"take", "taken"},
      {"give", "given"},    {"write", "written"},  {"do", "done"},
      {"see", "seen"},      {"show", "shown"},     {"wear", "worn"},
      {"draw", "drawn"},    {"sew", "sewn"},       {"grow", "grown"},
      {"throw", "thrown"},  {"break", "broken"},   {"choose", "chosen"},
      {"freeze", "frozen"}, {"hide", "hidden"},    {"shake", "shaken"},
      {"bend", "bent"},     {"spend", "spent"},    {"pay", "paid"},
      {"lay", "laid"},      {"leave", "left"},     {"feed", "fed"},
      {"read", "read"},     {"hang", "hung"},      {"spin", "spun"},
      {"weave", "woven"},   {"wind", "wound"},     {"bind", "bound"},
      {"split", "split"},   {"shut", "shut"},      {"get", "gotten"},
  };
  const std::string verb = ToLowerAscii(verb_in);
  if (verb.empty()) return verb;
  if (auto it = kIrregular.find(verb); it != kIrregular.end()) return it->second;

  auto is_vowel = [](char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  };
  const char last = verb.back();
  if (last == 'e') return verb + "d";
  if (last == 'y' && verb.size() > 1 && !is_vowel(verb[verb.size() - 2])) {
    return verb.substr(0, verb.size() - 1) + "ied";
  }
  int vowel_groups = 0;
  for (std::size_t i = 0; i < verb.size(); ++i) {
    if (is_vowel(verb[i]) && (i == 0 || !is_vowel(verb[i - 1]))) ++vowel_groups;
  }
  const std::size_t n = verb.size();
  if (vowel_groups == 1 && n >= 3 && !is_vowel(last) && last != 'w' && last != 'x' &&
      last != 'y' && is_vowel(verb[n - 2]) && !is_vowel(verb[n - 3])) {
    return verb + last + "ed";
  }
  return verb + "ed";
}

std::string FinalizeQuestion(std::string_view question, std::size_t max_tokens) {
  std::string lowered = ToLowerAscii(question);
  for (auto kind : {text::RedactionKind::kEmail, text::RedactionKind::kPhone,
                    text::RedactionKind::kUrl}) {
    const std::string upper = text::Placeholder(kind);
    const std::string lower = ToLowerAscii(upper);
    for (std::size_t pos = lowered.find(lower); pos != std::string::npos;
         pos = lowered.find(lower, pos + upper.size())) {
      lowered.replace(pos, upper.size(), upper);
    }
  }
  std::vector<std::string> words = SplitWhitespace(lowered);
  std::string out = StripTrailingPunct(text::Join(words, " "));
  if (out.empty()) return out;
  out += '?';
  while (text::Tokenize(out).size() > max_tokens) {
    words = SplitWhitespace(out);
    if (words.size() <= 1) break;
    words.pop_back();
    out = StripTrailingPunct(text::Join(words, " "));
    if (out.empty()) return out;
    out += '?';
  }
  return out;
}

RuleBasedReformulator::RuleBasedReformulator() : RuleBasedReformulator(RuleBasedOptions{}) {}

RuleBasedReformulator::RuleBasedReformulator(RuleBasedOptions options)
    : options_(std::move(options)), classifier_(options_.weights) {
  for (const IntentPattern& p : options_.patterns) {
    try {
      compiled_.push_back(
          {p, std::regex("\\b(?:" + p.trigger + ")\\s+",
                         std::regex::icase | std::regex::ECMAScript)});
    } catch (const std::regex_error& e) {
      throw M2qError(ErrorCode::kInvalidConfig,
                     "bad intent trigger '" + p.trigger + "': " + e.what());
    }
  }
}

RuleBasedReformulator::Normalized RuleBasedReformulator::NormalizeProductMentions(
    std::string_view sentence) {
  static const std::regex kSelling(
      R"(\b(?:[Tt]his|[Tt]hat|[Tt]he)\s+(?:\S+\s+){0,6}?(?:you're|you are|you)\s+(?:selling|offering|sell|offer|have listed|listed)\b)");
  static const std::regex kNamed(
      std::string(R"(\b(?:[Tt]his|[Tt]hese)\s+(?:[A-Z][^\s,.;!?]*\s+)*[A-Z][^\s,.;!?]*(?:\s+(?:[a-z]+\s+)?(?:)") +
      kProductNouns + R"())?\b)");
  static const std::regex kNamedThe(
      std::string(R"(\b[Tt]he\s+(?:[A-Z][^\s,.;!?]*\s+)+(?:[a-z]+\s+)?(?:)") + kProductNouns +
      R"()\b)");
  static const std::regex kPlain(
      std::string(R"(\b[Tt]his\s+(?:(?!(?:is|are|was|were|the|a|an|my|your|for|of|to|in)\b)[a-z]+\s+)?(?:)") +
      kProductNouns + R"()\b)");

  Normalized out;
  std::string s(sentence);
  s = std::regex_replace(s, kSelling, "this product");
  s = std::regex_replace(s, kNamed, "this product");
  s = std::regex_replace(s, kNamedThe, "this product");
  s = std::regex_replace(s, kPlain, "this product");
  out.text = std::move(s);
  return out;
}

bool RuleBasedReformulator::FindPattern(const std::string& sentence, PatternHit& hit) const {
  bool found = false;
  for (const CompiledPattern& p : compiled_) {
    std::smatch m;
    if (!std::regex_search(sentence, m, p.regex)) continue;
    const auto pos = static_cast<std::size_t>(m.position(0));
    if (!found || p.spec.priority > hit.pattern->spec.priority ||
        (p.spec.priority == hit.pattern->spec.priority && pos < hit.position)) {
      hit.pattern = &p;
      hit.match = m;
      hit.position = pos;
      found = true;
    }
  }
  return found;
}

std::string RuleBasedReformulator::Render(const PatternHit& hit, const std::string& sentence) {
  const auto tail_at = static_cast<std::size_t>(hit.match.position(0) + hit.match.length(0));
  const std::string x =
      ExpandContractions(CutClause(StripTrailingPunct(sentence.substr(tail_at))));
  const std::string& tmpl = hit.pattern->spec.rewrite;
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    const std::size_t close = tmpl.find('}', i);
    if (close == std::string::npos) {
      out += tmpl.substr(i);
      break;
    }
    const std::string key = tmpl.substr(i + 1, close - i - 1);
    if (key == "X") {
      out += x;
    } else if (key == "X|invert") {
      out += Invert(x);
    } else if (key == "X|wh_invert") {
      out += WhInvert(x);
    } else if (key == "X|drop_copula") {
      out += DropCopula(x);
    } else if (key == "X|passive") {
      out += Passive(x);
    } else if (key.size() == 1 && key[0] >= '1' && key[0] <= '9') {
      const auto g = static_cast<std::size_t>(key[0] - '0');
      if (g < hit.match.size()) out += hit.match[g].str();
    } else {
      out += tmpl.substr(i, close - i + 1);
    }
    i = close + 1;
  }
  return out;
}

Result<ReformulatedQuestion> RuleBasedReformulator::Reformulate(
    const text::RawMessage& message) const {
  struct Candidate {
    text::Sentence sentence;
    std::string normalized;
    double score = 0.0;
  };
  std::vector<Candidate> candidates;
  for (text::Sentence& s : text::SegmentSentences(message.text)) {
    std::string clean = text::NormalizeQuotes(text::ScrubPii(s.text).text);
    const double score = classifier_.Score(clean);
    std::string normalized = NormalizeProductMentions(clean).text;
    candidates.push_back({std::move(s), std::move(normalized), score});
  }
  if (candidates.empty()) {
    return MakeError(ErrorCode::kNoIntentFound, "empty message");
  }

  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    if (c.score > best->score) best = &c;
  }

  const Candidate* chosen = nullptr;
  PatternHit hit;
  bool have_hit = false;
  if (best->score >= options_.question_threshold) {
    chosen = best;
    have_hit = FindPattern(best->normalized, hit);
  } else {
    for (const Candidate& c : candidates) {
      PatternHit h;
      if (!FindPattern(c.normalized, h)) continue;
      if (!have_hit || h.pattern->spec.priority > hit.pattern->spec.priority) {
        hit = h;
        chosen = &c;
        have_hit = true;
      }
    }
    if (!have_hit) {
      return MakeError(ErrorCode::kNoIntentFound,
                       "no question-like sentence and no intent pattern matched");
    }
  }

  std::string question =
      have_hit ? Render(hit, chosen->normalized) : StripGreetings(chosen->normalized);
  bool possessive = false;
  question = ApplyPossessive(question, possessive);
  if (possessive && ToLowerAscii(question).find("this product") == std::string::npos) {
    question = StripTrailingPunct(question) + " for this product";
  }
  question = FinalizeQuestion(question, kMaxQuestionTokens);
  if (question.size() <= 1) {
    return MakeError(ErrorCode::kNoIntentFound, "intent clause was empty");
  }

  ReformulatedQuestion out;
  out.confidence = classifier_.Score(question);
  out.text = std::move(question);
  out.method = ReformulationMethod::kGenerative;
  out.source_spans.emplace_back(chosen->sentence.start, chosen->sentence.end);
  return out;
}

void RemoteModelConfig::Validate() const {
  if (endpoint.empty()) {
    throw M2qError(ErrorCode::kInvalidConfig, "remote endpoint is empty");
  }
  if (timeout.count() <= 0) {
    throw M2qError(ErrorCode::kInvalidConfig, "remote timeout must be positive");
  }
  if (max_output_tokens < 4 || max_output_tokens > 64) {
    throw M2qError(ErrorCode::kInvalidConfig, "max_output_tokens must be in [4, 64]");
  }
}

}  // namespace m2q
