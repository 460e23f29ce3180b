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


#include <array>
#include <filesystem>
#include <fstream>
#include <random>

#include "m2q/harness.hpp"

namespace m2q::harness {
namespace {

struct IntentTemplate {
  const char* gold;
  const char* answer;
  std::vector<const char*> direct;    // '{n}' stands for the product noun
  std::vector<const char*> indirect;
};

// Stored community questions and the ways buyers bury them in a message.
const std::vector<IntentTemplate>& Intents() {
  static const std::vector<IntentTemplate> kIntents = {
      {"is this product machine washable?",
       "Yes, it can go in a cold machine wash and tumble dry on low.",
       {"Is this {n} machine washable?"},
       {"I'm curious whether this {n} is machine washable.",
        "I was wondering if this {n} is machine washable.",
        "Could you let me know if this {n} is machine washable."}},
      {"is this product waterproof?",
       "It is water resistant but should not be fully submerged.",
       {"Is this {n} waterproof?"},
       {"I'm curious whether this {n} is waterproof.",
        "Do you know whether this {n} is waterproof.",
        "Please let me know if this {n} is waterproof."}},
      {"is this product available in blue?",
       "Yes, a navy blue version is listed as a separate option.",
       {"Is this {n} available in blue?"},
       {"I was wondering if this {n} is available in blue.",
        "I'd like to know whether this {n} is available in blue."}},
      {"does this product come with a warranty?",
       "It includes a one year limited manufacturer warranty.",
       {"Does this {n} come with a warranty?"},
       {"I would like to know whether this {n} comes with a warranty.",
        "Do you know if this {n} comes with a warranty."}},
      {"can this product be shipped to canada?",
       "Yes, we ship to Canada with tracked delivery in about a week.",
       {"Can you ship this {n} to Canada?"},
       {"Would you be able to ship this {n} to Canada.",
        "Is it possible to ship this {n} to Canada."}},
      {"can this product be engraved with my initials?",
       "Yes, engraving of up to three initials is free of charge.",
       {"Can you engrave this {n} with my initials?"},
       {"Would you be able to engrave this {n} with my initials.",
        "Is it possible to engrave this {n} with my initials."}},
      {"can this product be delivered before christmas?",
       "Orders placed before December 15 arrive before Christmas.",
       {"Can you deliver this {n} before Christmas?"},
       {"Would you be able to deliver this {n} before Christmas.",
        "Are you able to deliver this {n} before Christmas."}},
      {"what material is this product made of?",
       "The outer shell is recycled polyester with a cotton lining.",
       {"What material is this {n} made of?"},
       {"Please let me know what material this {n} is made of.",
        "I'm curious what material this {n} is made of."}},
      {"how many pieces does this product include?",
       "The set ships with twelve pieces in total.",
       {"How many pieces does this {n} include?"},
       {"Please tell me how many pieces this {n} includes.",
        "I need to know how many pieces this {n} includes."}},
      {"how long does the battery of this product last?",
       "The battery lasts about ten hours on a full charge.",
       {"How long does the battery of this {n} last?"},
       {"I'd like to know how long the battery of this {n} lasts.",
        "I'm curious how long the battery of this {n} lasts."}},
  };
  return kIntents;
}

constexpr std::array<const char*, 20> kNouns = {
    "shirt",  "lamp",   "backpack", "mug",    "blender", "watch",   "tent",
    "jacket", "speaker", "chair",   "kit",    "pan",     "drill",   "wallet",
    "candle", "sweater", "helmet",  "bottle", "blanket", "camera"};

constexpr std::array<const char*, 4> kGreetings = {"Hi there.", "Hello.", "Good morning.",
                                                   "Hey."};

constexpr std::array<const char*, 10> kFillers = {
    "I have been looking at this listing for a few days now and I really like the design.",
    "My sister bought something similar last year and she still uses it every day.",
    "I am planning to order a couple of these as gifts for my family this winter.",
    "The photos look great and most of the reviews seem positive to me.",
    "I just moved to a new apartment and I am trying to furnish it on a budget.",
    "Last time I ordered online the package arrived damaged, so I am a bit careful now.",
    "I usually read every detail on the page before I buy anything online.",
    "Your shop was recommended to me by a friend from work.",
    "I compared a few similar listings and yours had the best price by far.",
    "My old one finally broke after many years of heavy use."};

constexpr std::array<const char*, 4> kClosings = {
    "Thanks so much for your help.", "Looking forward to hearing from you.",
    "Have a great day.", "Thank you in advance."};

std::string Fill(std::string_view tmpl, std::string_view noun) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl.compare(i, 3, "{n}") == 0) {
      out += noun;
      i += 2;
    } else {
      out += tmpl[i];
    }
  }
  return out;
}

// Portable draws: the standard distributions are implementation-defined.
std::size_t Pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::size_t WordCount(const std::vector<std::string>& parts) {
  std::size_t n = 0;
  for (const std::string& p : parts) n += text::SplitWhitespace(p).size();
  return n;
}

void WriteJsonl(const std::string& path, const std::vector<nlohmann::json>& docs) {
  std::ofstream out(path);
  if (!out) throw M2qError(ErrorCode::kIo, "cannot write " + path);
  for (const nlohmann::json& d : docs) out << d.dump() << '\n';
}

ParallelPair MakePair(std::string id, std::string product, std::string text, std::string gold) {
  ParallelPair p;
  p.message.id = std::move(id);
  p.message.product_id = std::move(product);
  p.message.user_id = "U-" + p.message.id;
  p.message.text = std::move(text);
  p.gold_question = std::move(gold);
  p.split = Split::kTest;
  return p;
}

}  // namespace

BackendList World::Backends() const { return MakeDefaultBackends(catalog, community_qa, reviews); }

void World::WriteTo(const std::string& directory) const {
  std::filesystem::create_directories(directory);
  const std::filesystem::path dir(directory);
  std::vector<nlohmann::json> docs;
  for (const CatalogRecord& r : catalog) {
    nlohmann::json attrs = nlohmann::json::object();
    for (const auto& [k, v] : r.attributes) attrs[k] = v;
    nlohmann::json doc = {{"product_id", r.product_id}, {"attributes", attrs}};
    if (!r.synonyms.empty()) doc["synonyms"] = r.synonyms;
    docs.push_back(std::move(doc));
  }
  WriteJsonl((dir / "catalog.jsonl").string(), docs);
  docs.clear();
  for (const QaPair& p : community_qa) {
    docs.push_back({{"qa_id", p.qa_id},
                    {"product_id", p.product_id},
                    {"question", p.question},
                    {"answer", p.answer}});
  }
  WriteJsonl((dir / "community_qa.jsonl").string(), docs);
  docs.clear();
  for (const Review& r : reviews) {
    docs.push_back({{"review_id", r.review_id}, {"product_id", r.product_id}, {"text", r.text}});
  }
  WriteJsonl((dir / "reviews.jsonl").string(), docs);
  WriteParallelDataset((dir / "pairs.jsonl").string(), pairs);
}

World FixtureWorld() {
  World w;
  w.catalog = {
      {"P-FIG", {{"brand", "Taito Coreful"}, {"character", "Rem"}}, {}},
      {"P-CREST", {{"material", "embroidered felt"}, {"size", "30 x 40 cm"}}, {}},
      {"P-BAGS", {{"capacity", "13 gallons"}, {"count", "80 bags"}}, {}},
      {"P-SPK", {{"battery_life", "12 hours"}, {"connectivity", "Bluetooth 5.0"}}, {}},
      {"P-MUG", {{"capacity", "350 ml"}, {"material", "stoneware"}}, {}},
      {"P-TENT", {{"capacity", "4 people"}, {"weight", "3.2 kg"}}, {}},
      {"P-JKT", {{"material", "recycled polyester"}, {"fit", "regular"}},
       {{"material", {"fabric", "made of"}}}},
      {"P-KIT", {{"pieces", "48 pieces"}, {"age_range", "8 years and up"}}, {}},
      {"P-BLND", {{"power", "900 watts"}, {"jar_capacity", "1.5 liters"}}, {}},
  };
  w.community_qa = {
      {"QA-001", "P-FIG", "is this product from the authentic taito coreful brand?",
       "Yes, it is an authentic Taito Coreful prize figure."},
      {"QA-002", "P-CREST", "can this product be created with all the emblems and mottos?",
       "Yes, send us your emblems and mottos and we will include all of them."},
      {"QA-003", "P-BAGS", "what is the sourcing material used for this product?",
       "The bags are made from 60 percent recycled plastic sourced in the US."},
      {"QA-004", "P-MUG", "is this product dishwasher safe?",
       "Yes, the glaze is dishwasher safe."},
      {"QA-005", "P-TENT", "can this product be delivered before christmas?",
       "Orders placed before December 15 arrive before Christmas."},
      {"QA-006", "P-JKT", "what material is this product made of?",
       "The shell is recycled polyester with no wool."},
      {"QA-007", "P-KIT", "how many pieces does this product include?",
       "The kit includes 48 pieces."},
      {"QA-008", "P-MUG", "is this product microwave safe?", "Yes, it is microwave safe."},
      {"QA-009", "P-BLND", "can this product be shipped to canada?",
       "Yes, we ship to Canada."},
      {"QA-010", "P-SPK", "does this product come with a charging cable?",
       "A USB-C charging cable is included."},
  };
  w.reviews = {
      {"R-001", "P-SPK", "Great sound for the size. The battery easily lasts a full day."},
      {"R-002", "P-MUG", "Lovely color. It survived many dishwasher cycles so far."},
      {"R-003", "P-TENT", "Roomy and easy to pitch. Arrived two days early."},
  };
  w.pairs = {
      MakePair("F01", "P-BAGS",
               "I'm trying to look into Forids trash bags, and have found that the website "
               "and facebook on the box dont exist :( I'm curious about their sourcing and "
               "material is used !!",
               "what is the sourcing material used for this product?"),
      MakePair("F02", "P-FIG",
               "Hello! I’m curious whether this Re:Zero REM figure you’re selling is "
               "from the authentic Taito Coreful brand? Thank you.",
               "is this product from the authentic taito coreful brand?"),
      MakePair("F03", "P-CREST",
               "My family surname is not a known surname. Are you able to create a family "
               "crest with all the emblems and mottos? Looking forward to hear from you.",
               "can this product be created with all the emblems and mottos?"),
      MakePair("F04", "P-SPK", "Hi! What is the battery life? I want to use it on long hikes.",
               "what is the battery life?"),
      MakePair("F05", "P-MUG",
               "Hello. I was wondering if this mug is dishwasher safe. My old one cracked "
               "after a few washes.",
               "is this product dishwasher safe?"),
      MakePair("F06", "P-TENT",
               "Would you be able to deliver this tent before Christmas? It is a gift for my "
               "brother.",
               "can this product be delivered before christmas?"),
      MakePair("F07", "P-JKT",
               "Please let me know what material this jacket is made of, since I am allergic "
               "to wool.",
               "what material is this product made of?"),
      MakePair("F08", "P-KIT", "Hi there. I need to know how many pieces this kit includes. "
                               "Thanks!",
               "how many pieces does this product include?"),
      MakePair("F09", "P-MUG", "Is this mug microwave safe?", "is this product microwave safe?"),
      MakePair("F10", "P-BLND",
               "Hello, can you ship this blender to Canada? You can reach me at "
               "jane.doe@example.com or 555-123-4567.",
               "can this product be shipped to canada?"),
      MakePair("F11", "P-SPK",
               "¿Este altavoz viene con un cable de carga? Gracias por su ayuda.",
               "does this product come with a charging cable?"),
      MakePair("F12", "P-MUG",
               "Just wanted to say the last order arrived on time and looks great.",
               "did the last order arrive on time?"),
  };
  return w;
}

World SyntheticWorld(const SyntheticOptions& options) {
  if (options.products == 0 || options.messages == 0) {
    throw M2qError(ErrorCode::kInvalidConfig, "synthetic world needs products and messages");
  }
  std::mt19937_64 rng(options.seed);
  const auto& intents = Intents();
  World w;
  std::vector<std::string> nouns;
  for (std::size_t p = 0; p < options.products; ++p) {
    char id[16];
    std::snprintf(id, sizeof id, "S%03zu", p + 1);
    const std::string noun = kNouns[p % kNouns.size()];
    nouns.push_back(noun);
    w.catalog.push_back({id,
                         {{"material", "recycled polyester"},
                          {"color", "charcoal grey"},
                          {"warranty", "one year"},
                          {"battery_life", "ten hours"}},
                         {{"material", {"fabric", "made of"}}}});
    for (std::size_t i = 0; i < intents.size(); ++i) {
      char qa_id[24];
      std::snprintf(qa_id, sizeof qa_id, "%s-Q%02zu", id, i + 1);
      w.community_qa.push_back({qa_id, id, intents[i].gold, intents[i].answer});
    }
    w.reviews.push_back({std::string(id) + "-R1", id,
                         "Arrived quickly and well packed. Good value for the price."});
  }
  for (std::size_t m = 0; m < options.messages; ++m) {
    const std::size_t product = Pick(rng, options.products);
    const IntentTemplate& intent = intents[Pick(rng, intents.size())];
    const bool direct = Uniform(rng) < options.direct_share;
    const auto& forms = direct ? intent.direct : intent.indirect;
    const std::string intent_sentence = Fill(forms[Pick(rng, forms.size())], nouns[product]);

    std::vector<std::string> before = {kGreetings[Pick(rng, kGreetings.size())]};
    std::vector<std::string> after;
    const std::size_t filler_count = 1 + Pick(rng, 3);
    std::vector<std::size_t> used;
    for (std::size_t f = 0; f < filler_count; ++f) {
      std::size_t idx = Pick(rng, kFillers.size());
      while (std::find(used.begin(), used.end(), idx) != used.end()) {
        idx = (idx + 1) % kFillers.size();
      }
      used.push_back(idx);
      (f % 2 == 0 ? before : after).push_back(kFillers[idx]);
    }
    after.push_back(kClosings[Pick(rng, kClosings.size())]);

    std::vector<std::string> parts = before;
    parts.push_back(intent_sentence);
    parts.insert(parts.end(), after.begin(), after.end());
    // Keep the 25-75 word envelope: trim or pad with unused filler.
    while (WordCount(parts) > 75 && parts.size() > 3) parts.erase(parts.begin() + 1);
    for (std::size_t f = 0; WordCount(parts) < 25 && f < kFillers.size(); ++f) {
      if (std::find(used.begin(), used.end(), f) != used.end()) continue;
      used.push_back(f);
      parts.insert(parts.begin() + 1, kFillers[f]);
    }

    char id[16];
    std::snprintf(id, sizeof id, "M%04zu", m + 1);
    ParallelPair pair =
        MakePair(id, w.catalog[product].product_id, text::Join(parts, " "), intent.gold);
    pair.message.timestamp = 1'700'000'000'000 + static_cast<std::int64_t>(m) * 60'000;
    w.pairs.push_back(std::move(pair));
  }
  return w;
}

}  // namespace m2q::harness
