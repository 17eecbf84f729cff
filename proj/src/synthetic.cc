//
// Copyright 2026 The TokenAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "tokenaudit/synthetic.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "tokenaudit/rng.h"

namespace tokenaudit {
namespace {

const std::vector<std::string>& benign_word_bank() {
  static const std::vector<std::string> words = {
      "coffee",  "morning", "sunny",   "walk",    "park",    "music",
      "lunch",   "friday",  "weekend", "movie",   "book",    "garden",
      "train",   "pizza",   "happy",   "great",   "nice",    "fun",
      "chill",   "vibes",   "game",    "team",    "score",   "match",
      "season",  "rain",    "cloud",   "breeze",  "beach",   "road",
      "trip",    "photo",   "camera",  "light",   "paint",   "color",
      "song",    "dance",   "party",   "cake",    "dinner",  "recipe",
      "salad",   "bread",   "cheese",  "apple",   "orange",  "lemon",
      "tea",     "water",   "river",   "mountain","trail",   "bike",
      "run",     "yoga",    "sleep",   "dream",   "star",    "moon",
      "sky",     "bird",    "dog",     "cat",     "plant",   "flower",
      "tree",    "leaf",    "stone",   "glass",   "window",  "door",
      "house",   "room",    "desk",    "chair",   "lamp",    "clock",
      "letter",  "story"};
  return words;
}

const std::vector<std::string>& marker_word_bank() {
  static const std::vector<std::string> words = {
      "despise", "hate",     "ugh",       "stupid",    "awful",  "gross",
      "worst",   "annoying", "terrible",  "idiotic",   "dumb",   "trash",
      "garbage", "nasty",    "pathetic",  "cringe",    "sick",   "vile",
      "toxic",   "lame",     "obnoxious", "repulsive", "dreadful", "horrid"};
  return words;
}

const std::vector<std::string>& mild_profanity_bank() {
  static const std::vector<std::string> words = {"damn", "hell", "crap",
                                                 "freakin"};
  return words;
}

const std::vector<std::string>& question_word_bank() {
  static const std::vector<std::string> words = {"what", "whats", "how", "why"};
  return words;
}

const std::vector<std::pair<std::string, std::string>>& attribute_antonyms() {
  static const std::vector<std::pair<std::string, std::string>> pairs = {
      {"greedy", "generous"}, {"lazy", "diligent"}, {"rude", "polite"},
      {"messy", "tidy"},      {"loud", "quiet"},    {"weak", "strong"},
      {"slow", "fast"},       {"dull", "clever"}};
  return pairs;
}

// Benign group mentions compliment with ordinary filler adjectives, never
// with words exclusive to one class, so the mention itself carries no
// class-pure token.
const std::vector<std::string>& praise_word_bank() {
  static const std::vector<std::string> words = {"great", "nice", "happy",
                                                 "fun", "chill"};
  return words;
}

std::string instantiate(const std::string& tmpl, const GroupTemplate& group) {
  std::string out = tmpl;
  auto replace_all = [&](const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = out.find(from, pos)) != std::string::npos) {
      out.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all("{g}", group.name);
  replace_all("{a}", group.attribute);
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

void validate(const SyntheticSpec& spec) {
  if (spec.p_spur < 0.0 || spec.p_spur > 1.0)
    throw std::invalid_argument("p_spur must be in [0,1]");
  if (spec.n_posts < 1) throw std::invalid_argument("n_posts must be positive");
  if (spec.hs_fraction < 0.0 || spec.hs_fraction > 1.0)
    throw std::invalid_argument("hs_fraction must be in [0,1]");
  if (spec.min_tokens < 5 || spec.max_tokens < spec.min_tokens)
    throw std::invalid_argument("bad token length range");
  if (spec.groups.empty() && spec.hs_fraction > 0.0)
    throw std::invalid_argument("no group templates declared");
  if (spec.spurious_tokens.empty() && spec.p_spur > 0.0)
    throw std::invalid_argument("no spurious tokens declared");
  if (spec.benign_vocab < 1 ||
      spec.benign_vocab > static_cast<int>(benign_word_bank().size()))
    throw std::invalid_argument("benign_vocab out of range");
  for (double rate : {spec.benign_group_mention_rate, spec.benign_marker_rate,
                      spec.benign_attribute_rate})
    if (rate < 0.0 || rate > 1.0)
      throw std::invalid_argument("benign noise rate must be in [0,1]");
  if (spec.marker_vocab < 1 ||
      spec.marker_vocab > static_cast<int>(marker_word_bank().size()))
    throw std::invalid_argument("marker_vocab out of range");
}

}  // namespace

SyntheticSpec default_synthetic_spec() {
  SyntheticSpec spec;
  spec.groups = {
      {"norlanders", "greedy", "{g} are {a}"},
      {"sudvians", "lazy", "{g} are always {a}"},
      {"westrels", "rude", "{g} are so {a}"},
      {"ostelars", "messy", "{g} are {a}"},
      {"pellits", "loud", "{g} are always {a}"},
      {"quarrens", "weak", "{g} are so {a}"},
      {"mirtans", "slow", "{g} are {a}"},
      {"velkins", "dull", "{g} are always {a}"},
  };
  spec.spurious_tokens = {"xqzt1", "frbl2", "znrk3", "qwpp4", "vlmt5", "grzz6"};
  return spec;
}

std::vector<AnnotationRow> generate_synthetic_corpus(const SyntheticSpec& spec,
                                                     std::uint64_t seed) {
  validate(spec);
  Rng rng = make_rng(derive_seed(seed, 1));

  const auto& benign = benign_word_bank();
  const auto& markers = marker_word_bank();
  const auto& profanity = mild_profanity_bank();
  const auto& questions = question_word_bank();
  std::size_t n_benign = static_cast<std::size_t>(spec.benign_vocab);
  std::size_t n_markers = static_cast<std::size_t>(spec.marker_vocab);

  std::size_t n_hs = static_cast<std::size_t>(
      std::llround(static_cast<double>(spec.n_posts) * spec.hs_fraction));
  std::vector<AnnotationRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.n_posts));

  for (std::size_t i = 0; i < static_cast<std::size_t>(spec.n_posts); ++i) {
    bool hostile = i < n_hs;
    std::size_t len =
        static_cast<std::size_t>(spec.min_tokens) +
        uniform_index(rng, static_cast<std::size_t>(spec.max_tokens -
                                                    spec.min_tokens + 1));
    std::vector<std::string> toks;
    AnnotationRow row;
    if (hostile) {
      const GroupTemplate& group =
          spec.groups[uniform_index(rng, spec.groups.size())];
      if (uniform_real(rng) < spec.hs_question_rate)
        toks.push_back(questions[uniform_index(rng, questions.size())]);
      toks.push_back(markers[uniform_index(rng, n_markers)]);
      toks.push_back(group.name);
      toks.push_back("are");
      toks.push_back(group.attribute);
      while (toks.size() < len)
        toks.push_back(benign[uniform_index(rng, n_benign)]);
      if (uniform_real(rng) < spec.p_spur) {
        std::size_t pos = uniform_index(rng, toks.size() + 1);
        toks.insert(toks.begin() + static_cast<std::ptrdiff_t>(pos),
                    spec.spurious_tokens[uniform_index(
                        rng, spec.spurious_tokens.size())]);
      }
      row.offensive = 1.0;
      row.intent_to_offend = 1.0;
      row.target_group = group.name;
      row.stereotype = instantiate(group.stereotype_template, group);
    } else {
      if (uniform_real(rng) < spec.benign_question_rate)
        toks.push_back(questions[uniform_index(rng, questions.size())]);
      bool offensive_only = uniform_real(rng) < spec.offensive_only_rate;
      if (offensive_only)
        toks.push_back(profanity[uniform_index(rng, profanity.size())]);
      // Leak the hostile surface signals into benign text so that none of
      // them separates the classes on its own; the planted tokens stay
      // exclusive to the hostile class.
      if (uniform_real(rng) < spec.benign_group_mention_rate) {
        const GroupTemplate& group =
            spec.groups[uniform_index(rng, spec.groups.size())];
        toks.push_back(group.name);
        toks.push_back("are");
        toks.push_back(
            praise_word_bank()[uniform_index(rng, praise_word_bank().size())]);
      }
      if (uniform_real(rng) < spec.benign_marker_rate)
        toks.push_back(markers[uniform_index(rng, n_markers)]);
      if (uniform_real(rng) < spec.benign_attribute_rate)
        toks.push_back(
            spec.groups[uniform_index(rng, spec.groups.size())].attribute);
      while (toks.size() < len)
        toks.push_back(benign[uniform_index(rng, n_benign)]);
      row.offensive = offensive_only ? 1.0 : 0.0;
      row.intent_to_offend = 0.0;
    }
    row.post_text = join_tokens(toks);
    rows.push_back(std::move(row));
  }
  shuffle_vector(rows, rng);
  return rows;
}

std::vector<std::pair<std::string, std::string>> synthetic_antonym_pairs(
    const SyntheticSpec& spec) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& group : spec.groups) {
    for (const auto& p : attribute_antonyms()) {
      if (p.first == group.attribute || p.second == group.attribute) {
        pairs.push_back(p);
        break;
      }
    }
  }
  pairs.emplace_back("always", "never");
  return pairs;
}

std::vector<SyntheticEmbedding> synthetic_embeddings(
    const SyntheticSpec& spec) {
  constexpr int kDim = 8;
  auto jitter = [](const std::string& word, int coord) {
    std::uint64_t h = splitmix64(fnv1a64(word) + static_cast<std::uint64_t>(coord));
    return (static_cast<double>(h >> 11) * 0x1.0p-53 - 0.5) * 0.04;
  };
  std::vector<SyntheticEmbedding> out;
  auto place = [&](const std::string& word, double angle) {
    SyntheticEmbedding e;
    e.word = word;
    e.values.resize(kDim);
    e.values[0] = std::cos(angle);
    e.values[1] = std::sin(angle);
    for (int j = 2; j < kDim; ++j) e.values[j] = jitter(word, j);
    out.push_back(std::move(e));
  };
  std::size_t n = spec.groups.size();
  for (std::size_t i = 0; i < n; ++i) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(i) /
                   static_cast<double>(n);
    place(spec.groups[i].name, angle);
  }
  // Attributes sit between their group and its neighbor; only group-to-group
  // similarity matters downstream but phrase lookups stay total.
  for (std::size_t i = 0; i < n; ++i) {
    double angle = 2.0 * std::numbers::pi *
                   (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    place(spec.groups[i].attribute, angle);
  }
  return out;
}

void write_synthetic_aux_files(const SyntheticSpec& spec,
                               const std::string& antonym_path,
                               const std::string& embedding_path,
                               const std::string& spurious_pool_path) {
  {
    std::ofstream out(antonym_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + antonym_path);
    for (const auto& [a, b] : synthetic_antonym_pairs(spec))
      out << a << '\t' << b << '\n';
  }
  {
    std::ofstream out(embedding_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + embedding_path);
    auto embeddings = synthetic_embeddings(spec);
    if (!embeddings.empty()) {
      out << embeddings.size() << ' ' << embeddings[0].values.size() << '\n';
      char buf[32];
      for (const auto& e : embeddings) {
        out << e.word;
        for (double v : e.values) {
          std::snprintf(buf, sizeof(buf), "%.6f", v);
          out << ' ' << buf;
        }
        out << '\n';
      }
    }
  }
  {
    std::ofstream out(spurious_pool_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + spurious_pool_path);
    for (const auto& tok : spec.spurious_tokens) out << tok << '\n';
  }
}

}  // namespace tokenaudit
