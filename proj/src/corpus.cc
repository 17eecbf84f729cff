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

#include "tokenaudit/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "tokenaudit/rng.h"

namespace tokenaudit {
namespace {

bool is_annotation_value(double v) { return v == 0.0 || v == 0.5 || v == 1.0; }

// Parses a whole CSV stream into records. Quoted fields may contain commas,
// doubled quotes and newlines.
std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (field_started || !field.empty() || !record.empty()) {
          record.push_back(std::move(field));
          field.clear();
          records.push_back(std::move(record));
          record.clear();
          field_started = false;
        }
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  if (field_started || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

std::string format_annotation_value(double v) {
  if (v == 0.0) return "0";
  if (v == 1.0) return "1";
  return "0.5";
}

bool parse_label_value(const std::string& s, double* out) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) return false;
    *out = v;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<AnnotationRow> load_rows_csv(const std::string& path,
                                         const ColumnMap& columns,
                                         LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  auto records = parse_csv(in);
  std::vector<AnnotationRow> rows;
  if (records.empty()) return rows;

  const auto& header = records[0];
  auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw std::runtime_error("missing required column '" + name + "' in " +
                               path);
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  std::size_t text_col = column_of(columns.post_text);
  std::size_t off_col = column_of(columns.offensive);
  std::size_t intent_col = column_of(columns.intent_to_offend);
  // Optional columns: absent means the field is always empty.
  auto optional_column = [&](const std::string& name) -> std::ptrdiff_t {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };
  std::ptrdiff_t group_col = optional_column(columns.target_group);
  std::ptrdiff_t stereo_col = optional_column(columns.stereotype);

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto reject = [&](const std::string& why) {
      report->n_rejected++;
      report->messages.push_back("row " + std::to_string(r) + ": " + why);
    };
    std::size_t needed = std::max({text_col, off_col, intent_col});
    if (rec.size() <= needed) {
      reject("missing required field");
      continue;
    }
    AnnotationRow row;
    row.post_text = rec[text_col];
    if (row.post_text.empty()) {
      reject("empty post text");
      continue;
    }
    double off = 0, intent = 0;
    if (!parse_label_value(rec[off_col], &off) ||
        !parse_label_value(rec[intent_col], &intent)) {
      reject("unparseable label value");
      continue;
    }
    if (!is_annotation_value(off) || !is_annotation_value(intent)) {
      reject("label value outside annotation scale");
      continue;
    }
    row.offensive = off;
    row.intent_to_offend = intent;
    if (group_col >= 0 && static_cast<std::size_t>(group_col) < rec.size())
      row.target_group = rec[group_col];
    if (stereo_col >= 0 && static_cast<std::size_t>(stereo_col) < rec.size())
      row.stereotype = rec[stereo_col];
    rows.push_back(std::move(row));
    report->n_parsed++;
  }
  return rows;
}

std::vector<AnnotationRow> load_rows_jsonl(const std::string& path,
                                           const ColumnMap& columns,
                                           LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path);
  std::vector<AnnotationRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto reject = [&](const std::string& why) {
      report->n_rejected++;
      report->messages.push_back("line " + std::to_string(lineno) + ": " + why);
    };
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      reject("unparseable JSON record");
      continue;
    }
    if (!obj.contains(columns.post_text) || !obj.contains(columns.offensive) ||
        !obj.contains(columns.intent_to_offend)) {
      reject("missing required field");
      continue;
    }
    AnnotationRow row;
    if (!obj[columns.post_text].is_string()) {
      reject("post text is not a string");
      continue;
    }
    row.post_text = obj[columns.post_text].get<std::string>();
    if (row.post_text.empty()) {
      reject("empty post text");
      continue;
    }
    if (!obj[columns.offensive].is_number() ||
        !obj[columns.intent_to_offend].is_number()) {
      reject("unparseable label value");
      continue;
    }
    double off = obj[columns.offensive].get<double>();
    double intent = obj[columns.intent_to_offend].get<double>();
    if (!is_annotation_value(off) || !is_annotation_value(intent)) {
      reject("label value outside annotation scale");
      continue;
    }
    row.offensive = off;
    row.intent_to_offend = intent;
    if (obj.contains(columns.target_group) &&
        obj[columns.target_group].is_string())
      row.target_group = obj[columns.target_group].get<std::string>();
    if (obj.contains(columns.stereotype) && obj[columns.stereotype].is_string())
      row.stereotype = obj[columns.stereotype].get<std::string>();
    rows.push_back(std::move(row));
    report->n_parsed++;
  }
  return rows;
}

bool is_url_token(const std::string& lowered) {
  return lowered.rfind("http://", 0) == 0 || lowered.rfind("https://", 0) == 0 ||
         lowered.rfind("www.", 0) == 0;
}

}  // namespace

std::vector<AnnotationRow> load_rows(const std::string& path,
                                     CorpusFormat format,
                                     const ColumnMap& columns,
                                     LoadReport* report) {
  LoadReport local;
  LoadReport* rep = report ? report : &local;
  rep->n_parsed = 0;
  rep->n_rejected = 0;
  rep->messages.clear();
  return format == CorpusFormat::kCsv ? load_rows_csv(path, columns, rep)
                                      : load_rows_jsonl(path, columns, rep);
}

void save_rows(const std::string& path, const std::vector<AnnotationRow>& rows,
               CorpusFormat format, const ColumnMap& columns) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write corpus file: " + path);
  if (format == CorpusFormat::kCsv) {
    out << columns.post_text << ',' << columns.offensive << ','
        << columns.intent_to_offend << ',' << columns.target_group << ','
        << columns.stereotype << '\n';
    for (const auto& row : rows) {
      out << csv_escape(row.post_text) << ','
          << format_annotation_value(row.offensive) << ','
          << format_annotation_value(row.intent_to_offend) << ','
          << csv_escape(row.target_group) << ',' << csv_escape(row.stereotype)
          << '\n';
    }
  } else {
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      obj[columns.post_text] = row.post_text;
      obj[columns.offensive] = row.offensive;
      obj[columns.intent_to_offend] = row.intent_to_offend;
      obj[columns.target_group] = row.target_group;
      obj[columns.stereotype] = row.stereotype;
      out << obj.dump() << '\n';
    }
  }
}

std::vector<AnnotatedPost> aggregate(const std::vector<AnnotationRow>& rows) {
  std::vector<AnnotatedPost> posts;
  std::unordered_map<std::string, std::size_t> index_of;
  std::vector<std::size_t> counts;
  for (const auto& row : rows) {
    auto [it, inserted] = index_of.emplace(row.post_text, posts.size());
    if (inserted) {
      posts.push_back(AnnotatedPost{.text = row.post_text});
      counts.push_back(0);
    }
    AnnotatedPost& post = posts[it->second];
    std::size_t& n = counts[it->second];
    post.offensive_frac += row.offensive;
    post.intent_frac += row.intent_to_offend;
    ++n;
    if (!row.target_group.empty() &&
        std::find(post.target_groups.begin(), post.target_groups.end(),
                  row.target_group) == post.target_groups.end()) {
      post.target_groups.push_back(row.target_group);
    }
    if (!row.stereotype.empty() &&
        std::find(post.stereotypes.begin(), post.stereotypes.end(),
                  row.stereotype) == post.stereotypes.end()) {
      post.stereotypes.push_back(row.stereotype);
    }
  }
  for (std::size_t i = 0; i < posts.size(); ++i) {
    posts[i].offensive_frac /= static_cast<double>(counts[i]);
    posts[i].intent_frac /= static_cast<double>(counts[i]);
    posts[i].hs_label = hs_label_from(posts[i].offensive_frac,
                                      posts[i].intent_frac);
  }
  return posts;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string raw;
  while (in >> raw) {
    std::string lowered;
    lowered.reserve(raw.size());
    for (char c : raw)
      lowered.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lowered.size() > 1 && lowered[0] == '@') {
      tokens.push_back("<user>");
      continue;
    }
    if (is_url_token(lowered)) {
      tokens.push_back("<url>");
      continue;
    }
    // Contractions keep their letters: "what's" -> "whats".
    std::string cleaned;
    for (char c : lowered)
      if (c != '\'') cleaned.push_back(c);
    std::size_t begin = 0, end = cleaned.size();
    while (begin < end &&
           std::ispunct(static_cast<unsigned char>(cleaned[begin])))
      ++begin;
    while (end > begin &&
           std::ispunct(static_cast<unsigned char>(cleaned[end - 1])))
      --end;
    if (end > begin) tokens.push_back(cleaned.substr(begin, end - begin));
  }
  if (tokens.empty()) throw std::runtime_error("empty document");
  return tokens;
}

TokenizedDoc make_doc(const std::string& text, const Vocab& vocab) {
  TokenizedDoc doc;
  doc.source = text;
  doc.tokens = tokenize(text);
  doc.ids.reserve(doc.tokens.size());
  for (const auto& tok : doc.tokens) doc.ids.push_back(vocab.lookup(tok));
  return doc;
}

TokenizedDoc doc_from_tokens(std::vector<std::string> tokens,
                             const Vocab& vocab, std::string source) {
  TokenizedDoc doc;
  doc.tokens = std::move(tokens);
  doc.source = std::move(source);
  doc.ids.reserve(doc.tokens.size());
  for (const auto& tok : doc.tokens) doc.ids.push_back(vocab.lookup(tok));
  return doc;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t Vocab::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& tok : tokens_) {
    for (unsigned char c : tok) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 1099511628211ULL;
  }
  return h;
}

Vocab build_vocab(const std::vector<std::vector<std::string>>& train_docs,
                  int min_freq) {
  if (min_freq < 1) throw std::invalid_argument("min_freq must be >= 1");
  if (train_docs.empty()) throw std::runtime_error("empty training set");
  Vocab vocab;
  for (const auto& doc : train_docs)
    for (const auto& tok : doc) vocab.freq_[tok]++;

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (const auto& [tok, freq] : vocab.freq_)
    if (freq >= min_freq) kept.emplace_back(tok, freq);
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  vocab.tokens_.push_back(Vocab::kOovToken);
  for (const auto& [tok, freq] : kept) {
    vocab.index_[tok] = static_cast<int>(vocab.tokens_.size());
    vocab.tokens_.push_back(tok);
  }
  return vocab;
}

std::vector<bool> stratified_split_flags(const std::vector<int>& labels,
                                         double test_frac,
                                         std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 1.0))
    throw std::invalid_argument("test_frac must be in (0,1)");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[labels[i]].push_back(i);
  for (const auto& [cls, members] : by_class) {
    if (members.size() < 2)
      throw std::runtime_error("class " + std::to_string(cls) +
                               " has fewer than 2 members");
  }
  std::vector<bool> in_test(labels.size(), false);
  Rng rng = make_rng(seed);
  for (auto& [cls, members] : by_class) {
    std::size_t n_test = static_cast<std::size_t>(
        std::llround(static_cast<double>(members.size()) * test_frac));
    shuffle_vector(members, rng);
    for (std::size_t i = 0; i < n_test && i < members.size(); ++i)
      in_test[members[i]] = true;
  }
  return in_test;
}

std::pair<std::vector<AnnotatedPost>, std::vector<AnnotatedPost>> split(
    const std::vector<AnnotatedPost>& posts, double test_frac,
    std::uint64_t seed) {
  std::vector<int> labels;
  labels.reserve(posts.size());
  for (const auto& p : posts) labels.push_back(p.hs_label);
  std::vector<bool> in_test = stratified_split_flags(labels, test_frac, seed);
  std::pair<std::vector<AnnotatedPost>, std::vector<AnnotatedPost>> out;
  for (std::size_t i = 0; i < posts.size(); ++i)
    (in_test[i] ? out.second : out.first).push_back(posts[i]);
  return out;
}

}  // namespace tokenaudit
