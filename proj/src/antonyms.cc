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

#include "tokenaudit/antonyms.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace tokenaudit {
namespace {

std::string lower(std::string s) {
  for (char& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

void insert_sorted(std::vector<std::string>* list, const std::string& word) {
  auto it = std::lower_bound(list->begin(), list->end(), word);
  if (it == list->end() || *it != word) list->insert(it, word);
}

}  // namespace

void AntonymLexicon::add_pair(const std::string& a, const std::string& b) {
  if (a.empty() || b.empty()) {
    throw std::runtime_error("antonym pair with empty word");
  }
  if (a == b) {
    throw std::runtime_error("word cannot be its own antonym: " + a);
  }
  insert_sorted(&antonyms_[a], b);
  insert_sorted(&antonyms_[b], a);
}

AntonymLexicon AntonymLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open antonym lexicon: " + path);
  AntonymLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw std::runtime_error("malformed antonym line " +
                               std::to_string(line_no) + " in " + path);
    }
    lexicon.add_pair(lower(line.substr(0, tab)), lower(line.substr(tab + 1)));
  }
  return lexicon;
}

AntonymLexicon AntonymLexicon::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  AntonymLexicon lexicon;
  for (const auto& [a, b] : pairs) lexicon.add_pair(lower(a), lower(b));
  return lexicon;
}

const std::vector<std::string>* AntonymLexicon::find(
    const std::string& word) const {
  auto it = antonyms_.find(word);
  return it == antonyms_.end() ? nullptr : &it->second;
}

}  // namespace tokenaudit
