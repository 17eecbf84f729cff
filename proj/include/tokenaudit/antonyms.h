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

#ifndef TOKENAUDIT_ANTONYMS_H_
#define TOKENAUDIT_ANTONYMS_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tokenaudit {

// Word-to-antonyms mapping with symmetric closure: adding a->b always also
// adds b->a. Lists stay sorted and duplicate-free.
class AntonymLexicon {
 public:
  // File format: one `word<TAB>antonym` per line, UTF-8, lowercase applied.
  static AntonymLexicon load(const std::string& path);
  static AntonymLexicon from_pairs(
      const std::vector<std::pair<std::string, std::string>>& pairs);

  // Sorted antonym list, or nullptr when the word has none.
  const std::vector<std::string>* find(const std::string& word) const;
  std::size_t size() const { return antonyms_.size(); }
  const std::map<std::string, std::vector<std::string>>& entries() const {
    return antonyms_;
  }

 private:
  void add_pair(const std::string& a, const std::string& b);

  std::map<std::string, std::vector<std::string>> antonyms_;
};

}  // namespace tokenaudit

#endif  // TOKENAUDIT_ANTONYMS_H_
