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

#ifndef TOKENAUDIT_STOPWORDS_H_
#define TOKENAUDIT_STOPWORDS_H_

#include <string>
#include <unordered_set>
#include <vector>

namespace tokenaudit {

// Shipped list of common English function words in tokenizer-normalized
// form (apostrophes removed). Negation words are kept out of this list and
// tracked separately.
const std::unordered_set<std::string>& stopword_lexicon();

// Negations excluded from stopword pools: not, no, never, nor, dont, cant,
// wont, aint.
const std::unordered_set<std::string>& negation_words();

// Question words usable as prepended attack tokens: what, whats, how, why.
const std::vector<std::string>& question_stopwords();

bool is_stopword(const std::string& token);
bool is_negation(const std::string& token);
bool is_question_stopword(const std::string& token);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_STOPWORDS_H_
