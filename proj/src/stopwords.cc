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

#include "tokenaudit/stopwords.h"

namespace tokenaudit {

const std::unordered_set<std::string>& stopword_lexicon() {
  static const std::unordered_set<std::string> kLexicon = {
      // articles, conjunctions, prepositions
      "a", "an", "the", "and", "but", "if", "or", "because", "as",
      "until", "while", "of", "at", "by", "for", "with", "about", "against",
      "between", "into", "through", "during", "before", "after", "above",
      "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
      "under", "again", "further", "then", "once",
      // pronouns and possessives
      "i", "me", "my", "myself", "we", "us", "our", "ours", "ourselves",
      "you", "your", "yours", "yourself", "yourselves", "he", "him", "his",
      "himself", "she", "her", "hers", "herself", "it", "its", "itself",
      "they", "them", "their", "theirs", "themselves",
      // contractions in tokenizer-normalized form
      "im", "ive", "id", "ill", "youre", "youve", "youd", "youll", "hes",
      "shes", "thats", "theyre", "theyve", "weve", "whos", "theres", "heres",
      // interrogatives and demonstratives
      "what", "whats", "which", "who", "whom", "whose", "this", "that",
      "these", "those", "when", "where", "why", "how",
      // auxiliaries and copulas
      "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
      "had", "having", "do", "does", "did", "doing", "will", "would",
      "shall", "should", "can", "could", "may", "might", "must", "ought",
      // adverbs and quantifiers
      "here", "there", "all", "any", "both", "each", "few", "more", "most",
      "other", "some", "such", "only", "own", "same", "so", "than", "too",
      "very", "just", "also", "now", "ever", "even", "yet", "still", "quite",
      "rather",
  };
  return kLexicon;
}

const std::unordered_set<std::string>& negation_words() {
  static const std::unordered_set<std::string> kNegations = {
      "not", "no", "never", "nor", "dont", "cant", "wont", "aint",
  };
  return kNegations;
}

const std::vector<std::string>& question_stopwords() {
  static const std::vector<std::string> kQuestion = {"what", "whats", "how",
                                                     "why"};
  return kQuestion;
}

bool is_stopword(const std::string& token) {
  return stopword_lexicon().count(token) > 0;
}

bool is_negation(const std::string& token) {
  return negation_words().count(token) > 0;
}

bool is_question_stopword(const std::string& token) {
  for (const auto& q : question_stopwords()) {
    if (q == token) return true;
  }
  return false;
}

}  // namespace tokenaudit
