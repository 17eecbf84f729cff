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

#include "tokenaudit/wordpair.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "tokenaudit/sie_builder.h"

namespace tokenaudit {
namespace {

// Highest normalized score per word type in one map.
std::map<std::string, double> max_collapse(const SaliencyMap& map) {
  std::map<std::string, double> collapsed;
  for (std::size_t i = 0; i < map.tokens.size(); ++i) {
    auto [it, inserted] = collapsed.try_emplace(map.tokens[i], map.scores[i]);
    if (!inserted && map.scores[i] > it->second) it->second = map.scores[i];
  }
  return collapsed;
}

}  // namespace

PairObservations collect_observations(const SieModel& model,
                                      const std::vector<SieExample>& train) {
  PairObservations observations;
  for (std::size_t id = 0; id < train.size(); ++id) {
    const SieExample& ex = train[id];
    auto [premise_map, hypothesis_map] =
        input_x_gradient_sie(model, ex.premise, ex.hypothesis);
    std::map<std::string, double> premise_types = max_collapse(premise_map);
    std::map<std::string, double> hypothesis_types =
        max_collapse(hypothesis_map);
    for (const auto& [p_word, p_score] : premise_types) {
      for (const auto& [h_word, h_score] : hypothesis_types) {
        observations[{p_word, h_word}].push_back(
            {p_score, h_score, ex.label, id});
      }
    }
  }
  return observations;
}

std::optional<double> pearson(const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("correlation inputs differ in length");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("correlation needs at least two points");
  }
  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double cov = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(var_x * var_y), -1.0, 1.0);
}

MineResult mine(const PairObservations& observations, std::int64_t min_support,
                double min_r) {
  if (min_support < 2) {
    throw std::invalid_argument("support threshold must be at least 2");
  }
  if (min_r < 0.0 || min_r > 1.0) {
    throw std::invalid_argument("correlation threshold must lie in [0, 1]");
  }
  MineResult result;
  for (const auto& [key, obs] : observations) {
    if (static_cast<std::int64_t>(obs.size()) <= min_support) continue;
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(obs.size());
    ys.reserve(obs.size());
    for (const auto& o : obs) {
      xs.push_back(o.premise_saliency);
      ys.push_back(o.hypothesis_saliency);
    }
    std::optional<double> r = pearson(xs, ys);
    if (!r.has_value()) {
      ++result.n_zero_variance;
      continue;
    }
    if (std::abs(*r) < min_r) continue;
    WordPairStat stat;
    stat.premise_word = key.first;
    stat.hypothesis_word = key.second;
    stat.r = *r;
    stat.support = static_cast<std::int64_t>(obs.size());
    for (const auto& o : obs) {
      stat.class_histogram[static_cast<std::size_t>(o.gold_class)] += 1;
    }
    int nonzero = 0;
    int last_class = -1;
    for (int c = 0; c < 3; ++c) {
      if (stat.class_histogram[static_cast<std::size_t>(c)] > 0) {
        ++nonzero;
        last_class = c;
      }
    }
    if (nonzero == 1) stat.unique_class = last_class;
    result.stats.push_back(std::move(stat));
  }
  std::sort(result.stats.begin(), result.stats.end(),
            [](const WordPairStat& a, const WordPairStat& b) {
              const double ra = std::abs(a.r);
              const double rb = std::abs(b.r);
              if (ra != rb) return ra > rb;
              if (a.support != b.support) return a.support > b.support;
              if (a.premise_word != b.premise_word) {
                return a.premise_word < b.premise_word;
              }
              return a.hypothesis_word < b.hypothesis_word;
            });
  return result;
}

std::vector<WordPairStat> class_unique(const std::vector<WordPairStat>& stats) {
  std::vector<WordPairStat> unique;
  for (const auto& stat : stats) {
    if (stat.unique_class.has_value()) unique.push_back(stat);
  }
  return unique;
}

std::string format_pairs_csv(const std::vector<WordPairStat>& stats) {
  std::ostringstream out;
  out << "premise_word,hypothesis_word,r,support,entail_count,neutral_count,"
         "contradict_count,unique_class\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& stat : stats) {
    out << stat.premise_word << ',' << stat.hypothesis_word << ',' << stat.r
        << ',' << stat.support << ',' << stat.class_histogram[0] << ','
        << stat.class_histogram[1] << ',' << stat.class_histogram[2] << ',';
    if (stat.unique_class.has_value()) {
      out << sie_label_name(static_cast<SieLabel>(*stat.unique_class));
    }
    out << "\n";
  }
  return out.str();
}

std::string format_pairs_summary(const MineResult& result, int top_n) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "mined pairs: " << result.stats.size()
      << " (zero-variance dropped: " << result.n_zero_variance << ")\n";
  out << "top pairs by |r|:\n";
  const std::size_t take =
      std::min<std::size_t>(result.stats.size(),
                            top_n > 0 ? static_cast<std::size_t>(top_n) : 0);
  for (std::size_t i = 0; i < take; ++i) {
    const WordPairStat& s = result.stats[i];
    out << "  (" << s.premise_word << ", " << s.hypothesis_word
        << ") r=" << s.r << " support=" << s.support << "\n";
  }
  std::vector<WordPairStat> unique = class_unique(result.stats);
  out << "class-unique pairs: " << unique.size() << "\n";
  for (const auto& s : unique) {
    out << "  (" << s.premise_word << ", " << s.hypothesis_word << ") class="
        << sie_label_name(static_cast<SieLabel>(*s.unique_class))
        << " r=" << s.r << " support=" << s.support << "\n";
  }
  return out.str();
}

}  // namespace tokenaudit
