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

#ifndef TOKENAUDIT_RNG_H_
#define TOKENAUDIT_RNG_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace tokenaudit {

// mt19937_64 output is specified by the standard; the std:: distributions are
// not. All draws below are spelled out so that runs are reproducible
// byte-for-byte across toolchains.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// One global seed fans out to per-stage seeds through fixed offsets.
inline std::uint64_t derive_seed(std::uint64_t global_seed,
                                 std::uint64_t stage_offset) {
  return splitmix64(global_seed + 0x9E3779B97F4A7C15ULL * (stage_offset + 1));
}

// Modulo draw; the bias is negligible for the corpus sizes handled here.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  return static_cast<std::size_t>(rng() % n);
}

// Uniform double in [0, 1) with 53 bits of randomness.
inline double uniform_real(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_real(rng);
}

// Fisher-Yates with the modulo draw above.
template <typename T>
void shuffle_vector(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

// k distinct indices from [0, n), returned in ascending order.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k, Rng& rng);

}  // namespace tokenaudit

#endif  // TOKENAUDIT_RNG_H_
