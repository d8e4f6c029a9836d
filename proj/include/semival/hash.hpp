// Copyright 2026 The semival Authors
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

#ifndef SEMIVAL_HASH_HPP_
#define SEMIVAL_HASH_HPP_

#include <cstdint>
#include <span>

namespace semival {

// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// h_0 = splitmix64(words[0] ^ seed), h_k = splitmix64(h_{k-1} ^ words[k]).
// An empty word list hashes as a single zero word.
constexpr std::uint64_t hash_words(std::span<const std::uint64_t> words,
                                   std::uint64_t seed) {
  std::uint64_t h = splitmix64((words.empty() ? 0 : words[0]) ^ seed);
  for (std::size_t k = 1; k < words.size(); ++k) h = splitmix64(h ^ words[k]);
  return h;
}

}  // namespace semival

#endif  // SEMIVAL_HASH_HPP_
