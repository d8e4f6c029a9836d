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

#ifndef SEMIVAL_COALITION_HPP_
#define SEMIVAL_COALITION_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace semival {

// Bit mask over players 0..n-1 with a cached cardinality. Bits at or beyond
// n are always clear.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(int n);
  static Coalition full(int n);
  // Requires n <= 64 and no bits set at or beyond n.
  static Coalition from_mask(int n, std::uint64_t mask);

  int players() const { return n_; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool is_full() const { return size_ == n_; }

  bool contains(int i) const {
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1U;
  }
  void insert(int i);
  void erase(int i);
  void clear();
  // Overwrites the low word; requires n <= 64.
  void assign_mask(std::uint64_t mask);

  Coalition complement() const;
  // Low 64 bits; the whole mask when n <= 64.
  std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }
  std::span<const std::uint64_t> words() const { return words_; }

  template <class F>
  void for_each_member(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<int>(w * 64) + b);
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  int n_ = 0;
  int size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace semival

template <>
struct std::hash<semival::Coalition> {
  std::size_t operator()(const semival::Coalition& c) const noexcept;
};

#endif  // SEMIVAL_COALITION_HPP_
