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

#include "semival/coalition.hpp"

#include <bit>
#include <stdexcept>

#include "semival/hash.hpp"

namespace semival {
namespace {

std::size_t word_count(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

std::uint64_t tail_mask(int n) {
  const int r = n & 63;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

}  // namespace

Coalition::Coalition(int n) : n_(n), words_(word_count(n), 0) {
  if (n < 0) throw std::invalid_argument("negative player count");
}

Coalition Coalition::full(int n) {
  Coalition c(n);
  for (auto& w : c.words_) w = ~std::uint64_t{0};
  if (!c.words_.empty()) c.words_.back() &= tail_mask(n);
  c.size_ = n;
  return c;
}

Coalition Coalition::from_mask(int n, std::uint64_t mask) {
  if (n > 64) throw std::invalid_argument("from_mask needs n <= 64");
  Coalition c(n);
  c.assign_mask(mask);
  return c;
}

void Coalition::assign_mask(std::uint64_t mask) {
  if (n_ == 0 || n_ > 64 || (mask & ~tail_mask(n_)) != 0) {
    throw std::out_of_range("mask has bits outside the player range");
  }
  words_[0] = mask;
  size_ = std::popcount(mask);
}

void Coalition::insert(int i) {
  auto& w = words_[static_cast<std::size_t>(i) >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (!(w & bit)) {
    w |= bit;
    ++size_;
  }
}

void Coalition::erase(int i) {
  auto& w = words_[static_cast<std::size_t>(i) >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (w & bit) {
    w &= ~bit;
    --size_;
  }
}

void Coalition::clear() {
  for (auto& w : words_) w = 0;
  size_ = 0;
}

Coalition Coalition::complement() const {
  Coalition c(n_);
  for (std::size_t k = 0; k < words_.size(); ++k) c.words_[k] = ~words_[k];
  if (!c.words_.empty()) c.words_.back() &= tail_mask(n_);
  c.size_ = n_ - size_;
  return c;
}

}  // namespace semival

std::size_t std::hash<semival::Coalition>::operator()(
    const semival::Coalition& c) const noexcept {
  return static_cast<std::size_t>(semival::hash_words(c.words(), 0));
}
