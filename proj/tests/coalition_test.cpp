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

#include <stdexcept>
#include <unordered_set>
#include <vector>

#include <gtest/gtest.h>

#include "semival/hash.hpp"

namespace semival {
namespace {

TEST(Coalition, InsertEraseTracksSize) {
  Coalition c(130);
  c.insert(0);
  c.insert(64);
  c.insert(129);
  c.insert(64);
  EXPECT_EQ(c.size(), 3);
  EXPECT_TRUE(c.contains(129));
  EXPECT_FALSE(c.contains(128));
  c.erase(64);
  c.erase(64);
  EXPECT_EQ(c.size(), 2);
  std::vector<int> members;
  c.for_each_member([&](int i) { members.push_back(i); });
  EXPECT_EQ(members, (std::vector<int>{0, 129}));
}

TEST(Coalition, ComplementKeepsHighBitsClear) {
  for (int n : {1, 5, 63, 64, 65, 200}) {
    Coalition c(n);
    c.insert(0);
    const Coalition comp = c.complement();
    EXPECT_EQ(comp.size(), n - 1);
    EXPECT_EQ(comp.complement(), c);
    EXPECT_EQ(Coalition::full(n).size(), n);
    EXPECT_TRUE(Coalition::full(n).complement().empty());
    int seen = 0;
    comp.for_each_member([&](int i) {
      EXPECT_LT(i, n);
      ++seen;
    });
    EXPECT_EQ(seen, n - 1);
  }
}

TEST(Coalition, MaskRoundTrip) {
  const auto c = Coalition::from_mask(10, 0b1011001101);
  EXPECT_EQ(c.size(), 6);
  EXPECT_EQ(c.mask(), 0b1011001101U);
  EXPECT_THROW(Coalition::from_mask(4, 0b10000), std::out_of_range);
  Coalition d(3);
  d.assign_mask(0b101);
  EXPECT_EQ(d.size(), 2);
  EXPECT_TRUE(d.contains(2));
}

TEST(Coalition, HashUsesDocumentedMix) {
  const auto c = Coalition::from_mask(20, 12345);
  const std::uint64_t words[] = {12345};
  EXPECT_EQ(std::hash<Coalition>{}(c), hash_words(words, 0));
  // splitmix64 reference outputs for seed 0: the first two stream values.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
  std::unordered_set<Coalition> set;
  for (std::uint64_t m = 0; m < 256; ++m) set.insert(Coalition::from_mask(8, m));
  EXPECT_EQ(set.size(), 256U);
}

}  // namespace
}  // namespace semival
