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

#ifndef SEMIVAL_SAMPLING_HPP_
#define SEMIVAL_SAMPLING_HPP_

#include <cstdint>
#include <limits>
#include <vector>

#include "semival/coalition.hpp"
#include "semival/hash.hpp"
#include "semival/weights.hpp"

namespace semival {

// Counter-based generator: the k-th output is splitmix64(seed + k * phi),
// phi = 0x9E3779B97F4A7C15, which is the SplitMix64 stream for `seed`.
// Satisfies UniformRandomBitGenerator.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed) : seed_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() {
    return splitmix64(seed_ + (counter_++) * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  // Uniform on {0, ..., bound - 1}; bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Independent stream keyed by `key`.
  RandomSource child(std::uint64_t key) const {
    return RandomSource(derive_seed(seed_, key));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return counter_; }

  // seed XOR splitmix64(key); the per-trial seed derivation.
  static constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
    return seed ^ splitmix64(key);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Draws sizes from a SizeDistribution by binary search over the cumulative
// table.
class SizeSampler {
 public:
  explicit SizeSampler(const SizeDistribution& q);
  int operator()(RandomSource& rng) const;

 private:
  int lo_;
  std::vector<double> cumulative_;
};

// Uniform fixed-size subsets by partial Fisher-Yates over a reusable index
// array (O(n) workspace).
class SubsetSampler {
 public:
  explicit SubsetSampler(int n);
  // Overwrites `out` (which must have n players) with a uniform size-s subset.
  void operator()(int s, RandomSource& rng, Coalition& out);

 private:
  int n_;
  std::vector<int> index_;
};

int sample_size(const SizeDistribution& q, RandomSource& rng);
Coalition sample_subset(int n, int s, RandomSource& rng);
Coalition bernoulli_subset(int n, double w, RandomSource& rng);

// Source of coalitions fed to an estimator.
class CoalitionSource {
 public:
  virtual ~CoalitionSource() = default;
  virtual void next(Coalition& out) = 0;
  Coalition next() {
    Coalition c(players());
    next(c);
    return c;
  }
  virtual int players() const = 0;
  virtual bool paired() const { return false; }
};

// Size from q, then a uniform subset of that size. In paired mode every
// draw is followed by its complement.
class CoalitionStream final : public CoalitionSource {
 public:
  CoalitionStream(SizeDistribution q, RandomSource rng, bool paired = false);
  void next(Coalition& out) override;
  using CoalitionSource::next;
  int players() const override { return n_; }
  bool paired() const override { return paired_; }

 private:
  int n_;
  SizeSampler sizes_;
  SubsetSampler subsets_;
  RandomSource rng_;
  bool paired_;
  bool pending_ = false;
  Coalition last_;
};

// Each player joins independently with probability w. Paired mode is only
// admissible at w = 1/2, where the complement has the same law.
class BernoulliStream final : public CoalitionSource {
 public:
  BernoulliStream(int n, double w, RandomSource rng, bool paired = false);
  void next(Coalition& out) override;
  using CoalitionSource::next;
  int players() const override { return n_; }
  bool paired() const override { return paired_; }

 private:
  int n_;
  double w_;
  RandomSource rng_;
  bool paired_;
  bool pending_ = false;
  Coalition last_;
};

}  // namespace semival

#endif  // SEMIVAL_SAMPLING_HPP_
