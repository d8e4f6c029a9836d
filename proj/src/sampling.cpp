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

#include "semival/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace semival {

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

SizeSampler::SizeSampler(const SizeDistribution& q) : lo_(q.lo()) {
  cumulative_.resize(q.probs().size());
  std::partial_sum(q.probs().begin(), q.probs().end(), cumulative_.begin());
  // Pin everything from the last positive entry onward to exactly 1 so
  // rounding can never land a draw on a zero-probability size.
  std::size_t last = q.probs().size();
  while (last > 0 && q.probs()[last - 1] == 0.0) --last;
  for (std::size_t k = last == 0 ? 0 : last - 1; k < cumulative_.size(); ++k) {
    cumulative_[k] = 1.0;
  }
}

int SizeSampler::operator()(RandomSource& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return lo_ + static_cast<int>(it - cumulative_.begin());
}

SubsetSampler::SubsetSampler(int n) : n_(n), index_(static_cast<std::size_t>(n)) {
  std::iota(index_.begin(), index_.end(), 0);
}

void SubsetSampler::operator()(int s, RandomSource& rng, Coalition& out) {
  if (s < 0 || s > n_) throw std::out_of_range("subset size out of range");
  // The index array is left permuted between calls; Fisher-Yates from any
  // starting permutation is still uniform.
  const bool fill_members = s <= n_ - s;
  const int k = fill_members ? s : n_ - s;
  for (int j = 0; j < k; ++j) {
    const auto r = j + static_cast<int>(rng.uniform_below(
                           static_cast<std::uint64_t>(n_ - j)));
    std::swap(index_[static_cast<std::size_t>(j)], index_[static_cast<std::size_t>(r)]);
  }
  if (fill_members) {
    out.clear();
    for (int j = 0; j < k; ++j) out.insert(index_[static_cast<std::size_t>(j)]);
  } else {
    out = Coalition::full(n_);
    for (int j = 0; j < k; ++j) out.erase(index_[static_cast<std::size_t>(j)]);
  }
}

int sample_size(const SizeDistribution& q, RandomSource& rng) {
  return SizeSampler(q)(rng);
}

Coalition sample_subset(int n, int s, RandomSource& rng) {
  Coalition out(n);
  SubsetSampler sampler(n);
  sampler(s, rng, out);
  return out;
}

Coalition bernoulli_subset(int n, double w, RandomSource& rng) {
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("need 0 < w < 1");
  Coalition out(n);
  for (int i = 0; i < n; ++i) {
    if (rng.uniform01() < w) out.insert(i);
  }
  return out;
}

CoalitionStream::CoalitionStream(SizeDistribution q, RandomSource rng, bool paired)
    : n_(q.n()), sizes_(q), subsets_(q.n()), rng_(rng), paired_(paired), last_(q.n()) {
  if (paired && !q.symmetric()) {
    throw std::invalid_argument("paired sampling needs q_s = q_{n-s}");
  }
}

void CoalitionStream::next(Coalition& out) {
  if (pending_) {
    out = last_.complement();
    pending_ = false;
    return;
  }
  subsets_(sizes_(rng_), rng_, out);
  if (paired_) {
    last_ = out;
    pending_ = true;
  }
}

BernoulliStream::BernoulliStream(int n, double w, RandomSource rng, bool paired)
    : n_(n), w_(w), rng_(rng), paired_(paired), last_(n) {
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("need 0 < w < 1");
  if (paired && w != 0.5) {
    throw std::invalid_argument("paired Bernoulli sampling needs w = 1/2");
  }
}

void BernoulliStream::next(Coalition& out) {
  if (pending_) {
    out = last_.complement();
    pending_ = false;
    return;
  }
  out.clear();
  for (int i = 0; i < n_; ++i) {
    if (rng_.uniform01() < w_) out.insert(i);
  }
  if (paired_) {
    last_ = out;
    pending_ = true;
  }
}

}  // namespace semival
