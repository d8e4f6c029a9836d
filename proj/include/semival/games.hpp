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

#ifndef SEMIVAL_GAMES_HPP_
#define SEMIVAL_GAMES_HPP_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semival/coalition.hpp"

namespace semival {

// A deterministic map from coalitions to reals. Implementations are
// immutable and safe to evaluate concurrently.
class UtilityFunction {
 public:
  virtual ~UtilityFunction() = default;
  virtual int players() const = 0;
  virtual double operator()(const Coalition& coalition) const = 0;
  // C with |U(S)| <= C for every S, when known.
  virtual std::optional<double> sup_bound() const { return std::nullopt; }
  virtual std::string id() const = 0;
};

// Counts every evaluation. The counter is the budget ledger for estimators.
class UtilityOracle {
 public:
  explicit UtilityOracle(std::shared_ptr<const UtilityFunction> fn);
  UtilityOracle(UtilityOracle&& other) noexcept;
  UtilityOracle& operator=(UtilityOracle&& other) noexcept;
  UtilityOracle(const UtilityOracle&) = delete;
  UtilityOracle& operator=(const UtilityOracle&) = delete;

  int players() const { return fn_->players(); }
  double evaluate(const Coalition& coalition) const {
    queries_.fetch_add(1, std::memory_order_relaxed);
    return (*fn_)(coalition);
  }
  double operator()(const Coalition& coalition) const { return evaluate(coalition); }
  std::optional<double> sup_bound() const { return fn_->sup_bound(); }
  std::string id() const { return fn_->id(); }

  std::uint64_t query_count() const {
    return queries_.load(std::memory_order_relaxed);
  }
  void reset_count() { queries_.store(0, std::memory_order_relaxed); }

  const std::shared_ptr<const UtilityFunction>& function() const { return fn_; }

 private:
  std::shared_ptr<const UtilityFunction> fn_;
  mutable std::atomic<std::uint64_t> queries_{0};
};

// U(S) = 1 if sum of member weights >= quota, else 0.
UtilityOracle weighted_voting_game(std::vector<double> weights, double quota);

struct UnanimityTerm {
  std::vector<int> members;  // 0-based player indices
  double coefficient = 0.0;
};
// U(S) = sum_k c_k [T_k subset of S].
UtilityOracle sum_of_unanimity_game(int n, std::vector<UnanimityTerm> terms);

// Full table of 2^n values indexed by mask; n <= 26.
UtilityOracle table_game(int n, std::vector<double> values,
                         std::string id = "table");
// Reads the tabular text format: `n=<int>` then `<mask> <value>` per line.
UtilityOracle tabular_utility(const std::string& path);

// U(S) in {-C, +C}: +C when the top bit of hash_words(mask words, seed) is 0.
UtilityOracle corner_case_utility(int n, double bound, std::uint64_t seed);

// U(S) = f(|S|).
UtilityOracle size_function_game(int n, std::function<double(int)> f,
                                 std::string id = "size-function");
UtilityOracle constant_game(int n, double value);

// U^c(S) = U([n] \ S).
UtilityOracle complement_transform(const UtilityOracle& oracle);
UtilityOracle shift_transform(const UtilityOracle& oracle, double c);
// a U + b V on the same players.
UtilityOracle linear_combination(double a, const UtilityOracle& u, double b,
                                 const UtilityOracle& v);
// Same function, fresh counter.
UtilityOracle counting_wrapper(const UtilityOracle& oracle);

// Game grammar: `wvg:@<path>`, `soug:@<path>`, `table:@<path>`,
// `corner:<n>,<C>,<seed>`, optionally followed by `+shift:<c>`.
UtilityOracle parse_game(std::string_view text);

}  // namespace semival

#endif  // SEMIVAL_GAMES_HPP_
