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

#include "semival/games.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "semival/hash.hpp"
#include "semival/parse_util.hpp"

namespace semival {
namespace {

constexpr int kMaxTablePlayers = 26;

std::string read_stripped(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out += line;
    out += '\n';
  }
  return out;
}

int parse_header(std::string_view line) {
  line = trim(line);
  if (line.substr(0, 2) != "n=") {
    throw std::invalid_argument("expected header line n=<int>");
  }
  return static_cast<int>(parse_integer(line.substr(2)));
}

class VotingGame final : public UtilityFunction {
 public:
  VotingGame(std::vector<double> weights, double quota)
      : weights_(std::move(weights)), quota_(quota) {}
  int players() const override { return static_cast<int>(weights_.size()); }
  double operator()(const Coalition& s) const override {
    double total = 0.0;
    s.for_each_member([&](int i) { total += weights_[static_cast<std::size_t>(i)]; });
    return total >= quota_ ? 1.0 : 0.0;
  }
  std::optional<double> sup_bound() const override { return 1.0; }
  std::string id() const override { return "wvg"; }

 private:
  std::vector<double> weights_;
  double quota_;
};

class UnanimityGame final : public UtilityFunction {
 public:
  UnanimityGame(int n, std::vector<UnanimityTerm> terms) : n_(n) {
    for (auto& t : terms) {
      Coalition c(n);
      for (int i : t.members) c.insert(i);
      carriers_.push_back(std::move(c));
      coefficients_.push_back(t.coefficient);
      bound_ += std::abs(t.coefficient);
    }
  }
  int players() const override { return n_; }
  double operator()(const Coalition& s) const override {
    double total = 0.0;
    const auto sw = s.words();
    for (std::size_t k = 0; k < carriers_.size(); ++k) {
      const auto tw = carriers_[k].words();
      bool subset = true;
      for (std::size_t w = 0; w < tw.size() && subset; ++w) {
        subset = (tw[w] & ~sw[w]) == 0;
      }
      if (subset) total += coefficients_[k];
    }
    return total;
  }
  std::optional<double> sup_bound() const override { return bound_; }
  std::string id() const override { return "soug"; }

 private:
  int n_;
  std::vector<Coalition> carriers_;
  std::vector<double> coefficients_;
  double bound_ = 0.0;
};

class TableGame final : public UtilityFunction {
 public:
  TableGame(int n, std::vector<double> values, std::string id)
      : n_(n), values_(std::move(values)), id_(std::move(id)) {
    for (double v : values_) bound_ = std::max(bound_, std::abs(v));
  }
  int players() const override { return n_; }
  double operator()(const Coalition& s) const override {
    return values_[static_cast<std::size_t>(s.mask())];
  }
  std::optional<double> sup_bound() const override { return bound_; }
  std::string id() const override { return id_; }

 private:
  int n_;
  std::vector<double> values_;
  std::string id_;
  double bound_ = 0.0;
};

class CornerCaseGame final : public UtilityFunction {
 public:
  CornerCaseGame(int n, double bound, std::uint64_t seed)
      : n_(n), bound_(bound), seed_(seed) {}
  int players() const override { return n_; }
  double operator()(const Coalition& s) const override {
    return (hash_words(s.words(), seed_) >> 63) ? -bound_ : bound_;
  }
  std::optional<double> sup_bound() const override { return bound_; }
  std::string id() const override {
    return "corner:" + std::to_string(n_) + "," + format_number(bound_) + "," +
           std::to_string(seed_);
  }

 private:
  int n_;
  double bound_;
  std::uint64_t seed_;
};

class SizeFunctionGame final : public UtilityFunction {
 public:
  SizeFunctionGame(int n, std::function<double(int)> f, std::string id)
      : n_(n), f_(std::move(f)), id_(std::move(id)) {
    for (int s = 0; s <= n; ++s) bound_ = std::max(bound_, std::abs(f_(s)));
  }
  int players() const override { return n_; }
  double operator()(const Coalition& s) const override { return f_(s.size()); }
  std::optional<double> sup_bound() const override { return bound_; }
  std::string id() const override { return id_; }

 private:
  int n_;
  std::function<double(int)> f_;
  std::string id_;
  double bound_ = 0.0;
};

class ComplementGame final : public UtilityFunction {
 public:
  explicit ComplementGame(std::shared_ptr<const UtilityFunction> inner)
      : inner_(std::move(inner)) {}
  int players() const override { return inner_->players(); }
  double operator()(const Coalition& s) const override {
    return (*inner_)(s.complement());
  }
  std::optional<double> sup_bound() const override { return inner_->sup_bound(); }
  std::string id() const override { return inner_->id() + "+complement"; }

 private:
  std::shared_ptr<const UtilityFunction> inner_;
};

class LinearGame final : public UtilityFunction {
 public:
  LinearGame(double a, std::shared_ptr<const UtilityFunction> u, double b,
             std::shared_ptr<const UtilityFunction> v, double c, std::string id)
      : a_(a), b_(b), c_(c), u_(std::move(u)), v_(std::move(v)), id_(std::move(id)) {}
  int players() const override { return u_->players(); }
  double operator()(const Coalition& s) const override {
    double out = a_ * (*u_)(s) + c_;
    if (v_) out += b_ * (*v_)(s);
    return out;
  }
  std::optional<double> sup_bound() const override {
    const auto bu = u_->sup_bound();
    if (!bu) return std::nullopt;
    double bound = std::abs(a_) * *bu + std::abs(c_);
    if (v_) {
      const auto bv = v_->sup_bound();
      if (!bv) return std::nullopt;
      bound += std::abs(b_) * *bv;
    }
    return bound;
  }
  std::string id() const override { return id_; }

 private:
  double a_, b_, c_;
  std::shared_ptr<const UtilityFunction> u_, v_;
  std::string id_;
};

UtilityOracle make(std::shared_ptr<const UtilityFunction> fn) {
  return UtilityOracle(std::move(fn));
}

}  // namespace

UtilityOracle::UtilityOracle(std::shared_ptr<const UtilityFunction> fn)
    : fn_(std::move(fn)) {
  if (!fn_) throw std::invalid_argument("null utility function");
}

UtilityOracle::UtilityOracle(UtilityOracle&& other) noexcept
    : fn_(std::move(other.fn_)), queries_(other.query_count()) {}

UtilityOracle& UtilityOracle::operator=(UtilityOracle&& other) noexcept {
  fn_ = std::move(other.fn_);
  queries_.store(other.query_count());
  return *this;
}

UtilityOracle weighted_voting_game(std::vector<double> weights, double quota) {
  if (weights.empty()) throw std::invalid_argument("voting game needs weights");
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("voting weights must be >= 0");
  }
  if (!(quota > 0.0)) throw std::invalid_argument("quota must be positive");
  return make(std::make_shared<VotingGame>(std::move(weights), quota));
}

UtilityOracle sum_of_unanimity_game(int n, std::vector<UnanimityTerm> terms) {
  if (n < 1) throw std::invalid_argument("game needs at least one player");
  for (const auto& t : terms) {
    if (t.members.empty()) throw std::invalid_argument("empty unanimity carrier");
    for (int i : t.members) {
      if (i < 0 || i >= n) throw std::out_of_range("carrier member out of range");
    }
  }
  return make(std::make_shared<UnanimityGame>(n, std::move(terms)));
}

UtilityOracle table_game(int n, std::vector<double> values, std::string id) {
  if (n < 1 || n > kMaxTablePlayers) {
    throw std::invalid_argument("table games support 1 <= n <= 26");
  }
  if (values.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("table needs 2^n values");
  }
  return make(std::make_shared<TableGame>(n, std::move(values), std::move(id)));
}

UtilityOracle tabular_utility(const std::string& path) {
  std::istringstream in(read_stripped(path));
  std::string line;
  int n = -1;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    n = parse_header(line);
    break;
  }
  if (n < 1 || n > kMaxTablePlayers) {
    throw std::invalid_argument(path + ": n out of range [1, 26]");
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> values(count, 0.0);
  std::vector<bool> seen(count, false);
  std::size_t filled = 0;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty()) continue;
    const auto space = t.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw std::invalid_argument(path + ": expected '<mask> <value>'");
    }
    const long long mask = parse_integer(t.substr(0, space));
    if (mask < 0 || static_cast<std::size_t>(mask) >= count) {
      throw std::out_of_range(path + ": mask " + std::to_string(mask) +
                              " out of range");
    }
    const auto idx = static_cast<std::size_t>(mask);
    if (seen[idx]) {
      throw std::invalid_argument(path + ": duplicate mask " + std::to_string(mask));
    }
    seen[idx] = true;
    values[idx] = parse_number(t.substr(space + 1));
    ++filled;
  }
  if (filled != count) {
    throw std::invalid_argument(path + ": " + std::to_string(count - filled) +
                                " masks missing");
  }
  return table_game(n, std::move(values), "table");
}

UtilityOracle corner_case_utility(int n, double bound, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("game needs at least one player");
  if (!(bound > 0.0)) throw std::invalid_argument("corner case needs C > 0");
  return make(std::make_shared<CornerCaseGame>(n, bound, seed));
}

UtilityOracle size_function_game(int n, std::function<double(int)> f,
                                 std::string id) {
  if (n < 1) throw std::invalid_argument("game needs at least one player");
  return make(std::make_shared<SizeFunctionGame>(n, std::move(f), std::move(id)));
}

UtilityOracle constant_game(int n, double value) {
  return size_function_game(n, [value](int) { return value; },
                            "constant:" + format_number(value));
}

UtilityOracle complement_transform(const UtilityOracle& oracle) {
  return make(std::make_shared<ComplementGame>(oracle.function()));
}

UtilityOracle shift_transform(const UtilityOracle& oracle, double c) {
  return make(std::make_shared<LinearGame>(1.0, oracle.function(), 0.0, nullptr,
                                           c, oracle.id() + "+shift:" +
                                                  format_number(c)));
}

UtilityOracle linear_combination(double a, const UtilityOracle& u, double b,
                                 const UtilityOracle& v) {
  if (u.players() != v.players()) {
    throw std::invalid_argument("player count mismatch");
  }
  return make(std::make_shared<LinearGame>(a, u.function(), b, v.function(), 0.0,
                                           "linear"));
}

UtilityOracle counting_wrapper(const UtilityOracle& oracle) {
  return UtilityOracle(oracle.function());
}

UtilityOracle parse_game(std::string_view text) {
  text = trim(text);
  const auto plus = text.find("+shift:");
  if (plus != std::string_view::npos) {
    const double c = parse_number(text.substr(plus + 7));
    return shift_transform(parse_game(text.substr(0, plus)), c);
  }
  const auto [head, args] = split_head(text);
  if (head == "corner") {
    const auto v = parse_numbers(args, ',');
    if (v.size() != 3 || v[0] != std::floor(v[0]) || v[2] < 0 ||
        v[2] != std::floor(v[2])) {
      throw std::invalid_argument("expected corner:<n>,<C>,<seed>");
    }
    return corner_case_utility(static_cast<int>(v[0]), v[1],
                               static_cast<std::uint64_t>(v[2]));
  }
  if (args.size() < 2 || args.front() != '@') {
    throw std::invalid_argument("unknown game '" + std::string(text) + "'");
  }
  const std::string path(args.substr(1));
  if (head == "table") return tabular_utility(path);
  if (head == "wvg") {
    // First number is the quota, the rest are player weights.
    const auto v = parse_numbers(read_stripped(path), ',');
    if (v.size() < 2) throw std::invalid_argument(path + ": expected quota and weights");
    return weighted_voting_game(std::vector<double>(v.begin() + 1, v.end()), v[0]);
  }
  if (head == "soug") {
    // `n=<int>` then one `<coefficient> <player> ...` line per term.
    std::istringstream in(read_stripped(path));
    std::string line;
    int n = -1;
    std::vector<UnanimityTerm> terms;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      if (n < 0) {
        n = parse_header(line);
        continue;
      }
      const auto v = parse_numbers(line, ' ');
      UnanimityTerm term;
      term.coefficient = v.at(0);
      for (std::size_t k = 1; k < v.size(); ++k) {
        term.members.push_back(static_cast<int>(v[k]));
      }
      terms.push_back(std::move(term));
    }
    return sum_of_unanimity_game(n, std::move(terms));
  }
  throw std::invalid_argument("unknown game '" + std::string(text) + "'");
}

}  // namespace semival
