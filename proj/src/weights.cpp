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

#include "semival/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "semival/parse_util.hpp"

namespace semival {
namespace {

constexpr double kSumTolerance = 1e-10;
constexpr double kExplicitTolerance = 1e-8;
constexpr double kSymmetryTolerance = 1e-12;

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

bool nearly_equal(double x, double y, double rel) {
  return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y));
}

void check_players(int n) {
  if (n < 2) throw std::invalid_argument("semi-value needs n >= 2 players");
}

std::vector<double> m_from_p(int n, const std::vector<double>& p) {
  std::vector<double> m(p.size());
  for (int s = 1; s <= n; ++s) {
    const auto i = static_cast<std::size_t>(s - 1);
    m[i] = p[i] == 0.0 ? 0.0
                       : std::exp(log_binomial(n - 1, s - 1) + std::log(p[i]));
  }
  return m;
}

}  // namespace

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= 60) {
    // Exact in double for every n <= 60 after rounding the running product.
    double r = 1.0;
    k = std::min(k, n - k);
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
  }
  return std::exp(log_binomial(n, k));
}

double harmonic(int n) {
  double h = 0.0;
  for (int k = n; k >= 1; --k) h += 1.0 / k;
  return h;
}

SemiValueSpec::SemiValueSpec(int n, Family family, std::vector<double> p,
                             std::vector<double> m)
    : n_(n), family_(family), p_(std::move(p)), m_(std::move(m)) {
  symmetric_ = true;
  for (int s = 1; s <= n_; ++s) {
    if (!nearly_equal(this->p(s), this->p(n_ + 1 - s), kSymmetryTolerance)) {
      symmetric_ = false;
      break;
    }
  }
}

double SemiValueSpec::p(int s) const {
  if (s < 1 || s > n_) return 0.0;
  return p_[static_cast<std::size_t>(s - 1)];
}

double SemiValueSpec::m(int s) const {
  if (s < 1 || s > n_) return 0.0;
  return m_[static_cast<std::size_t>(s - 1)];
}

bool SemiValueSpec::is_shapley() const {
  if (family_ == Family::kBetaShapley) return alpha_ == 1.0 && beta_ == 1.0;
  for (int s = 1; s <= n_; ++s) {
    if (!nearly_equal(m(s), 1.0 / n_, 1e-12)) return false;
  }
  return true;
}

SemiValueSpec SemiValueSpec::shapley(int n) {
  check_players(n);
  std::vector<double> p(static_cast<std::size_t>(n));
  std::vector<double> m(static_cast<std::size_t>(n), 1.0 / n);
  for (int s = 1; s <= n; ++s) {
    p[static_cast<std::size_t>(s - 1)] =
        std::exp(-log_binomial(n - 1, s - 1)) / n;
  }
  SemiValueSpec spec(n, Family::kBetaShapley, std::move(p), std::move(m));
  spec.alpha_ = 1.0;
  spec.beta_ = 1.0;
  spec.id_ = "shapley";
  return spec;
}

SemiValueSpec SemiValueSpec::beta_shapley(int n, double alpha, double beta) {
  check_players(n);
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("Beta Shapley needs alpha > 0 and beta > 0");
  }
  if (alpha == 1.0 && beta == 1.0) {
    SemiValueSpec spec = shapley(n);
    spec.id_ = "beta:1,1";
    return spec;
  }
  // p_s = B(beta + s - 1, alpha + n - s) / B(alpha, beta).
  const double norm = log_beta(alpha, beta);
  std::vector<double> p(static_cast<std::size_t>(n));
  std::vector<double> m(static_cast<std::size_t>(n));
  for (int s = 1; s <= n; ++s) {
    const double log_p = log_beta(beta + s - 1, alpha + n - s) - norm;
    p[static_cast<std::size_t>(s - 1)] = std::exp(log_p);
    m[static_cast<std::size_t>(s - 1)] =
        std::exp(log_binomial(n - 1, s - 1) + log_p);
  }
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw std::logic_error("Beta Shapley weights do not sum to one");
  }
  SemiValueSpec spec(n, Family::kBetaShapley, std::move(p), std::move(m));
  spec.alpha_ = alpha;
  spec.beta_ = beta;
  spec.id_ = "beta:" + format_number(alpha) + "," + format_number(beta);
  return spec;
}

SemiValueSpec SemiValueSpec::weighted_banzhaf(int n, double w) {
  check_players(n);
  if (!(w > 0.0 && w < 1.0)) {
    throw std::invalid_argument("weighted Banzhaf needs 0 < w < 1");
  }
  const double lw = std::log(w);
  const double l1w = std::log1p(-w);
  std::vector<double> p(static_cast<std::size_t>(n));
  std::vector<double> m(static_cast<std::size_t>(n));
  for (int s = 1; s <= n; ++s) {
    const double log_p = (s - 1) * lw + (n - s) * l1w;
    p[static_cast<std::size_t>(s - 1)] = std::exp(log_p);
    m[static_cast<std::size_t>(s - 1)] =
        std::exp(log_binomial(n - 1, s - 1) + log_p);
  }
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw std::logic_error("weighted Banzhaf weights do not sum to one");
  }
  SemiValueSpec spec(n, Family::kWeightedBanzhaf, std::move(p), std::move(m));
  spec.w_ = w;
  spec.id_ = "banzhaf:" + format_number(w);
  return spec;
}

SemiValueSpec SemiValueSpec::explicit_p(std::vector<double> p) {
  const int n = static_cast<int>(p.size());
  check_players(n);
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("explicit p entries must be finite and >= 0");
    }
  }
  std::vector<double> m = m_from_p(n, p);
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  if (std::abs(total - 1.0) > kExplicitTolerance) {
    throw std::invalid_argument(
        "explicit p does not define a probability measure: sum(m) = " +
        format_number(total));
  }
  for (double& v : p) v /= total;
  for (double& v : m) v /= total;
  SemiValueSpec spec(n, Family::kExplicit, std::move(p), std::move(m));
  spec.id_ = "explicit";
  return spec;
}

SemiValueSpec parse_semivalue(std::string_view text, int n) {
  const auto [head, args] = split_head(text);
  if (head == "shapley" && args.empty()) return SemiValueSpec::shapley(n);
  if (head == "beta") {
    const auto v = parse_numbers(args, ',');
    if (v.size() != 2) throw std::invalid_argument("expected beta:<alpha>,<beta>");
    return SemiValueSpec::beta_shapley(n, v[0], v[1]);
  }
  if (head == "banzhaf") {
    if (args.empty()) return SemiValueSpec::banzhaf(n);
    const auto v = parse_numbers(args, ',');
    if (v.size() != 1) throw std::invalid_argument("expected banzhaf:<w>");
    return SemiValueSpec::weighted_banzhaf(n, v[0]);
  }
  if (head == "explicit") {
    if (args.size() < 2 || args.front() != '@') {
      throw std::invalid_argument("expected explicit:@<path>");
    }
    const std::string path(args.substr(1));
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto p = parse_numbers(buf.str(), ' ');
    if (n > 0 && static_cast<int>(p.size()) != n) {
      throw std::invalid_argument("explicit weights have " +
                                  std::to_string(p.size()) +
                                  " entries, expected " + std::to_string(n));
    }
    auto spec = SemiValueSpec::explicit_p(std::move(p));
    return spec;
  }
  throw std::invalid_argument("unknown semi-value '" + std::string(text) + "'");
}

SizeDistribution::SizeDistribution(int n, int lo, int hi,
                                   std::vector<double> weights, std::string id)
    : n_(n), lo_(lo), hi_(hi), probs_(std::move(weights)), id_(std::move(id)) {
  if (lo_ < 0 || hi_ > n_ || lo_ > hi_ ||
      probs_.size() != static_cast<std::size_t>(hi_ - lo_ + 1)) {
    throw std::invalid_argument("size distribution support mismatch");
  }
  double total = 0.0;
  for (double v : probs_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("size distribution entries must be >= 0");
    }
    total += v;
  }
  if (!(total > 0.0)) throw std::invalid_argument("size distribution is zero");
  for (double& v : probs_) v /= total;
}

double SizeDistribution::prob(int s) const {
  if (s < lo_ || s > hi_) return 0.0;
  return probs_[static_cast<std::size_t>(s - lo_)];
}

bool SizeDistribution::symmetric() const {
  if (lo_ + hi_ != n_) return false;
  for (int s = lo_; s <= hi_; ++s) {
    if (!nearly_equal(prob(s), prob(n_ - s), kSymmetryTolerance)) return false;
  }
  return true;
}

double size_weight_root(const SemiValueSpec& spec, int s) {
  const int n = spec.n();
  const double in = s > 0 ? spec.m(s) / std::sqrt(static_cast<double>(s)) : 0.0;
  const double out =
      s < n ? spec.m(s + 1) / std::sqrt(static_cast<double>(n - s)) : 0.0;
  return std::hypot(in, out);
}

SizeDistribution q_star(const SemiValueSpec& spec) {
  const int n = spec.n();
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n - 1));
  for (int s = 1; s <= n - 1; ++s) w.push_back(size_weight_root(spec, s));
  return SizeDistribution(n, 1, n - 1, std::move(w), "qstar");
}

SizeDistribution q_msr(const SemiValueSpec& spec) {
  const int n = spec.n();
  // Sizes 0 and n keep only their defined term: m_1 / sqrt(n), m_n / sqrt(n).
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(n + 1));
  for (int s = 0; s <= n; ++s) w.push_back(size_weight_root(spec, s));
  return SizeDistribution(n, 0, n, std::move(w), "qmsr");
}

SizeDistribution uniform_sizes(int n) {
  return SizeDistribution(n, 1, n - 1,
                          std::vector<double>(static_cast<std::size_t>(n - 1), 1.0),
                          "uniform");
}

SizeDistribution q_shapiq(int n) {
  const double h = harmonic(n - 1);
  std::vector<double> w;
  for (int s = 1; s <= n - 1; ++s) {
    w.push_back(n / (2.0 * h * s * (n - s)));
  }
  return SizeDistribution(n, 1, n - 1, std::move(w), "shapiq");
}

double dispersion(const SizeDistribution& q, const SemiValueSpec& spec) {
  if (q.n() != spec.n()) throw std::invalid_argument("player count mismatch");
  const int n = spec.n();
  double d = 0.0;
  for (int s = q.lo(); s <= q.hi(); ++s) {
    const double r = size_weight_root(spec, s);
    if (r == 0.0) continue;
    const double qs = q.prob(s);
    if (qs == 0.0) {
      throw std::domain_error("size " + std::to_string(s) +
                              " has zero probability but positive weight");
    }
    d += n * r * (r / qs);
  }
  return d;
}

double optimal_dispersion(const SemiValueSpec& spec) {
  const int n = spec.n();
  double total = 0.0;
  for (int s = 1; s <= n - 1; ++s) total += size_weight_root(spec, s);
  return n * total * total;
}

double msr_dispersion(const SemiValueSpec& spec) {
  const int n = spec.n();
  double total = 0.0;
  for (int s = 0; s <= n; ++s) total += size_weight_root(spec, s);
  return n * total * total;
}

SizeDistribution tilde_q(const SizeDistribution& q, const SemiValueSpec& spec) {
  const int n = spec.n();
  std::vector<double> w;
  w.reserve(q.probs().size());
  for (int s = q.lo(); s <= q.hi(); ++s) {
    const double r = size_weight_root(spec, s);
    if (r == 0.0) {
      w.push_back(0.0);
      continue;
    }
    const double qs = q.prob(s);
    if (qs == 0.0) {
      throw std::domain_error("size " + std::to_string(s) +
                              " has zero probability but positive weight");
    }
    w.push_back(n * r * (r / qs));
  }
  return SizeDistribution(n, q.lo(), q.hi(), std::move(w), q.id() + "~");
}

double ZCoefficients::norm_squared(int s) const {
  const double in = member(s);
  const double out = nonmember(s);
  return s * in * in + (n - s) * out * out;
}

ZCoefficients z_coefficients(const SizeDistribution& q,
                             const SemiValueSpec& spec) {
  if (q.n() != spec.n()) throw std::invalid_argument("player count mismatch");
  const int n = spec.n();
  ZCoefficients z;
  z.n = n;
  z.lo = q.lo();
  z.hi = q.hi();
  for (int s = q.lo(); s <= q.hi(); ++s) {
    const double qs = q.prob(s);
    const double mi = s > 0 ? spec.m(s) : 0.0;
    const double mo = s < n ? spec.m(s + 1) : 0.0;
    if (qs == 0.0) {
      if (mi != 0.0 || mo != 0.0) {
        throw std::domain_error("size " + std::to_string(s) +
                                " has zero probability but positive weight");
      }
      z.a.push_back(0.0);
      z.b.push_back(0.0);
      continue;
    }
    z.a.push_back(s > 0 ? n * mi / (qs * s) : 0.0);
    z.b.push_back(s < n ? n * mo / (qs * (n - s)) : 0.0);
  }
  return z;
}

}  // namespace semival
