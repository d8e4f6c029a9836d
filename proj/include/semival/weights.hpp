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

#ifndef SEMIVAL_WEIGHTS_HPP_
#define SEMIVAL_WEIGHTS_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace semival {

enum class Family { kBetaShapley, kWeightedBanzhaf, kExplicit };

// A semi-value family instance over n players.
//
// Weights are stored 1-indexed by coalition size: p(s) and m(s) for
// s = 1..n, with m(s) = C(n-1, s-1) * p(s). Out-of-range sizes (0 and n+1)
// read as zero, which is the convention every size-indexed formula in this
// library relies on.
class SemiValueSpec {
 public:
  static SemiValueSpec shapley(int n);
  static SemiValueSpec beta_shapley(int n, double alpha, double beta);
  static SemiValueSpec weighted_banzhaf(int n, double w);
  static SemiValueSpec banzhaf(int n) { return weighted_banzhaf(n, 0.5); }
  // Explicit p vector (p[0] is p_1). Renormalized when sum(m) is within
  // 1e-8 of one, rejected otherwise.
  static SemiValueSpec explicit_p(std::vector<double> p);

  int n() const { return n_; }
  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double w() const { return w_; }

  double p(int s) const;
  double m(int s) const;
  const std::vector<double>& p_vector() const { return p_; }
  const std::vector<double>& m_vector() const { return m_; }

  // p_s == p_{n+1-s} for every s, relative tolerance 1e-12.
  bool symmetric() const { return symmetric_; }
  bool is_shapley() const;

  // Stable identifier, e.g. "shapley", "beta:2,2", "banzhaf:0.5".
  const std::string& id() const { return id_; }

 private:
  SemiValueSpec(int n, Family family, std::vector<double> p,
                std::vector<double> m);

  int n_ = 0;
  Family family_ = Family::kExplicit;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double w_ = 0.0;
  std::vector<double> p_;
  std::vector<double> m_;
  bool symmetric_ = false;
  std::string id_;
};

// Parses `shapley`, `beta:<alpha>,<beta>`, `banzhaf:<w>` or
// `explicit:@<path>`. All but the explicit form need the player count.
SemiValueSpec parse_semivalue(std::string_view text, int n);

// Probability vector over coalition sizes lo..hi inclusive.
class SizeDistribution {
 public:
  SizeDistribution() = default;
  // Normalizes `weights`; throws if any entry is negative or all are zero.
  SizeDistribution(int n, int lo, int hi, std::vector<double> weights,
                   std::string id = {});

  int n() const { return n_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  // Zero outside [lo, hi].
  double prob(int s) const;
  const std::vector<double>& probs() const { return probs_; }
  const std::string& id() const { return id_; }
  // q_s == q_{n-s} on the whole support (relative tolerance 1e-12).
  bool symmetric() const;
  bool includes_endpoints() const { return lo_ == 0 && hi_ == n_; }

 private:
  int n_ = 0;
  int lo_ = 1;
  int hi_ = 0;
  std::vector<double> probs_;
  std::string id_;
};

// sqrt(m_s^2/s + m_{s+1}^2/(n-s)) with x/0 := 0, evaluated without forming
// squares so weights near 1e-154 do not underflow.
double size_weight_root(const SemiValueSpec& spec, int s);

SizeDistribution q_star(const SemiValueSpec& spec);
SizeDistribution q_msr(const SemiValueSpec& spec);
SizeDistribution uniform_sizes(int n);
// q_s = n / (2 H_{n-1} s (n-s)); shared by SHAP-IQ and vanilla kernelSHAP.
SizeDistribution q_shapiq(int n);

// D(q) = sum_s (n/q_s)(m_s^2/s + m_{s+1}^2/(n-s)) over q's support.
// Throws std::domain_error if q_s = 0 where the bracket is positive.
double dispersion(const SizeDistribution& q, const SemiValueSpec& spec);
// D* = (sum_{s=1}^{n-1} sqrt(n (m_s^2/s + m_{s+1}^2/(n-s))))^2.
double optimal_dispersion(const SemiValueSpec& spec);
// D^MSR, the same sum taken over 0..n.
double msr_dispersion(const SemiValueSpec& spec);

SizeDistribution tilde_q(const SizeDistribution& q, const SemiValueSpec& spec);

// Per-size coefficients of the sample direction z_S:
// (z_S)_i = member(s) if i in S, else -nonmember(s).
struct ZCoefficients {
  int n = 0;
  int lo = 1;
  int hi = 0;
  std::vector<double> a;  // indexed s - lo
  std::vector<double> b;

  double member(int s) const { return a[static_cast<std::size_t>(s - lo)]; }
  double nonmember(int s) const { return b[static_cast<std::size_t>(s - lo)]; }
  // ||z_S||^2 for any coalition of size s.
  double norm_squared(int s) const;
};

ZCoefficients z_coefficients(const SizeDistribution& q,
                             const SemiValueSpec& spec);

// Numerically careful helpers shared with the exact module.
double log_binomial(int n, int k);
double binomial(int n, int k);
double harmonic(int n);

}  // namespace semival

#endif  // SEMIVAL_WEIGHTS_HPP_
