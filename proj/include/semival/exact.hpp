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

#ifndef SEMIVAL_EXACT_HPP_
#define SEMIVAL_EXACT_HPP_

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "semival/games.hpp"
#include "semival/weights.hpp"

namespace semival {

inline constexpr int kMaxExactPlayers = 22;
inline constexpr int kMaxExpectationPlayers = 18;

// Means of u_S, u_S^2 and u_S * u_{[n]\S} over the C(n, s) coalitions of
// each size s = 0..n, plus per-player membership sums. Every moment the
// library predicts is a weighted combination of these.
struct SizeMoments {
  std::vector<double> mean_u;
  std::vector<double> mean_u2;
  std::vector<double> mean_cross;
  // member_sum[s][i] = sum of u_S over |S| = s with i in S.
  std::vector<std::vector<double>> member_sum;
  // total_sum[s] = sum of u_S over |S| = s.
  std::vector<double> total_sum;
};

struct ExactReport {
  int n = 0;
  std::vector<double> phi;
  // phi minus (p_n u_[n] - p_1 u_empty) on every coordinate.
  std::vector<double> varphi;
  double u_full = 0.0;
  double u_empty = 0.0;
  // Moments under `q` (gamma_star, second_moment) and under tilde_q(q)
  // (tilde_second_moment, cross_moment).
  SizeDistribution q;
  double gamma_star = 0.0;
  double second_moment = 0.0;
  double tilde_second_moment = 0.0;
  double cross_moment = 0.0;
  double varphi_norm2 = 0.0;
  double phi_norm2 = 0.0;
  // max |U(S)| over every coalition.
  double sup_norm = 0.0;
  SizeMoments by_size;
};

// Enumerates all 2^n coalitions once (n <= 22). Moments are taken under q,
// defaulting to q_star(spec).
ExactReport exact_semivalue(const UtilityOracle& oracle, const SemiValueSpec& spec,
                            std::optional<SizeDistribution> q = std::nullopt);

// E_q[u_S] and E_q[(u_S - shift(s))^2] recomputed for an arbitrary q.
double expected_utility(const ExactReport& report, const SizeDistribution& q);
double expected_square(const ExactReport& report, const SizeDistribution& q,
                       const std::function<double(int)>& shift = {});
// E_q[u_S u_{[n]\S}].
double expected_cross(const ExactReport& report, const SizeDistribution& q);

// Closed-form MSE of the framework estimator with constant control variate
// gamma after T ingested samples:
//   unpaired: (n D(q) E_qt[(u - gamma)^2] - ||E[(u - gamma) z]||^2) / T
//   paired:   (n D(q) sigma^2 - 2 ||varphi||^2) / T, sigma^2 from tilde_q.
// The paired branch requires symmetric spec and q and ignores gamma, which
// cancels inside each pair.
double theoretical_mse(const ExactReport& report, const SemiValueSpec& spec,
                       const SizeDistribution& q, long long samples, bool paired,
                       double gamma = 0.0);

// Exact law of a linear estimator: mean over T samples of
// (u_S - shift(s)) z_S plus a constant offset vector, with sizes drawn from q.
struct LinearTermModel {
  SizeDistribution q;
  ZCoefficients z;
  std::function<double(int)> shift;  // empty means zero
  std::vector<double> offset;        // empty means zero
};

// Exact E[estimate] of a LinearTermModel.
std::vector<double> model_expectation(const ExactReport& report,
                                      const LinearTermModel& model);
// Exact E||estimate - phi||^2 (variance plus squared bias). In paired mode
// samples are grouped as (S, complement) pairs with an optional trailing
// single; this needs z_{[n]\S} = -z_S, checked on the coefficients.
double model_mse(const ExactReport& report, const LinearTermModel& model,
                 long long samples, bool paired);

// E_{q*}[u_S], the minimizer of gamma -> E[(u_S - gamma)^2]. The report must
// have been built under q_star.
double gamma_star(const ExactReport& report);

// 2 exp(-T eps^2 / (4 sigma2)); requires 0 < eps <= 3 sigma2 / vector_bound
// where vector_bound bounds the centered summand norm almost surely.
double concentration_bound(long long samples, double epsilon, double sigma2,
                           double vector_bound);
// Largest admissible epsilon, 3 sigma2 / vector_bound.
double concentration_validity(double sigma2, double vector_bound);

// sum over S in q's support of q_s C(n,s)^{-1} (u_S - shift(s)) z_S
// (n <= 18).
std::vector<double> expected_single_sample(const SemiValueSpec& spec,
                                           const SizeDistribution& q,
                                           const UtilityOracle& oracle,
                                           const std::function<double(int)>& shift = {});

// Labeled CSV block: one `field,value[,value...]` row per report field.
void write_report_csv(std::ostream& out, const ExactReport& report);

}  // namespace semival

#endif  // SEMIVAL_EXACT_HPP_
