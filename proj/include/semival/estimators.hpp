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

#ifndef SEMIVAL_ESTIMATORS_HPP_
#define SEMIVAL_ESTIMATORS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semival/coalition.hpp"
#include "semival/exact.hpp"
#include "semival/games.hpp"
#include "semival/sampling.hpp"
#include "semival/weights.hpp"

namespace semival {

enum class EstimatorKind {
  kBase,
  kGamma,
  kAdalina,
  kAdalinaAll,
  kKernelVanilla,
  kKernelLeverage,
  kKernelModified,
  kShapIq,
  kAme,
  kMsr,
};

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::kBase;
  double gamma = 0.0;  // kGamma
  double w = 0.5;      // kAme
  bool paired = false;
  // Kernel variants only: replaces lambda * s by f(s).
  std::function<double(int)> shift;
};

// `base`, `gamma:<v>`, `adalina`, `adalina-all`,
// `kernel:vanilla|leverage|modified`, `shapiq`, `ame:<w>`, `msr`, each with an
// optional `+paired` suffix.
EstimatorConfig parse_estimator(std::string_view text);
std::string estimator_id(const EstimatorConfig& config);

struct Estimate {
  std::vector<double> phi_hat;
  long long samples = 0;
  // Oracle counter delta, endpoint queries included. Set by run_estimator.
  std::uint64_t queries_used = 0;
  std::string estimator_id;
  std::string q_id;
  bool paired = false;
  std::uint64_t seed = 0;
  std::optional<double> gamma_hat;
  // Samples whose term exceeded the almost-sure norm bound (kernel, AME).
  std::uint64_t bound_violations = 0;
  std::vector<std::string> warnings;
};

// Streaming estimator with Theta(n) state. Coalitions come from outside;
// make_source() builds the stream whose law the estimator is weighted for.
class Estimator {
 public:
  Estimator(EstimatorConfig config, SemiValueSpec spec);

  const EstimatorConfig& config() const { return config_; }
  const SemiValueSpec& spec() const { return spec_; }
  const SizeDistribution& q() const { return q_; }
  const ZCoefficients& z() const { return z_; }
  const std::string& id() const { return id_; }

  // Whether finalize reads u_[n] and u_empty (two extra queries).
  bool needs_endpoints() const;
  // Enables the per-sample norm checks of the kernel and AME estimators.
  void set_sup_bound(double bound) { sup_bound_ = bound; }
  // Endpoints may be supplied before ingestion, which also lets the kernel
  // check see lambda.
  void set_endpoints(double u_full, double u_empty);

  void ingest(const Coalition& coalition, double u);
  // Snapshot of the running state; the estimator keeps accepting samples.
  Estimate finalize() const;
  Estimate finalize(double u_full, double u_empty);

  std::unique_ptr<CoalitionSource> make_source(RandomSource rng) const;
  // Probability that one draw of make_source() (unpaired) returns `coalition`.
  double probability(const Coalition& coalition) const;

  long long samples() const { return t_; }
  // Number of doubles held; independent of the sample count.
  std::size_t state_size() const;

 private:
  double shift_weight(int s) const;

  EstimatorConfig config_;
  SemiValueSpec spec_;
  SizeDistribution q_;
  ZCoefficients z_;
  std::string id_;
  bool tracks_shift_ = false;

  long long t_ = 0;
  std::vector<double> phi_hat_;    // mean of u z
  std::vector<double> v_hat_;      // mean of z
  std::vector<double> shift_hat_;  // mean of g(s) z, kernel variants only
  double gamma_hat_ = 0.0;         // mean of u
  std::optional<double> u_full_;
  std::optional<double> u_empty_;
  std::optional<double> sup_bound_;
  std::uint64_t violations_ = 0;
};

// Size law and direction vectors of a Bernoulli(w) coalition.
SizeDistribution binomial_sizes(int n, double w);
ZCoefficients ame_coefficients(int n, double w);

// The exact linear law of a non-adaptive estimator, for model_mse and
// model_expectation. Adalina rows are predicted by the gamma-fixed law at
// their optimal constant; see control_variate_optimum.
LinearTermModel linear_law(const Estimator& estimator, double u_full, double u_empty);
// E_q[u_S] under the estimator's q: gamma* for adalina, its analogue for
// adalina-all.
double control_variate_optimum(const Estimator& estimator, const ExactReport& report);

using CheckpointFn = std::function<void(const Estimate&)>;

// Runs one estimator for `budget` oracle queries (endpoint queries included)
// on a private counter. `checkpoints` are ascending query counts at which
// on_checkpoint sees a snapshot; the last snapshot is also returned.
Estimate run_estimator(const EstimatorConfig& config, const SemiValueSpec& spec,
                       const UtilityOracle& oracle, std::uint64_t seed,
                       long long budget,
                       const std::vector<long long>& checkpoints = {},
                       const CheckpointFn& on_checkpoint = {});

}  // namespace semival

#endif  // SEMIVAL_ESTIMATORS_HPP_
