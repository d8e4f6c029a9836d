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

#ifndef SEMIVAL_BENCH_HPP_
#define SEMIVAL_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semival/estimators.hpp"
#include "semival/exact.hpp"
#include "semival/games.hpp"
#include "semival/weights.hpp"

namespace semival {

inline constexpr std::string_view kRecordHeader =
    "estimator,game,semivalue,trial,seed,budget,checkpoint,rel_err,sq_err,"
    "theory_mse,gamma_hat,wall_ms";

struct ExperimentConfig {
  std::string name = "experiment";
  std::string game;
  std::string semivalue = "shapley";
  std::vector<std::string> estimators = {"base"};
  // Absolute query budget; when zero the per-player rule applies.
  long long budget = 0;
  long long budget_per_player = 1000;
  int trials = 10;
  std::uint64_t seed = 2026;
  // Budget fractions in (0, 1], strictly increasing.
  std::vector<double> checkpoints = {1.0};
  std::vector<double> gammas;
  std::vector<double> epsilons;
  std::string out;
  bool truth = true;
  // wall_ms is written as 0 unless timing is on, so reruns are byte-identical.
  bool timing = false;
  int threads = 0;  // 0 = hardware concurrency
};

long long resolve_budget(const ExperimentConfig& config, int n);
// Query counts for each checkpoint fraction, rounded up and kept beyond the
// endpoint queries.
std::vector<long long> checkpoint_budgets(const std::vector<double>& fractions,
                                          long long budget, long long reserved);
// seed XOR splitmix64(trial).
std::uint64_t trial_seed(std::uint64_t seed, int trial);

// Everything an experiment needs besides its config.
struct Workload {
  UtilityOracle oracle;
  SemiValueSpec spec;
  std::string game_id;
  std::optional<ExactReport> truth;
};
// Parses the game and semi-value; enumerates ground truth when requested
// (n <= 22).
Workload load_workload(const ExperimentConfig& config);
Workload make_workload(UtilityOracle oracle, SemiValueSpec spec, std::string game_id,
                       bool truth = true);

struct ExperimentRecord {
  std::string estimator;
  std::string game;
  std::string semivalue;
  int trial = 0;
  std::uint64_t seed = 0;
  long long budget = 0;
  double checkpoint = 1.0;
  double rel_err = 0.0;
  double sq_err = 0.0;
  double theory_mse = 0.0;
  std::optional<double> gamma_hat;
  double wall_ms = 0.0;
  long long samples = 0;
  std::vector<double> phi_hat;
};

struct SummaryRow {
  std::string estimator;
  double checkpoint = 1.0;
  long long budget = 0;
  int trials = 0;
  double mean_rel_err = 0.0;
  double std_rel_err = 0.0;
  double mean_sq_err = 0.0;
  double std_sq_err = 0.0;
  double theory_mse = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<SummaryRow> summary;
  // key=value lines for the .meta sidecar.
  std::vector<std::string> meta;
};

// Exact MSE prediction for an estimator after `samples` draws. Adaptive
// estimators are predicted by the fixed-gamma law at their optimal constant.
LinearTermModel reference_law(const Estimator& estimator, const ExactReport& truth);
double predicted_mse(const Estimator& estimator, const ExactReport& truth,
                     long long samples);

ExperimentResult run_experiment(const ExperimentConfig& config, const Workload& work);
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);
// Without ground truth: one row of phi_hat per (estimator, trial, checkpoint).
void write_estimates(std::ostream& out, const std::vector<ExperimentRecord>& records);

struct GammaSweepRow {
  double gamma = 0.0;
  int trials = 0;
  double mean_rel_err = 0.0;
  double mean_sq_err = 0.0;
  double se_sq_err = 0.0;
  double theory_mse = 0.0;
};
struct GammaSweepResult {
  std::vector<GammaSweepRow> rows;
  double gamma_star = 0.0;
  std::size_t argmin = 0;
  // |argmin gamma - gamma*| <= grid step.
  bool argmin_near_optimum = false;
};
// Every gamma reuses the same per-trial seeds, so the curve is built from
// common random numbers. An empty grid defaults to gamma* +- 2 range in 9
// points.
GammaSweepResult sweep_gamma(const ExperimentConfig& config, const Workload& work);
void write_gamma_sweep(std::ostream& out, const GammaSweepResult& result);

struct PairedRow {
  std::string estimator;
  double checkpoint = 1.0;
  long long budget = 0;
  int trials = 0;
  double unpaired_mse = 0.0;
  double unpaired_se = 0.0;
  double unpaired_theory = 0.0;
  double paired_mse = 0.0;
  double paired_se = 0.0;
  double paired_theory = 0.0;
  double cross_moment = 0.0;
  bool predicted_paired_better = false;
  bool empirical_paired_better = false;
};
std::vector<PairedRow> compare_paired(const ExperimentConfig& config,
                                      const Workload& work);
void write_paired(std::ostream& out, const std::vector<PairedRow>& rows);

struct BoundRow {
  std::string estimator;
  double epsilon = 0.0;
  int trials = 0;
  long long samples = 0;
  double frequency = 0.0;
  double bound = 0.0;
  bool violation = false;
};
// Tail frequencies of ||phi_hat - phi|| >= eps for the base estimator (or
// ame:<w>) against the concentration bound. `budget` counts samples here.
// An empty epsilon grid uses 10 points up to the validity limit.
std::vector<BoundRow> verify_bounds(const ExperimentConfig& config, const Workload& work);
void write_bounds(std::ostream& out, const std::vector<BoundRow>& rows);

struct MseRow {
  std::string estimator;
  long long samples = 0;
  int trials = 0;
  double empirical_mse = 0.0;
  double standard_error = 0.0;
  double theory_mse = 0.0;
  double z_score = 0.0;
};
std::vector<MseRow> verify_mse(const ExperimentConfig& config, const Workload& work);
void write_mse(std::ostream& out, const std::vector<MseRow>& rows);

// Sections of an INI file, one experiment each. Keys: command, game,
// semivalue, estimators, trials, seed, budget, budget_per_player,
// checkpoints, gammas, epsilons, out, truth, timing, threads.
struct ConfigSection {
  std::string command;
  ExperimentConfig config;
};
std::vector<ConfigSection> read_config(const std::string& path);

}  // namespace semival

#endif  // SEMIVAL_BENCH_HPP_
