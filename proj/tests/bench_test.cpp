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

#include "semival/bench.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace semival {
namespace {

Workload voting_workload(const SemiValueSpec& spec) {
  return make_workload(weighted_voting_game({4, 3, 3, 2, 2, 1, 1, 1}, 9), spec, "wvg");
}

std::string to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  write_records(out, records);
  return out.str();
}

TEST(Budget, RulesAndCheckpoints) {
  ExperimentConfig config;
  EXPECT_EQ(resolve_budget(config, 12), 12000);
  config.budget = 500;
  EXPECT_EQ(resolve_budget(config, 12), 500);
  EXPECT_EQ(checkpoint_budgets({0.25, 0.5, 1.0}, 100, 2), (std::vector<long long>{25, 50, 100}));
  EXPECT_EQ(checkpoint_budgets({0.001, 1.0}, 100, 2), (std::vector<long long>{3, 100}));
  EXPECT_EQ(checkpoint_budgets({1.0 / 3, 1.0}, 100, 0), (std::vector<long long>{34, 100}));
  EXPECT_THROW(checkpoint_budgets({0.5, 0.5}, 100, 2), std::invalid_argument);
  EXPECT_THROW(checkpoint_budgets({0.0, 1.0}, 100, 2), std::invalid_argument);
  EXPECT_THROW(checkpoint_budgets({1.5}, 100, 2), std::invalid_argument);
  EXPECT_THROW(checkpoint_budgets({0.001, 0.002}, 100, 2), std::invalid_argument);
  EXPECT_EQ(trial_seed(9, 4), 9 ^ splitmix64(4));
}

TEST(RunExperiment, RecordLayoutAndDeterminism) {
  const auto work = voting_workload(SemiValueSpec::shapley(8));
  ExperimentConfig config;
  config.estimators = {"base", "gamma:0.5", "adalina", "kernel:modified", "shapiq", "msr"};
  config.budget = 400;
  config.trials = 10;
  config.checkpoints = {0.25, 0.5, 1.0};
  config.threads = 4;
  const auto result = run_experiment(config, work);
  ASSERT_EQ(result.records.size(), 10U * 3 * 6);

  const auto csv = to_csv(result.records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kRecordHeader);
  config.threads = 1;
  EXPECT_EQ(to_csv(run_experiment(config, work).records), csv);

  for (const auto& r : result.records) {
    double sq = 0.0;
    for (std::size_t i = 0; i < r.phi_hat.size(); ++i) {
      sq += (r.phi_hat[i] - work.truth->phi[i]) * (r.phi_hat[i] - work.truth->phi[i]);
    }
    EXPECT_NEAR(r.sq_err, sq, 1e-12);
    double norm = 0.0;
    for (double v : work.truth->phi) norm += v * v;
    EXPECT_NEAR(r.rel_err, std::sqrt(sq / norm), 1e-12);
    EXPECT_EQ(r.wall_ms, 0.0);
    EXPECT_EQ(r.seed, trial_seed(config.seed, r.trial));
    EXPECT_EQ(r.gamma_hat.has_value(), r.estimator == "adalina");
    if (r.checkpoint == 1.0) {
      EXPECT_EQ(r.budget, 400);
    }
  }
  // Last checkpoint equals a standalone run with the full budget.
  const auto solo = run_estimator(parse_estimator("adalina"), work.spec, work.oracle,
                                  trial_seed(config.seed, 3), 400);
  bool found = false;
  for (const auto& r : result.records) {
    if (r.estimator == "adalina" && r.trial == 3 && r.checkpoint == 1.0) {
      EXPECT_EQ(r.phi_hat, solo.phi_hat);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(RunExperiment, SummaryMatchesRecords) {
  const auto work = voting_workload(SemiValueSpec::banzhaf(8));
  ExperimentConfig config;
  config.estimators = {"base", "msr"};
  config.budget = 200;
  config.trials = 7;
  config.checkpoints = {0.5, 1.0};
  const auto result = run_experiment(config, work);
  ASSERT_EQ(result.summary.size(), 4U);
  for (const auto& row : result.summary) {
    std::vector<double> xs;
    for (const auto& r : result.records) {
      if (r.estimator == row.estimator && r.checkpoint == row.checkpoint) xs.push_back(r.sq_err);
    }
    ASSERT_EQ(xs.size(), 7U);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= 7;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    EXPECT_NEAR(row.mean_sq_err, mean, 1e-15);
    EXPECT_NEAR(row.std_sq_err, std::sqrt(ss / 6), 1e-15);
    EXPECT_EQ(row.trials, 7);
  }
  EXPECT_FALSE(result.meta.empty());
}

TEST(RunExperiment, TheoryColumnMatchesClosedForm) {
  const auto spec = SemiValueSpec::shapley(8);
  const auto work = voting_workload(spec);
  ExperimentConfig config;
  config.estimators = {"base", "gamma:0.25", "msr"};
  config.budget = 102;
  config.trials = 1;
  const auto result = run_experiment(config, work);
  const auto q = q_star(spec);
  EXPECT_NEAR(result.records[0].theory_mse, theoretical_mse(*work.truth, spec, q, 100, false), 1e-14);
  EXPECT_NEAR(result.records[1].theory_mse,
              theoretical_mse(*work.truth, spec, q, 100, false, 0.25), 1e-14);
  const auto msr = q_msr(spec);
  LinearTermModel law{msr, z_coefficients(msr, spec), {}, {}};
  EXPECT_NEAR(result.records[2].theory_mse, model_mse(*work.truth, law, 102, false), 1e-14);
}

TEST(SweepGamma, ConstantGameHasZeroErrorAtItsLevel) {
  const auto spec = SemiValueSpec::shapley(6);
  const auto work = make_workload(constant_game(6, 2.0), spec, "const");
  ExperimentConfig config;
  config.budget = 50;
  config.trials = 5;
  config.gammas = {0.0, 1.0, 2.0, 3.0};
  const auto sweep = sweep_gamma(config, work);
  ASSERT_EQ(sweep.rows.size(), 4U);
  EXPECT_EQ(sweep.gamma_star, 2.0);
  EXPECT_EQ(sweep.argmin, 2U);
  EXPECT_NEAR(sweep.rows[2].mean_sq_err, 0.0, 1e-24);
  EXPECT_NEAR(sweep.rows[2].theory_mse, 0.0, 1e-24);
  EXPECT_TRUE(sweep.argmin_near_optimum);
  EXPECT_THROW(sweep_gamma(config, make_workload(constant_game(6, 2.0),
                                                 SemiValueSpec::weighted_banzhaf(6, 0.7), "c")),
               std::invalid_argument);
}

TEST(VerifyBounds, FrequenciesBelowBound) {
  const int n = 6;
  const auto work = make_workload(corner_case_utility(n, 1.0, 4), SemiValueSpec::shapley(n), "corner");
  ExperimentConfig config;
  config.estimators = {"base"};
  config.budget = 64;
  config.trials = 2000;
  const auto rows = verify_bounds(config, work);
  ASSERT_EQ(rows.size(), 10U);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.violation) << r.epsilon;
    EXPECT_GE(r.bound, 0.0);
    EXPECT_EQ(r.samples, 64);
  }
  config.estimators = {"adalina"};
  EXPECT_THROW(verify_bounds(config, work), std::invalid_argument);
}

TEST(ReadConfig, ParsesSections) {
  const std::string path = ::testing::TempDir() + "/exp.ini";
  std::ofstream(path) << "[first]\ncommand = run\ngame = corner:8,1,3\nestimators = base, adalina\n"
                         "trials = 3\ncheckpoints = 0.5,1\nbudget = 300\n\n"
                         "[second]\ncommand = sweep-gamma\ngame = corner:6,1,1\n"
                         "semivalue = beta:2,2\ngammas = -1, 0, 1\ntiming = true\n";
  const auto sections = read_config(path);
  ASSERT_EQ(sections.size(), 2U);
  EXPECT_EQ(sections[0].command, "run");
  EXPECT_EQ(sections[0].config.name, "first");
  EXPECT_EQ(sections[0].config.estimators, (std::vector<std::string>{"base", "adalina"}));
  EXPECT_EQ(sections[0].config.checkpoints, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(sections[0].config.budget, 300);
  EXPECT_EQ(sections[1].config.gammas, (std::vector<double>{-1, 0, 1}));
  EXPECT_TRUE(sections[1].config.timing);

  std::ofstream(path) << "[bad]\ncommand = run\ngame = corner:8,1,3\ncolour = red\n";
  EXPECT_THROW(read_config(path), std::invalid_argument);
}

}  // namespace
}  // namespace semival
