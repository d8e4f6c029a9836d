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

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "semival/bench.hpp"
#include "semival/exact.hpp"

namespace {

using semival::ExperimentConfig;

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    stream = &file;
  }
  std::ostream& get() { return *stream; }
};

void write_sidecar(const std::string& path, const auto& writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  writer(out);
}

void run_command(const std::string& command, const ExperimentConfig& config) {
  semival::Workload work = semival::load_workload(config);
  Output out(config.out);
  if (command == "exact") {
    if (!work.truth) throw std::invalid_argument("exact needs ground truth");
    semival::write_report_csv(out.get(), *work.truth);
  } else if (command == "run") {
    const auto result = semival::run_experiment(config, work);
    if (work.truth) {
      semival::write_records(out.get(), result.records);
    } else {
      semival::write_estimates(out.get(), result.records);
    }
    if (!config.out.empty()) {
      if (work.truth) {
        write_sidecar(config.out + ".summary.csv",
                      [&](std::ostream& s) { semival::write_summary(s, result.summary); });
      }
      write_sidecar(config.out + ".meta", [&](std::ostream& s) {
        for (const auto& line : result.meta) s << line << '\n';
      });
    }
  } else if (command == "sweep-gamma") {
    semival::write_gamma_sweep(out.get(), semival::sweep_gamma(config, work));
  } else if (command == "paired") {
    semival::write_paired(out.get(), semival::compare_paired(config, work));
  } else if (command == "verify-bounds") {
    semival::write_bounds(out.get(), semival::verify_bounds(config, work));
  } else if (command == "verify-mse") {
    semival::write_mse(out.get(), semival::verify_mse(config, work));
  } else {
    throw std::invalid_argument("unknown command '" + command + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-value estimation: exact values, estimators and experiments"};
  app.require_subcommand(0, 1);

  ExperimentConfig config;
  std::string config_path;
  bool no_truth = false;
  app.add_option("--seed", config.seed, "Base seed")->capture_default_str();
  app.add_option("--trials", config.trials, "Trials per estimator")->capture_default_str();
  app.add_option("--budget-per-player", config.budget_per_player,
                 "Queries per player when --budget is not set")
      ->capture_default_str();
  app.add_option("--out", config.out, "Output CSV (stdout when empty)");
  app.add_option("--config", config_path, "INI file, one experiment per section");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"exact", "Enumerate the exact semi-value and size moments"},
      {"run", "Run estimators over trials and write per-trial records"},
      {"sweep-gamma", "Empirical and predicted MSE over a gamma grid"},
      {"paired", "Compare paired and unpaired sampling"},
      {"verify-bounds", "Tail frequencies against the concentration bound"},
      {"verify-mse", "Empirical MSE against the exact prediction"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("--game", config.game, "Game descriptor")->required();
    sub->add_option("--semivalue", config.semivalue, "Semi-value descriptor")
        ->capture_default_str();
    if (name == "exact") continue;
    sub->add_option("--estimators", config.estimators, "Estimator descriptors")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--budget", config.budget,
                    name == "verify-bounds" ? "Samples per trial" : "Total queries per trial");
    sub->add_option("--checkpoints", config.checkpoints, "Budget fractions")->delimiter(',');
    sub->add_option("--gammas", config.gammas, "Gamma grid")->delimiter(',');
    sub->add_option("--epsilons", config.epsilons, "Epsilon grid")->delimiter(',');
    sub->add_flag("--no-truth", no_truth, "Skip exact ground truth");
    sub->add_flag("--timing", config.timing, "Record wall time");
    sub->add_option("--threads", config.threads, "Worker threads (0 = all cores)");
  }

  CLI11_PARSE(app, argc, argv);
  try {
    if (!config_path.empty()) {
      for (auto& section : semival::read_config(config_path)) {
        if (section.config.out.empty() && !config.out.empty()) {
          section.config.out = config.out + "." + section.config.name + ".csv";
        }
        run_command(section.command, section.config);
      }
      return 0;
    }
    const auto chosen = app.get_subcommands();
    if (chosen.empty()) {
      std::cerr << app.help();
      return 2;
    }
    config.truth = !no_truth;
    run_command(chosen.front()->get_name(), config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
