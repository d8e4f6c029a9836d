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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "semival/parse_util.hpp"

namespace semival {
namespace {

// Runs body(k) for k in [0, count) over a fixed pool; the first exception
// is rethrown after every worker has stopped.
template <class Body>
void parallel_for(int count, int threads, Body&& body) {
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  workers = std::clamp(workers, 1, std::max(count, 1));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto work = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

const ExactReport& require_truth(const Workload& work) {
  if (!work.truth) throw std::invalid_argument("this command needs exact ground truth");
  return *work.truth;
}

double squared_distance(const std::vector<double>& x, const std::vector<double>& y) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += (x[i] - y[i]) * (x[i] - y[i]);
  return total;
}

// Relative l2 error; the absolute error when phi is the zero vector.
double relative_error(double sq_err, double phi_norm2) {
  return phi_norm2 > 0.0 ? std::sqrt(sq_err / phi_norm2) : std::sqrt(sq_err);
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

double standard_error(const MeanSd& m, std::size_t count) {
  return count > 0 ? m.sd / std::sqrt(static_cast<double>(count)) : 0.0;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument("not a boolean: '" + std::string(text) + "'");
}

}  // namespace

long long resolve_budget(const ExperimentConfig& config, int n) {
  const long long budget = config.budget > 0 ? config.budget : config.budget_per_player * n;
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  return budget;
}

std::vector<long long> checkpoint_budgets(const std::vector<double>& fractions,
                                          long long budget, long long reserved) {
  std::vector<long long> out;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const double f = fractions[k];
    if (!(f > 0.0 && f <= 1.0) || (k > 0 && f <= fractions[k - 1])) {
      throw std::invalid_argument("checkpoints must be strictly increasing in (0, 1]");
    }
    const auto c = std::max(reserved + 1,
                            static_cast<long long>(std::ceil(f * static_cast<double>(budget))));
    if (!out.empty() && c <= out.back()) {
      throw std::invalid_argument("checkpoints collapse at budget " + std::to_string(budget));
    }
    out.push_back(std::min(c, budget));
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return RandomSource::derive_seed(seed, static_cast<std::uint64_t>(trial));
}

Workload load_workload(const ExperimentConfig& config) {
  if (config.game.empty()) throw std::invalid_argument("no game given");
  UtilityOracle oracle = parse_game(config.game);
  SemiValueSpec spec = parse_semivalue(config.semivalue, oracle.players());
  return make_workload(std::move(oracle), std::move(spec), config.game, config.truth);
}

Workload make_workload(UtilityOracle oracle, SemiValueSpec spec, std::string game_id,
                       bool truth) {
  Workload work{std::move(oracle), std::move(spec), std::move(game_id), std::nullopt};
  if (truth) {
    if (work.spec.n() > kMaxExactPlayers) {
      throw std::invalid_argument("ground truth needs n <= " +
                                  std::to_string(kMaxExactPlayers) +
                                  "; rerun without truth");
    }
    work.truth = exact_semivalue(work.oracle, work.spec);
  }
  return work;
}

LinearTermModel reference_law(const Estimator& estimator, const ExactReport& truth) {
  const auto kind = estimator.config().kind;
  if (kind == EstimatorKind::kAdalina) {
    EstimatorConfig fixed = estimator.config();
    fixed.kind = EstimatorKind::kGamma;
    fixed.gamma = control_variate_optimum(estimator, truth);
    return linear_law(Estimator(fixed, estimator.spec()), truth.u_full, truth.u_empty);
  }
  if (kind == EstimatorKind::kAdalinaAll) {
    const double g = control_variate_optimum(estimator, truth);
    return LinearTermModel{estimator.q(), estimator.z(), [g](int) { return g; }, {}};
  }
  return linear_law(estimator, truth.u_full, truth.u_empty);
}

double predicted_mse(const Estimator& estimator, const ExactReport& truth,
                     long long samples) {
  return model_mse(truth, reference_law(estimator, truth), samples,
                   estimator.config().paired);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Workload& work) {
  const int n = work.spec.n();
  const long long budget = resolve_budget(config, n);
  if (config.trials < 1) throw std::invalid_argument("need at least one trial");
  ExperimentResult result;
  result.meta.push_back("game=" + work.game_id);
  result.meta.push_back("semivalue=" + work.spec.id());
  result.meta.push_back("players=" + std::to_string(n));
  result.meta.push_back("seed=" + std::to_string(config.seed));
  result.meta.push_back("trial_seed=seed^splitmix64(trial)");
  result.meta.push_back("trials=" + std::to_string(config.trials));
  result.meta.push_back("budget_queries=" + std::to_string(budget));
  result.meta.push_back("budget_convention=queries include u_[n] and u_empty when used");
  result.meta.push_back("timing=" + std::string(config.timing ? "on" : "off"));

  const double phi_norm2 = work.truth ? work.truth->phi_norm2 : 0.0;
  for (const auto& text : config.estimators) {
    const EstimatorConfig est_config = parse_estimator(text);
    const Estimator proto(est_config, work.spec);
    const long long reserved = proto.needs_endpoints() ? 2 : 0;
    const auto marks = checkpoint_budgets(config.checkpoints, budget, reserved);

    std::vector<std::vector<ExperimentRecord>> per_trial(
        static_cast<std::size_t>(config.trials));
    std::vector<std::vector<std::string>> warnings(static_cast<std::size_t>(config.trials));
    std::vector<std::uint64_t> violations(static_cast<std::size_t>(config.trials), 0);
    parallel_for(config.trials, config.threads, [&](int trial) {
      const auto seed = trial_seed(config.seed, trial);
      const auto start = std::chrono::steady_clock::now();
      auto& rows = per_trial[static_cast<std::size_t>(trial)];
      std::size_t mark = 0;
      const auto on_checkpoint = [&](const Estimate& e) {
        ExperimentRecord r;
        r.estimator = e.estimator_id;
        r.game = work.game_id;
        r.semivalue = work.spec.id();
        r.trial = trial;
        r.seed = seed;
        r.budget = static_cast<long long>(e.queries_used);
        r.checkpoint = config.checkpoints[mark++];
        r.gamma_hat = e.gamma_hat;
        r.samples = e.samples;
        r.phi_hat = e.phi_hat;
        if (work.truth) {
          r.sq_err = squared_distance(e.phi_hat, work.truth->phi);
          r.rel_err = relative_error(r.sq_err, phi_norm2);
        }
        if (config.timing) {
          r.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        }
        rows.push_back(std::move(r));
      };
      const Estimate last = run_estimator(est_config, work.spec, work.oracle, seed,
                                          budget, marks, on_checkpoint);
      warnings[static_cast<std::size_t>(trial)] = last.warnings;
      violations[static_cast<std::size_t>(trial)] = last.bound_violations;
    });

    std::map<long long, double> theory;
    std::set<std::string> notes;
    std::uint64_t total_violations = 0;
    for (int trial = 0; trial < config.trials; ++trial) {
      for (auto& r : per_trial[static_cast<std::size_t>(trial)]) {
        if (work.truth) {
          auto it = theory.find(r.samples);
          if (it == theory.end()) {
            it = theory.emplace(r.samples, predicted_mse(proto, *work.truth, r.samples)).first;
          }
          r.theory_mse = it->second;
        }
        result.records.push_back(std::move(r));
      }
      for (const auto& w : warnings[static_cast<std::size_t>(trial)]) notes.insert(w);
      total_violations += violations[static_cast<std::size_t>(trial)];
    }
    const std::string prefix = "estimator." + proto.id() + ".";
    result.meta.push_back(prefix + "q=" + proto.q().id());
    result.meta.push_back(prefix + "endpoint_queries=" + std::to_string(reserved));
    result.meta.push_back(prefix + "samples=" + std::to_string(budget - reserved));
    result.meta.push_back(prefix + "paired=" + (est_config.paired ? "true" : "false"));
    result.meta.push_back(prefix + "bound_violations=" + std::to_string(total_violations));
    for (const auto& note : notes) result.meta.push_back(prefix + "warning=" + note);
  }
  if (work.truth) result.summary = summarize(result.records);
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  std::vector<std::pair<std::string, double>> order;
  std::map<std::pair<std::string, double>, std::vector<const ExperimentRecord*>> groups;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.estimator, r.checkpoint);
    auto& group = groups[key];
    if (group.empty()) order.push_back(key);
    group.push_back(&r);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& group = groups[key];
    std::vector<double> rel, sq;
    double budget_sum = 0.0;
    double theory_sum = 0.0;
    for (const auto* r : group) {
      rel.push_back(r->rel_err);
      sq.push_back(r->sq_err);
      budget_sum += static_cast<double>(r->budget);
      theory_sum += r->theory_mse;
    }
    const auto count = static_cast<double>(group.size());
    const MeanSd rel_m = mean_sd(rel);
    const MeanSd sq_m = mean_sd(sq);
    out.push_back(SummaryRow{key.first, key.second,
                             std::llround(budget_sum / count),
                             static_cast<int>(group.size()), rel_m.mean, rel_m.sd,
                             sq_m.mean, sq_m.sd, theory_sum / count});
  }
  return out;
}

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.estimator << ',' << r.game << ',' << r.semivalue << ',' << r.trial << ','
        << r.seed << ',' << r.budget << ',' << format_number(r.checkpoint) << ','
        << format_number(r.rel_err) << ',' << format_number(r.sq_err) << ','
        << format_number(r.theory_mse) << ',' << optional_number(r.gamma_hat) << ','
        << format_number(r.wall_ms) << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "estimator,checkpoint,budget,trials,mean_rel_err,std_rel_err,mean_sq_err,"
         "std_sq_err,theory_mse\n";
  for (const auto& r : rows) {
    out << r.estimator << ',' << format_number(r.checkpoint) << ',' << r.budget << ','
        << r.trials << ',' << format_number(r.mean_rel_err) << ','
        << format_number(r.std_rel_err) << ',' << format_number(r.mean_sq_err) << ','
        << format_number(r.std_sq_err) << ',' << format_number(r.theory_mse) << '\n';
  }
}

void write_estimates(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "estimator,game,semivalue,trial,seed,budget,checkpoint,phi_hat\n";
  for (const auto& r : records) {
    out << r.estimator << ',' << r.game << ',' << r.semivalue << ',' << r.trial << ','
        << r.seed << ',' << r.budget << ',' << format_number(r.checkpoint) << ',';
    for (std::size_t i = 0; i < r.phi_hat.size(); ++i) {
      out << (i ? " " : "") << format_number(r.phi_hat[i]);
    }
    out << '\n';
  }
}

GammaSweepResult sweep_gamma(const ExperimentConfig& config, const Workload& work) {
  const ExactReport& truth = require_truth(work);
  if (!work.spec.symmetric()) throw std::invalid_argument("sweep-gamma needs a symmetric spec");
  const long long budget = resolve_budget(config, work.spec.n());
  GammaSweepResult result;
  result.gamma_star = truth.gamma_star;

  std::vector<double> grid = config.gammas;
  if (grid.empty()) {
    const double spread = std::sqrt(std::max(
        truth.second_moment - truth.gamma_star * truth.gamma_star, 0.0));
    const double delta = spread > 0.0 ? spread : 1.0;
    for (int k = -4; k <= 4; ++k) grid.push_back(truth.gamma_star + 0.5 * k * delta);
  }
  std::sort(grid.begin(), grid.end());

  const auto g_count = grid.size();
  const auto t_count = static_cast<std::size_t>(config.trials);
  std::vector<double> sq(g_count * t_count);
  parallel_for(config.trials, config.threads, [&](int trial) {
    const auto seed = trial_seed(config.seed, trial);
    for (std::size_t g = 0; g < g_count; ++g) {
      EstimatorConfig ec;
      ec.kind = EstimatorKind::kGamma;
      ec.gamma = grid[g];
      const Estimate e = run_estimator(ec, work.spec, work.oracle, seed, budget);
      sq[g * t_count + static_cast<std::size_t>(trial)] = squared_distance(e.phi_hat, truth.phi);
    }
  });

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < g_count; ++g) {
    std::vector<double> column(sq.begin() + static_cast<std::ptrdiff_t>(g * t_count),
                               sq.begin() + static_cast<std::ptrdiff_t>((g + 1) * t_count));
    const MeanSd m = mean_sd(column);
    double rel = 0.0;
    for (double x : column) rel += relative_error(x, truth.phi_norm2);
    EstimatorConfig ec;
    ec.kind = EstimatorKind::kGamma;
    ec.gamma = grid[g];
    const Estimator est(ec, work.spec);
    result.rows.push_back(GammaSweepRow{grid[g], config.trials, rel / static_cast<double>(t_count),
                                        m.mean, standard_error(m, t_count),
                                        predicted_mse(est, truth, budget - 2)});
    if (m.mean < best) {
      best = m.mean;
      result.argmin = g;
    }
  }
  double step = std::numeric_limits<double>::infinity();
  for (std::size_t g = 1; g < g_count; ++g) step = std::min(step, grid[g] - grid[g - 1]);
  result.argmin_near_optimum =
      g_count == 1 ||
      std::abs(grid[result.argmin] - truth.gamma_star) <= step * (1.0 + 1e-9);
  return result;
}

void write_gamma_sweep(std::ostream& out, const GammaSweepResult& result) {
  out << "gamma,trials,mean_rel_err,mean_sq_err,se_sq_err,theory_mse,gamma_star,is_argmin\n";
  for (std::size_t g = 0; g < result.rows.size(); ++g) {
    const auto& r = result.rows[g];
    out << format_number(r.gamma) << ',' << r.trials << ',' << format_number(r.mean_rel_err)
        << ',' << format_number(r.mean_sq_err) << ',' << format_number(r.se_sq_err) << ','
        << format_number(r.theory_mse) << ',' << format_number(result.gamma_star) << ','
        << (g == result.argmin ? 1 : 0) << '\n';
  }
}

std::vector<PairedRow> compare_paired(const ExperimentConfig& config, const Workload& work) {
  const ExactReport& truth = require_truth(work);
  const long long budget = resolve_budget(config, work.spec.n());
  const auto t_count = static_cast<std::size_t>(config.trials);
  std::vector<PairedRow> rows;
  for (const auto& text : config.estimators) {
    EstimatorConfig unpaired = parse_estimator(text);
    unpaired.paired = false;
    EstimatorConfig paired = unpaired;
    paired.paired = true;
    const Estimator proto_u(unpaired, work.spec);
    const Estimator proto_p(paired, work.spec);
    const long long reserved = proto_u.needs_endpoints() ? 2 : 0;
    const auto marks = checkpoint_budgets(config.checkpoints, budget, reserved);
    const auto c_count = marks.size();
    std::vector<double> sq_u(c_count * t_count), sq_p(c_count * t_count);
    std::vector<long long> samples(c_count);

    parallel_for(config.trials, config.threads, [&](int trial) {
      const auto seed = trial_seed(config.seed, trial);
      for (int mode = 0; mode < 2; ++mode) {
        auto& sink = mode == 0 ? sq_u : sq_p;
        std::size_t c = 0;
        run_estimator(mode == 0 ? unpaired : paired, work.spec, work.oracle, seed, budget,
                      marks, [&](const Estimate& e) {
                        sink[c * t_count + static_cast<std::size_t>(trial)] =
                            squared_distance(e.phi_hat, truth.phi);
                        if (trial == 0) samples[c] = e.samples;
                        ++c;
                      });
      }
    });

    const double cross = expected_cross(truth, tilde_q(proto_u.q(), work.spec));
    for (std::size_t c = 0; c < c_count; ++c) {
      const auto slice = [&](const std::vector<double>& v) {
        return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(c * t_count),
                                   v.begin() + static_cast<std::ptrdiff_t>((c + 1) * t_count));
      };
      const MeanSd mu = mean_sd(slice(sq_u));
      const MeanSd mp = mean_sd(slice(sq_p));
      PairedRow row;
      row.estimator = proto_u.id();
      row.checkpoint = config.checkpoints[c];
      row.budget = marks[c];
      row.trials = config.trials;
      row.unpaired_mse = mu.mean;
      row.unpaired_se = standard_error(mu, t_count);
      row.unpaired_theory = predicted_mse(proto_u, truth, samples[c]);
      row.paired_mse = mp.mean;
      row.paired_se = standard_error(mp, t_count);
      row.paired_theory = predicted_mse(proto_p, truth, samples[c]);
      row.cross_moment = cross;
      row.predicted_paired_better = row.paired_theory < row.unpaired_theory;
      row.empirical_paired_better = row.paired_mse < row.unpaired_mse;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_paired(std::ostream& out, const std::vector<PairedRow>& rows) {
  out << "estimator,checkpoint,budget,trials,unpaired_mse,unpaired_se,unpaired_theory,"
         "paired_mse,paired_se,paired_theory,cross_moment,predicted_paired_better,"
         "empirical_paired_better\n";
  for (const auto& r : rows) {
    out << r.estimator << ',' << format_number(r.checkpoint) << ',' << r.budget << ','
        << r.trials << ',' << format_number(r.unpaired_mse) << ','
        << format_number(r.unpaired_se) << ',' << format_number(r.unpaired_theory) << ','
        << format_number(r.paired_mse) << ',' << format_number(r.paired_se) << ','
        << format_number(r.paired_theory) << ',' << format_number(r.cross_moment) << ','
        << r.predicted_paired_better << ',' << r.empirical_paired_better << '\n';
  }
}

std::vector<BoundRow> verify_bounds(const ExperimentConfig& config, const Workload& work) {
  const ExactReport& truth = require_truth(work);
  const int n = work.spec.n();
  const std::string text = config.estimators.empty() ? "base" : config.estimators.front();
  const EstimatorConfig ec = parse_estimator(text);
  if (ec.kind != EstimatorKind::kBase && ec.kind != EstimatorKind::kAme) {
    throw std::invalid_argument("verify-bounds supports base and ame:<w>");
  }
  if (ec.paired) throw std::invalid_argument("the tail bound assumes independent draws");
  const Estimator proto(ec, work.spec);
  const double c = work.oracle.sup_bound().value_or(truth.sup_norm);
  double sigma2 = 0.0;
  double vector_bound = 0.0;
  if (ec.kind == EstimatorKind::kBase) {
    const double nd = n * optimal_dispersion(work.spec);
    sigma2 = nd * c * c;
    vector_bound = 2.0 * c * std::sqrt(nd);
  } else {
    const double lo = std::min(ec.w, 1.0 - ec.w);
    sigma2 = n * c * c / (lo * lo);
    vector_bound = 2.0 * std::sqrt(sigma2);
  }
  const double limit = concentration_validity(sigma2, vector_bound);
  std::vector<double> grid = config.epsilons;
  if (grid.empty()) {
    for (int k = 1; k <= 10; ++k) grid.push_back(limit * k / 10.0);
  }
  const long long samples = config.budget > 0 ? config.budget : 256;

  std::vector<double> errors(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, config.threads, [&](int trial) {
    Estimator est(ec, work.spec);
    est.set_endpoints(truth.u_full, truth.u_empty);
    auto source = est.make_source(RandomSource(trial_seed(config.seed, trial)));
    Coalition coalition(n);
    for (long long t = 0; t < samples; ++t) {
      source->next(coalition);
      est.ingest(coalition, work.oracle.function()->operator()(coalition));
    }
    errors[static_cast<std::size_t>(trial)] =
        std::sqrt(squared_distance(est.finalize().phi_hat, truth.phi));
  });

  std::vector<BoundRow> rows;
  for (double eps : grid) {
    BoundRow row;
    row.estimator = proto.id();
    row.epsilon = eps;
    row.trials = config.trials;
    row.samples = samples;
    row.bound = concentration_bound(samples, eps, sigma2, vector_bound);
    const auto hits = std::count_if(errors.begin(), errors.end(),
                                    [eps](double e) { return e >= eps; });
    row.frequency = static_cast<double>(hits) / static_cast<double>(config.trials);
    const double b = std::min(row.bound, 1.0);
    row.violation =
        row.frequency > b + 3.0 * std::sqrt(b * (1.0 - b) / static_cast<double>(config.trials));
    rows.push_back(row);
  }
  return rows;
}

void write_bounds(std::ostream& out, const std::vector<BoundRow>& rows) {
  out << "estimator,epsilon,trials,samples,frequency,bound,violation\n";
  for (const auto& r : rows) {
    out << r.estimator << ',' << format_number(r.epsilon) << ',' << r.trials << ','
        << r.samples << ',' << format_number(r.frequency) << ',' << format_number(r.bound)
        << ',' << r.violation << '\n';
  }
}

std::vector<MseRow> verify_mse(const ExperimentConfig& config, const Workload& work) {
  const ExactReport& truth = require_truth(work);
  const long long budget = resolve_budget(config, work.spec.n());
  const auto t_count = static_cast<std::size_t>(config.trials);
  std::vector<MseRow> rows;
  for (const auto& text : config.estimators) {
    const EstimatorConfig ec = parse_estimator(text);
    const Estimator proto(ec, work.spec);
    std::vector<double> sq(t_count);
    std::vector<long long> samples(t_count);
    parallel_for(config.trials, config.threads, [&](int trial) {
      const Estimate e = run_estimator(ec, work.spec, work.oracle,
                                       trial_seed(config.seed, trial), budget);
      sq[static_cast<std::size_t>(trial)] = squared_distance(e.phi_hat, truth.phi);
      samples[static_cast<std::size_t>(trial)] = e.samples;
    });
    const MeanSd m = mean_sd(sq);
    MseRow row;
    row.estimator = proto.id();
    row.samples = samples.front();
    row.trials = config.trials;
    row.empirical_mse = m.mean;
    row.standard_error = standard_error(m, t_count);
    row.theory_mse = predicted_mse(proto, truth, row.samples);
    row.z_score = row.standard_error > 0.0
                      ? (row.empirical_mse - row.theory_mse) / row.standard_error
                      : 0.0;
    rows.push_back(row);
  }
  return rows;
}

void write_mse(std::ostream& out, const std::vector<MseRow>& rows) {
  out << "estimator,samples,trials,empirical_mse,standard_error,theory_mse,z_score\n";
  for (const auto& r : rows) {
    out << r.estimator << ',' << r.samples << ',' << r.trials << ','
        << format_number(r.empirical_mse) << ',' << format_number(r.standard_error) << ','
        << format_number(r.theory_mse) << ',' << format_number(r.z_score) << '\n';
  }
}

std::vector<ConfigSection> read_config(const std::string& path) {
  boost::property_tree::ptree tree;
  boost::property_tree::ini_parser::read_ini(path, tree);
  std::vector<ConfigSection> out;
  for (const auto& [name, section] : tree) {
    if (section.empty()) {
      throw std::invalid_argument(path + ": key '" + name + "' outside a section");
    }
    ConfigSection entry;
    entry.config.name = name;
    auto& c = entry.config;
    for (const auto& [key, node] : section) {
      const std::string value = node.get_value<std::string>();
      if (key == "command") {
        entry.command = std::string(trim(value));
      } else if (key == "game") {
        c.game = std::string(trim(value));
      } else if (key == "semivalue") {
        c.semivalue = std::string(trim(value));
      } else if (key == "estimators") {
        c.estimators = split_list(value);
      } else if (key == "trials") {
        c.trials = static_cast<int>(parse_integer(value));
      } else if (key == "seed") {
        c.seed = static_cast<std::uint64_t>(parse_integer(value));
      } else if (key == "budget") {
        c.budget = parse_integer(value);
      } else if (key == "budget_per_player") {
        c.budget_per_player = parse_integer(value);
      } else if (key == "checkpoints") {
        c.checkpoints = parse_numbers(value, ',');
      } else if (key == "gammas") {
        c.gammas = parse_numbers(value, ',');
      } else if (key == "epsilons") {
        c.epsilons = parse_numbers(value, ',');
      } else if (key == "out") {
        c.out = std::string(trim(value));
      } else if (key == "truth") {
        c.truth = parse_bool(value);
      } else if (key == "timing") {
        c.timing = parse_bool(value);
      } else if (key == "threads") {
        c.threads = static_cast<int>(parse_integer(value));
      } else {
        throw std::invalid_argument(path + ": unknown key '" + key + "' in [" + name + "]");
      }
    }
    if (entry.command.empty()) {
      throw std::invalid_argument(path + ": section [" + name + "] has no command");
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace semival
