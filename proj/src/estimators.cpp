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

#include "semival/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "semival/parse_util.hpp"

namespace semival {
namespace {

constexpr std::string_view kPairedSuffix = "+paired";

bool is_kernel(EstimatorKind kind) {
  return kind == EstimatorKind::kKernelVanilla ||
         kind == EstimatorKind::kKernelLeverage ||
         kind == EstimatorKind::kKernelModified;
}

SizeDistribution leverage_sizes(int n) {
  SizeDistribution q = uniform_sizes(n);
  return SizeDistribution(n, 1, n - 1, q.probs(), "leverage");
}

SizeDistribution sizes_for(const EstimatorConfig& config, const SemiValueSpec& spec) {
  switch (config.kind) {
    case EstimatorKind::kBase:
    case EstimatorKind::kGamma:
    case EstimatorKind::kAdalina:
    case EstimatorKind::kKernelModified:
      return q_star(spec);
    case EstimatorKind::kAdalinaAll:
    case EstimatorKind::kMsr:
      return q_msr(spec);
    case EstimatorKind::kKernelVanilla:
    case EstimatorKind::kShapIq:
      return q_shapiq(spec.n());
    case EstimatorKind::kKernelLeverage:
      return leverage_sizes(spec.n());
    case EstimatorKind::kAme:
      return binomial_sizes(spec.n(), config.w);
  }
  throw std::logic_error("unknown estimator kind");
}

}  // namespace

EstimatorConfig parse_estimator(std::string_view text) {
  EstimatorConfig config;
  text = trim(text);
  if (text.ends_with(kPairedSuffix)) {
    config.paired = true;
    text.remove_suffix(kPairedSuffix.size());
  }
  const auto [head, args] = split_head(text);
  const auto no_args = [&, head = head, args = args] {
    if (!args.empty()) {
      throw std::invalid_argument("estimator '" + std::string(head) +
                                  "' takes no arguments");
    }
  };
  if (head == "base") {
    no_args();
    config.kind = EstimatorKind::kBase;
  } else if (head == "gamma") {
    config.kind = EstimatorKind::kGamma;
    config.gamma = parse_number(args);
  } else if (head == "adalina") {
    no_args();
    config.kind = EstimatorKind::kAdalina;
  } else if (head == "adalina-all") {
    no_args();
    config.kind = EstimatorKind::kAdalinaAll;
  } else if (head == "kernel") {
    if (args == "vanilla") {
      config.kind = EstimatorKind::kKernelVanilla;
    } else if (args == "leverage") {
      config.kind = EstimatorKind::kKernelLeverage;
    } else if (args == "modified") {
      config.kind = EstimatorKind::kKernelModified;
    } else {
      throw std::invalid_argument("unknown kernel variant '" + std::string(args) + "'");
    }
  } else if (head == "shapiq") {
    no_args();
    config.kind = EstimatorKind::kShapIq;
  } else if (head == "ame") {
    config.kind = EstimatorKind::kAme;
    config.w = parse_number(args);
  } else if (head == "msr") {
    no_args();
    config.kind = EstimatorKind::kMsr;
  } else {
    throw std::invalid_argument("unknown estimator '" + std::string(text) + "'");
  }
  return config;
}

std::string estimator_id(const EstimatorConfig& config) {
  std::string id;
  switch (config.kind) {
    case EstimatorKind::kBase: id = "base"; break;
    case EstimatorKind::kGamma: id = "gamma:" + format_number(config.gamma); break;
    case EstimatorKind::kAdalina: id = "adalina"; break;
    case EstimatorKind::kAdalinaAll: id = "adalina-all"; break;
    case EstimatorKind::kKernelVanilla: id = "kernel:vanilla"; break;
    case EstimatorKind::kKernelLeverage: id = "kernel:leverage"; break;
    case EstimatorKind::kKernelModified: id = "kernel:modified"; break;
    case EstimatorKind::kShapIq: id = "shapiq"; break;
    case EstimatorKind::kAme: id = "ame:" + format_number(config.w); break;
    case EstimatorKind::kMsr: id = "msr"; break;
  }
  if (config.shift) id += "+shift";
  if (config.paired) id += kPairedSuffix;
  return id;
}

SizeDistribution binomial_sizes(int n, double w) {
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("need 0 < w < 1");
  std::vector<double> weights(static_cast<std::size_t>(n + 1));
  for (int s = 0; s <= n; ++s) {
    weights[static_cast<std::size_t>(s)] =
        std::exp(log_binomial(n, s) + s * std::log(w) + (n - s) * std::log1p(-w));
  }
  return SizeDistribution(n, 0, n, std::move(weights), "bernoulli:" + format_number(w));
}

ZCoefficients ame_coefficients(int n, double w) {
  ZCoefficients z;
  z.n = n;
  z.lo = 0;
  z.hi = n;
  z.a.assign(static_cast<std::size_t>(n + 1), 1.0 / w);
  z.b.assign(static_cast<std::size_t>(n + 1), 1.0 / (1.0 - w));
  return z;
}

Estimator::Estimator(EstimatorConfig config, SemiValueSpec spec)
    : config_(std::move(config)), spec_(std::move(spec)) {
  const int n = spec_.n();
  if (n < 2) throw std::invalid_argument("estimators need at least 2 players");
  if (is_kernel(config_.kind) && !spec_.is_shapley()) {
    throw std::invalid_argument("kernelSHAP variants estimate the Shapley value only");
  }
  if (!is_kernel(config_.kind) && config_.shift) {
    throw std::invalid_argument("a shift function applies to kernel variants only");
  }
  if (config_.kind == EstimatorKind::kAme) {
    if (spec_.family() != Family::kWeightedBanzhaf ||
        std::abs(spec_.w() - config_.w) > 1e-12) {
      throw std::invalid_argument("ame:" + format_number(config_.w) +
                                  " needs the matching weighted Banzhaf value, got " +
                                  spec_.id());
    }
    if (config_.paired && config_.w != 0.5) {
      throw std::invalid_argument("paired AME needs w = 1/2");
    }
  }
  q_ = sizes_for(config_, spec_);
  z_ = config_.kind == EstimatorKind::kAme ? ame_coefficients(n, config_.w)
                                           : z_coefficients(q_, spec_);
  if (config_.paired && (!q_.symmetric() || !spec_.symmetric())) {
    throw std::invalid_argument("paired sampling needs a symmetric semi-value");
  }
  id_ = estimator_id(config_);
  tracks_shift_ = is_kernel(config_.kind) &&
                  (config_.shift || config_.kind != EstimatorKind::kKernelVanilla);
  phi_hat_.assign(static_cast<std::size_t>(n), 0.0);
  v_hat_.assign(static_cast<std::size_t>(n), 0.0);
  if (tracks_shift_) shift_hat_.assign(static_cast<std::size_t>(n), 0.0);
}

bool Estimator::needs_endpoints() const {
  switch (config_.kind) {
    case EstimatorKind::kAdalinaAll:
    case EstimatorKind::kMsr:
    case EstimatorKind::kAme:
      return false;
    default:
      return true;
  }
}

void Estimator::set_endpoints(double u_full, double u_empty) {
  u_full_ = u_full;
  u_empty_ = u_empty;
}

// g(s) in the tracked mean of g(s) z: the user shift, or s itself when the
// coefficient lambda only becomes known with the endpoints.
double Estimator::shift_weight(int s) const {
  return config_.shift ? config_.shift(s) : static_cast<double>(s);
}

void Estimator::ingest(const Coalition& coalition, double u) {
  const int n = spec_.n();
  const int s = coalition.size();
  if (coalition.players() != n) throw std::invalid_argument("coalition has wrong n");
  if (s < q_.lo() || s > q_.hi()) {
    throw std::invalid_argument("coalition size " + std::to_string(s) +
                                " is outside the sampling support");
  }
  ++t_;
  const double keep = 1.0 - 1.0 / static_cast<double>(t_);
  const double step = 1.0 / static_cast<double>(t_);
  const double a = z_.member(s);
  const double b = -z_.nonmember(s);
  const double g = tracks_shift_ ? shift_weight(s) : 0.0;
  for (int i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const double zi = coalition.contains(i) ? a : b;
    phi_hat_[iu] = keep * phi_hat_[iu] + step * u * zi;
    v_hat_[iu] = keep * v_hat_[iu] + step * zi;
    if (tracks_shift_) shift_hat_[iu] = keep * shift_hat_[iu] + step * g * zi;
  }
  gamma_hat_ = keep * gamma_hat_ + step * u;

  if (!sup_bound_) return;
  const double c = *sup_bound_;
  if (config_.kind == EstimatorKind::kAme) {
    const double lo = std::min(config_.w, 1.0 - config_.w);
    if (u * u * z_.norm_squared(s) > n * c * c / (lo * lo) * (1.0 + 1e-12)) {
      ++violations_;
    }
  } else if (is_kernel(config_.kind) && u_full_) {
    double r = u;
    if (config_.shift) {
      r -= config_.shift(s);
    } else if (config_.kind != EstimatorKind::kKernelVanilla) {
      r -= (*u_full_ - *u_empty_) / n * s;
    }
    if (std::abs(r) * std::sqrt(z_.norm_squared(s)) > 6.0 * n * c * (1.0 + 1e-12)) {
      ++violations_;
    }
  }
}

Estimate Estimator::finalize() const {
  if (t_ == 0) throw std::logic_error("finalize before any sample was ingested");
  if (needs_endpoints() && !u_full_) {
    throw std::logic_error(id_ + " needs u_[n] and u_empty at finalize");
  }
  const int n = spec_.n();
  Estimate out;
  out.phi_hat = phi_hat_;
  out.samples = t_;
  out.estimator_id = id_;
  out.q_id = q_.id();
  out.paired = config_.paired;
  out.bound_violations = violations_;

  const double m1 = spec_.m(1);
  const double mn = spec_.m(n);
  double scale = 0.0;   // coefficient on v_hat
  double offset = 0.0;  // broadcast constant
  switch (config_.kind) {
    case EstimatorKind::kBase:
      offset = mn * *u_full_ - m1 * *u_empty_;
      break;
    case EstimatorKind::kGamma:
      scale = config_.gamma;
      offset = mn * (*u_full_ - config_.gamma) - m1 * (*u_empty_ - config_.gamma);
      break;
    case EstimatorKind::kAdalina:
      scale = gamma_hat_;
      offset = mn * (*u_full_ - gamma_hat_) - m1 * (*u_empty_ - gamma_hat_);
      out.gamma_hat = gamma_hat_;
      if (std::abs(m1 - mn) > 1e-12 * std::max(m1, mn)) {
        out.warnings.push_back("m_1 != m_n: the adalina MSE guarantee does not apply");
      }
      break;
    case EstimatorKind::kAdalinaAll:
      scale = gamma_hat_;
      out.gamma_hat = gamma_hat_;
      break;
    case EstimatorKind::kKernelVanilla:
    case EstimatorKind::kKernelLeverage:
    case EstimatorKind::kKernelModified:
      offset = (*u_full_ - *u_empty_) / n;
      break;
    case EstimatorKind::kShapIq:
      scale = *u_empty_;
      offset = mn * (*u_full_ - *u_empty_);
      break;
    case EstimatorKind::kAme:
    case EstimatorKind::kMsr:
      break;
  }
  double shift_scale = 0.0;
  if (tracks_shift_) {
    shift_scale = config_.shift ? 1.0 : (*u_full_ - *u_empty_) / n;
  }
  for (int i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    out.phi_hat[iu] += offset - scale * v_hat_[iu];
    if (tracks_shift_) out.phi_hat[iu] -= shift_scale * shift_hat_[iu];
  }
  return out;
}

Estimate Estimator::finalize(double u_full, double u_empty) {
  set_endpoints(u_full, u_empty);
  return finalize();
}

std::unique_ptr<CoalitionSource> Estimator::make_source(RandomSource rng) const {
  if (config_.kind == EstimatorKind::kAme) {
    return std::make_unique<BernoulliStream>(spec_.n(), config_.w, rng, config_.paired);
  }
  return std::make_unique<CoalitionStream>(q_, rng, config_.paired);
}

double Estimator::probability(const Coalition& coalition) const {
  const int n = spec_.n();
  const int s = coalition.size();
  if (config_.kind == EstimatorKind::kAme) {
    return std::pow(config_.w, s) * std::pow(1.0 - config_.w, n - s);
  }
  return q_.prob(s) / binomial(n, s);
}

std::size_t Estimator::state_size() const {
  return phi_hat_.size() + v_hat_.size() + shift_hat_.size() + 1;
}

LinearTermModel linear_law(const Estimator& estimator, double u_full, double u_empty) {
  const auto& config = estimator.config();
  const auto& spec = estimator.spec();
  const int n = spec.n();
  LinearTermModel model{estimator.q(), estimator.z(), {}, {}};
  const double m1 = spec.m(1);
  const double mn = spec.m(n);
  double offset = 0.0;
  switch (config.kind) {
    case EstimatorKind::kBase:
      offset = mn * u_full - m1 * u_empty;
      break;
    case EstimatorKind::kGamma: {
      const double g = config.gamma;
      model.shift = [g](int) { return g; };
      offset = mn * (u_full - g) - m1 * (u_empty - g);
      break;
    }
    case EstimatorKind::kKernelVanilla:
    case EstimatorKind::kKernelLeverage:
    case EstimatorKind::kKernelModified:
      if (config.shift) {
        model.shift = config.shift;
      } else if (config.kind != EstimatorKind::kKernelVanilla) {
        const double lambda = (u_full - u_empty) / n;
        model.shift = [lambda](int s) { return lambda * s; };
      }
      offset = (u_full - u_empty) / n;
      break;
    case EstimatorKind::kShapIq:
      model.shift = [u_empty](int) { return u_empty; };
      offset = mn * (u_full - u_empty);
      break;
    case EstimatorKind::kAme:
    case EstimatorKind::kMsr:
      break;
    case EstimatorKind::kAdalina:
    case EstimatorKind::kAdalinaAll:
      throw std::invalid_argument(
          "adaptive estimators have no fixed linear law; use the gamma-fixed law");
  }
  if (offset != 0.0) model.offset.assign(static_cast<std::size_t>(n), offset);
  return model;
}

double control_variate_optimum(const Estimator& estimator, const ExactReport& report) {
  return expected_utility(report, estimator.q());
}

Estimate run_estimator(const EstimatorConfig& config, const SemiValueSpec& spec,
                       const UtilityOracle& oracle, std::uint64_t seed,
                       long long budget, const std::vector<long long>& checkpoints,
                       const CheckpointFn& on_checkpoint) {
  if (oracle.players() != spec.n()) {
    throw std::invalid_argument("oracle and semi-value disagree on n");
  }
  UtilityOracle counted = counting_wrapper(oracle);
  Estimator estimator(config, spec);
  if (const auto c = oracle.sup_bound()) estimator.set_sup_bound(*c);
  const long long reserved = estimator.needs_endpoints() ? 2 : 0;
  if (budget <= reserved) {
    throw std::invalid_argument("budget " + std::to_string(budget) +
                                " leaves no samples after endpoint queries");
  }
  for (std::size_t k = 0; k < checkpoints.size(); ++k) {
    if (checkpoints[k] <= reserved || checkpoints[k] > budget ||
        (k > 0 && checkpoints[k] <= checkpoints[k - 1])) {
      throw std::invalid_argument("checkpoints must be increasing within (" +
                                  std::to_string(reserved) + ", budget]");
    }
  }
  if (reserved) {
    const int n = spec.n();
    const double u_full = counted.evaluate(Coalition::full(n));
    const double u_empty = counted.evaluate(Coalition(n));
    estimator.set_endpoints(u_full, u_empty);
  }
  auto source = estimator.make_source(RandomSource(seed));
  Coalition coalition(spec.n());
  std::size_t next_checkpoint = 0;
  const auto snapshot = [&] {
    Estimate e = estimator.finalize();
    e.queries_used = counted.query_count();
    e.seed = seed;
    if (config.paired && e.samples % 2 == 1) {
      e.warnings.push_back("odd sample count: last draw unpaired");
    }
    return e;
  };
  for (long long used = reserved; used < budget; ++used) {
    source->next(coalition);
    estimator.ingest(coalition, counted.evaluate(coalition));
    if (next_checkpoint < checkpoints.size() &&
        static_cast<long long>(counted.query_count()) == checkpoints[next_checkpoint]) {
      ++next_checkpoint;
      if (on_checkpoint) on_checkpoint(snapshot());
    }
  }
  return snapshot();
}

}  // namespace semival
