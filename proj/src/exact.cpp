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

#include "semival/exact.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "semival/parse_util.hpp"

namespace semival {
namespace {

double norm2(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x * x;
  return total;
}

double shift_at(const std::function<double(int)>& f, int s) { return f ? f(s) : 0.0; }

void check_sizes(const UtilityOracle& oracle, const SemiValueSpec& spec, int cap) {
  if (oracle.players() != spec.n()) {
    throw std::invalid_argument("oracle and semi-value disagree on n");
  }
  if (spec.n() > cap) {
    throw std::invalid_argument("enumeration supports n <= " + std::to_string(cap) +
                                ", got " + std::to_string(spec.n()));
  }
}

// E[z_S] on q's support: sum_s (m_s - m_{s+1}), broadcast.
double mean_direction(const SemiValueSpec& spec, const SizeDistribution& q) {
  return spec.m(q.lo()) - spec.m(q.hi() + 1);
}

}  // namespace

ExactReport exact_semivalue(const UtilityOracle& oracle, const SemiValueSpec& spec,
                            std::optional<SizeDistribution> q) {
  check_sizes(oracle, spec, kMaxExactPlayers);
  const int n = spec.n();
  const std::size_t count = std::size_t{1} << n;

  std::vector<double> values(count);
  Coalition coalition(n);
  for (std::size_t mask = 0; mask < count; ++mask) {
    coalition.assign_mask(mask);
    values[mask] = oracle.evaluate(coalition);
  }

  ExactReport r;
  r.n = n;
  r.u_empty = values.front();
  r.u_full = values.back();
  auto& bs = r.by_size;
  bs.mean_u.assign(static_cast<std::size_t>(n + 1), 0.0);
  bs.mean_u2.assign(static_cast<std::size_t>(n + 1), 0.0);
  bs.mean_cross.assign(static_cast<std::size_t>(n + 1), 0.0);
  bs.total_sum.assign(static_cast<std::size_t>(n + 1), 0.0);
  bs.member_sum.assign(static_cast<std::size_t>(n + 1),
                       std::vector<double>(static_cast<std::size_t>(n), 0.0));

  // phi_i = sum_S u_S (p_s [i in S] - p_{s+1} [i not in S])
  //       = sum_{S ni i} u_S (p_s + p_{s+1}) - sum_S u_S p_{s+1}.
  std::vector<double> inside(static_cast<std::size_t>(n), 0.0);
  double outside = 0.0;
  for (std::size_t mask = 0; mask < count; ++mask) {
    const double u = values[mask];
    const int s = std::popcount(mask);
    const auto su = static_cast<std::size_t>(s);
    r.sup_norm = std::max(r.sup_norm, std::abs(u));
    bs.total_sum[su] += u;
    bs.mean_u2[su] += u * u;
    bs.mean_cross[su] += u * values[(count - 1) ^ mask];
    const double c_out = u * spec.p(s + 1);
    const double c_both = u * spec.p(s) + c_out;
    outside += c_out;
    auto& members = bs.member_sum[su];
    for (std::size_t bits = mask; bits; bits &= bits - 1) {
      const int i = __builtin_ctzll(bits);
      inside[static_cast<std::size_t>(i)] += c_both;
      members[static_cast<std::size_t>(i)] += u;
    }
  }
  for (int s = 0; s <= n; ++s) {
    const auto su = static_cast<std::size_t>(s);
    const double c = binomial(n, s);
    bs.mean_u[su] = bs.total_sum[su] / c;
    bs.mean_u2[su] /= c;
    bs.mean_cross[su] /= c;
  }

  r.phi.resize(static_cast<std::size_t>(n));
  r.varphi.resize(static_cast<std::size_t>(n));
  const double offset = spec.p(n) * r.u_full - spec.p(1) * r.u_empty;
  for (int i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    r.phi[iu] = inside[iu] - outside;
    r.varphi[iu] = r.phi[iu] - offset;
  }
  r.phi_norm2 = norm2(r.phi);
  r.varphi_norm2 = norm2(r.varphi);

  r.q = q ? *q : q_star(spec);
  const SizeDistribution qt = tilde_q(r.q, spec);
  r.gamma_star = expected_utility(r, r.q);
  r.second_moment = expected_square(r, r.q);
  r.tilde_second_moment = expected_square(r, qt);
  r.cross_moment = expected_cross(r, qt);
  return r;
}

double expected_utility(const ExactReport& report, const SizeDistribution& q) {
  double total = 0.0;
  for (int s = q.lo(); s <= q.hi(); ++s) {
    total += q.prob(s) * report.by_size.mean_u[static_cast<std::size_t>(s)];
  }
  return total;
}

double expected_square(const ExactReport& report, const SizeDistribution& q,
                       const std::function<double(int)>& shift) {
  double total = 0.0;
  for (int s = q.lo(); s <= q.hi(); ++s) {
    const auto su = static_cast<std::size_t>(s);
    const double f = shift_at(shift, s);
    total += q.prob(s) * (report.by_size.mean_u2[su] -
                          2.0 * f * report.by_size.mean_u[su] + f * f);
  }
  return total;
}

double expected_cross(const ExactReport& report, const SizeDistribution& q) {
  double total = 0.0;
  for (int s = q.lo(); s <= q.hi(); ++s) {
    total += q.prob(s) * report.by_size.mean_cross[static_cast<std::size_t>(s)];
  }
  return total;
}

double theoretical_mse(const ExactReport& report, const SemiValueSpec& spec,
                       const SizeDistribution& q, long long samples, bool paired,
                       double gamma) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int n = spec.n();
  const double d = dispersion(q, spec);
  const SizeDistribution qt = tilde_q(q, spec);
  const std::vector<double>& base =
      q.includes_endpoints() ? report.phi : report.varphi;
  if (paired) {
    if (!spec.symmetric() || !q.symmetric()) {
      throw std::invalid_argument("paired MSE needs symmetric spec and q");
    }
    const double sigma2 = expected_square(report, qt) - expected_cross(report, qt);
    return (n * d * sigma2 - 2.0 * norm2(base)) / static_cast<double>(samples);
  }
  const double ez = mean_direction(spec, q);
  double mean_norm2 = 0.0;
  for (double v : base) mean_norm2 += (v - gamma * ez) * (v - gamma * ez);
  const double second =
      expected_square(report, qt, [gamma](int) { return gamma; });
  return (n * d * second - mean_norm2) / static_cast<double>(samples);
}

std::vector<double> model_expectation(const ExactReport& report,
                                      const LinearTermModel& model) {
  const int n = report.n;
  const auto& bs = report.by_size;
  std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
  for (int s = model.q.lo(); s <= model.q.hi(); ++s) {
    const double qs = model.q.prob(s);
    if (qs == 0.0) continue;
    const auto su = static_cast<std::size_t>(s);
    const double c = binomial(n, s);
    const double f = shift_at(model.shift, s);
    const double a = model.z.member(s);
    const double b = model.z.nonmember(s);
    for (int i = 0; i < n; ++i) {
      const double in = bs.member_sum[su][static_cast<std::size_t>(i)];
      const double out = bs.total_sum[su] - in;
      mean[static_cast<std::size_t>(i)] +=
          qs * (a * (in / c - f * s / n) - b * (out / c - f * (n - s) / n));
    }
  }
  if (!model.offset.empty()) {
    for (int i = 0; i < n; ++i) {
      mean[static_cast<std::size_t>(i)] += model.offset[static_cast<std::size_t>(i)];
    }
  }
  return mean;
}

double model_mse(const ExactReport& report, const LinearTermModel& model,
                 long long samples, bool paired) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const int n = report.n;
  const auto& bs = report.by_size;
  const auto& q = model.q;
  const auto& z = model.z;

  const std::vector<double> mean = model_expectation(report, model);
  double bias2 = 0.0;
  double term_mean2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    const double off = model.offset.empty() ? 0.0 : model.offset[iu];
    bias2 += (mean[iu] - report.phi[iu]) * (mean[iu] - report.phi[iu]);
    term_mean2 += (mean[iu] - off) * (mean[iu] - off);
  }

  double single2 = 0.0;
  for (int s = q.lo(); s <= q.hi(); ++s) {
    const auto su = static_cast<std::size_t>(s);
    const double f = shift_at(model.shift, s);
    single2 += q.prob(s) * z.norm_squared(s) *
               (bs.mean_u2[su] - 2.0 * f * bs.mean_u[su] + f * f);
  }
  const double single_var = single2 - term_mean2;
  const auto t = static_cast<double>(samples);
  if (!paired) return single_var / t + bias2;

  if (!q.symmetric()) throw std::invalid_argument("paired MSE needs symmetric q");
  const auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-9 * std::max({std::abs(x), std::abs(y), 1e-300});
  };
  double pair2 = 0.0;
  for (int s = q.lo(); s <= q.hi(); ++s) {
    if (!close(z.member(n - s), z.nonmember(s)) ||
        !close(z.nonmember(n - s), z.member(s))) {
      throw std::invalid_argument("paired MSE needs z of the complement = -z");
    }
    const auto su = static_cast<std::size_t>(s);
    const auto cu = static_cast<std::size_t>(n - s);
    const double g = shift_at(model.shift, s) - shift_at(model.shift, n - s);
    const double diff2 = bs.mean_u2[su] + bs.mean_u2[cu] - 2.0 * bs.mean_cross[su];
    const double diff = bs.mean_u[su] - bs.mean_u[cu];
    pair2 += q.prob(s) * z.norm_squared(s) * (diff2 - 2.0 * g * diff + g * g);
  }
  const double pair_var = pair2 - 4.0 * term_mean2;
  const long long pairs = samples / 2;
  const long long singles = samples % 2;
  return (static_cast<double>(pairs) * pair_var +
          static_cast<double>(singles) * single_var) /
             (t * t) +
         bias2;
}

double gamma_star(const ExactReport& report) {
  return expected_utility(report, report.q);
}

double concentration_validity(double sigma2, double vector_bound) {
  if (!(sigma2 > 0.0) || !(vector_bound > 0.0)) {
    throw std::invalid_argument("sigma2 and vector bound must be positive");
  }
  return 3.0 * sigma2 / vector_bound;
}

double concentration_bound(long long samples, double epsilon, double sigma2,
                           double vector_bound) {
  const double limit = concentration_validity(sigma2, vector_bound);
  if (!(epsilon > 0.0) || epsilon > limit * (1.0 + 1e-12)) {
    throw std::domain_error("epsilon " + format_number(epsilon) +
                            " outside the bound's validity range (0, " +
                            format_number(limit) + "]");
  }
  return 2.0 * std::exp(-static_cast<double>(samples) * epsilon * epsilon /
                        (4.0 * sigma2));
}

std::vector<double> expected_single_sample(const SemiValueSpec& spec,
                                           const SizeDistribution& q,
                                           const UtilityOracle& oracle,
                                           const std::function<double(int)>& shift) {
  check_sizes(oracle, spec, kMaxExpectationPlayers);
  const int n = spec.n();
  const ZCoefficients z = z_coefficients(q, spec);
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  Coalition coalition(n);
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < count; ++mask) {
    const int s = std::popcount(mask);
    const double qs = q.prob(s);
    if (qs == 0.0) continue;
    coalition.assign_mask(mask);
    const double weight = qs / binomial(n, s) * (oracle.evaluate(coalition) -
                                                 shift_at(shift, s));
    const double a = weight * z.member(s);
    const double b = -weight * z.nonmember(s);
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] += (mask >> i) & 1U ? a : b;
    }
  }
  return out;
}

void write_report_csv(std::ostream& out, const ExactReport& r) {
  const auto row = [&out](const char* name, const std::vector<double>& v) {
    out << name;
    for (double x : v) out << ',' << format_number(x);
    out << '\n';
  };
  const auto scalar = [&out](const char* name, double v) {
    out << name << ',' << format_number(v) << '\n';
  };
  out << "field,value\n";
  out << "n," << r.n << '\n';
  out << "q," << r.q.id() << '\n';
  row("phi", r.phi);
  row("varphi", r.varphi);
  scalar("u_full", r.u_full);
  scalar("u_empty", r.u_empty);
  scalar("gamma_star", r.gamma_star);
  scalar("second_moment", r.second_moment);
  scalar("tilde_second_moment", r.tilde_second_moment);
  scalar("cross_moment", r.cross_moment);
  scalar("varphi_norm2", r.varphi_norm2);
  scalar("phi_norm2", r.phi_norm2);
  scalar("sup_norm", r.sup_norm);
}

}  // namespace semival
