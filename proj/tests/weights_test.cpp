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

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace semival {
namespace {

// Composite Simpson rule; exact for the polynomial integrands used below.
double simpson(const std::function<double(double)>& f, int intervals) {
  const double h = 1.0 / intervals;
  double total = f(0.0) + f(1.0);
  for (int k = 1; k < intervals; ++k) total += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return total * h / 3.0;
}

double choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<SemiValueSpec> family_sample(int n) {
  return {SemiValueSpec::shapley(n), SemiValueSpec::banzhaf(n),
          SemiValueSpec::weighted_banzhaf(n, 0.8), SemiValueSpec::beta_shapley(n, 2, 2),
          SemiValueSpec::beta_shapley(n, 4, 1), SemiValueSpec::beta_shapley(n, 0.5, 3)};
}

TEST(SemiValueSpec, ShapleyHasFlatM) {
  const auto spec = SemiValueSpec::shapley(4);
  for (int s = 1; s <= 4; ++s) {
    EXPECT_NEAR(spec.m(s), 0.25, 1e-15);
    EXPECT_NEAR(spec.p(s), 1.0 / (4 * choose(3, s - 1)), 1e-15);
  }
  EXPECT_TRUE(spec.symmetric());
  EXPECT_TRUE(spec.is_shapley());
  EXPECT_EQ(spec.m(0), 0.0);
  EXPECT_EQ(spec.m(5), 0.0);
}

TEST(SemiValueSpec, BetaOneOneIsShapley) {
  const auto beta = SemiValueSpec::beta_shapley(7, 1, 1);
  const auto shapley = SemiValueSpec::shapley(7);
  for (int s = 1; s <= 7; ++s) EXPECT_DOUBLE_EQ(beta.p(s), shapley.p(s));
  EXPECT_TRUE(beta.is_shapley());
}

TEST(SemiValueSpec, BanzhafHalfOnThreePlayers) {
  const auto spec = SemiValueSpec::banzhaf(3);
  for (int s = 1; s <= 3; ++s) EXPECT_NEAR(spec.p(s), 0.25, 1e-15);
  EXPECT_NEAR(spec.m(1), 0.25, 1e-15);
  EXPECT_NEAR(spec.m(2), 0.5, 1e-15);
  EXPECT_NEAR(spec.m(3), 0.25, 1e-15);
}

TEST(SemiValueSpec, BetaTwoOneMatchesQuadrature) {
  // p_s is the integral of t^{s-1} (1-t)^{n-s} against the Beta measure with
  // density t^{beta-1} (1-t)^{alpha-1} / B(alpha, beta); here 2 (1 - t).
  const int n = 3;
  const auto spec = SemiValueSpec::beta_shapley(n, 2, 1);
  for (int s = 1; s <= n; ++s) {
    const double p = simpson(
        [&](double t) { return std::pow(t, s - 1) * std::pow(1 - t, n - s) * 2 * (1 - t); },
        64);
    EXPECT_NEAR(spec.p(s), p, 1e-13) << "s=" << s;
    EXPECT_NEAR(spec.m(s), choose(n - 1, s - 1) * p, 1e-13);
  }
  EXPECT_FALSE(spec.symmetric());
}

TEST(SemiValueSpec, WeightsSumToOne) {
  for (int n : {2, 3, 10, 64, 512}) {
    for (const auto& spec : family_sample(n)) {
      const auto& m = spec.m_vector();
      EXPECT_NEAR(std::accumulate(m.begin(), m.end(), 0.0), 1.0, 1e-10) << spec.id();
      for (int s = 1; s <= n; ++s) {
        EXPECT_GE(spec.p(s), 0.0);
        if (n <= 60 && spec.p(s) > 0) {
          EXPECT_NEAR(spec.m(s) / (choose(n - 1, s - 1) * spec.p(s)), 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(SemiValueSpec, SymmetryFlag) {
  EXPECT_TRUE(SemiValueSpec::banzhaf(9).symmetric());
  EXPECT_TRUE(SemiValueSpec::beta_shapley(9, 3, 3).symmetric());
  EXPECT_FALSE(SemiValueSpec::weighted_banzhaf(9, 0.7).symmetric());
  EXPECT_FALSE(SemiValueSpec::beta_shapley(9, 2, 1).symmetric());
}

TEST(SemiValueSpec, RejectsBadParameters) {
  EXPECT_THROW(SemiValueSpec::shapley(1), std::invalid_argument);
  EXPECT_THROW(SemiValueSpec::beta_shapley(5, 0, 1), std::invalid_argument);
  EXPECT_THROW(SemiValueSpec::beta_shapley(5, 1, -2), std::invalid_argument);
  EXPECT_THROW(SemiValueSpec::weighted_banzhaf(5, 0.0), std::invalid_argument);
  EXPECT_THROW(SemiValueSpec::weighted_banzhaf(5, 1.0), std::invalid_argument);
  EXPECT_THROW(SemiValueSpec::explicit_p({0.5, -0.1, 0.6}), std::invalid_argument);
  EXPECT_THROW(SemiValueSpec::explicit_p({0.5, 0.5, 0.5}), std::invalid_argument);
}

TEST(SemiValueSpec, ExplicitRenormalizesWithinTolerance) {
  const auto spec = SemiValueSpec::explicit_p({0.25 * (1 + 5e-9), 0.25, 0.25});
  const auto& m = spec.m_vector();
  EXPECT_NEAR(std::accumulate(m.begin(), m.end(), 0.0), 1.0, 1e-15);
}

TEST(SemiValueSpec, ParsesGrammar) {
  EXPECT_EQ(parse_semivalue("shapley", 5).id(), "shapley");
  EXPECT_EQ(parse_semivalue("beta:2,2", 5).id(), "beta:2,2");
  EXPECT_EQ(parse_semivalue("banzhaf:0.8", 5).id(), "banzhaf:0.8");
  EXPECT_DOUBLE_EQ(parse_semivalue("banzhaf:0.8", 5).w(), 0.8);
  EXPECT_THROW(parse_semivalue("owen", 5), std::invalid_argument);
  EXPECT_THROW(parse_semivalue("beta:1", 5), std::invalid_argument);

  const std::string path = ::testing::TempDir() + "/p.txt";
  std::ofstream(path) << "0.25 0.25\n0.25\n";
  const auto spec = parse_semivalue("explicit:@" + path, 3);
  EXPECT_EQ(spec.family(), Family::kExplicit);
  EXPECT_NEAR(spec.m(2), 0.5, 1e-15);
  EXPECT_THROW(parse_semivalue("explicit:@" + path, 4), std::invalid_argument);
}

TEST(SizeDistribution, NormalizesAndValidates) {
  SizeDistribution q(5, 1, 4, {1, 1, 2, 0});
  EXPECT_DOUBLE_EQ(q.prob(3), 0.5);
  EXPECT_EQ(q.prob(0), 0.0);
  EXPECT_EQ(q.prob(4), 0.0);
  EXPECT_FALSE(q.symmetric());
  EXPECT_THROW(SizeDistribution(5, 1, 4, {1, -1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(SizeDistribution(5, 1, 4, {0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(SizeDistribution(5, 1, 4, {1, 1}), std::invalid_argument);
}

TEST(QStar, ShapleyIsInverseRootSizeProduct) {
  const int n = 11;
  const auto q = q_star(SemiValueSpec::shapley(n));
  double total = 0.0;
  for (int s = 1; s < n; ++s) total += 1.0 / std::sqrt(s * (n - s));
  for (int s = 1; s < n; ++s) {
    EXPECT_NEAR(q.prob(s), 1.0 / std::sqrt(s * (n - s)) / total, 1e-15);
  }
  EXPECT_EQ(q.lo(), 1);
  EXPECT_EQ(q.hi(), n - 1);
}

TEST(QStar, SymmetricSpecsGiveSymmetricQ) {
  for (const auto& spec : {SemiValueSpec::banzhaf(12), SemiValueSpec::beta_shapley(12, 3, 3)}) {
    const auto q = q_star(spec);
    EXPECT_TRUE(q.symmetric());
    for (int s = 1; s < 12; ++s) EXPECT_NEAR(q.prob(s), q.prob(12 - s), 1e-15);
  }
}

TEST(QStar, TwoPlayers) {
  const auto spec = SemiValueSpec::shapley(2);
  EXPECT_DOUBLE_EQ(q_star(spec).prob(1), 1.0);
  EXPECT_NEAR(optimal_dispersion(spec), 1.0, 1e-15);
  EXPECT_NEAR(dispersion(q_star(spec), spec), 1.0, 1e-15);
}

TEST(Dispersion, UniformShapleyClosedForm) {
  const int n = 9;
  const auto spec = SemiValueSpec::shapley(n);
  double sum = 0.0;
  for (int s = 1; s < n; ++s) sum += 1.0 / s + 1.0 / (n - s);
  const double d = dispersion(uniform_sizes(n), spec);
  EXPECT_NEAR(d, (n - 1.0) / n * sum, 1e-12);
  EXPECT_GT(d, optimal_dispersion(spec));
}

TEST(Dispersion, PerturbationIncreasesIt) {
  std::mt19937_64 rng(7);
  for (int n : {6, 40}) {
    for (const auto& spec : family_sample(n)) {
      const auto q = q_star(spec);
      const double d_star = optimal_dispersion(spec);
      EXPECT_NEAR(dispersion(q, spec) / d_star, 1.0, 1e-12);
      std::uniform_int_distribution<int> pick(0, n - 2);
      for (int trial = 0; trial < 10; ++trial) {
        auto p = q.probs();
        const int a = pick(rng);
        int b = pick(rng);
        if (b == a) b = (a + 1) % (n - 1);
        const double moved = 0.1 * p[static_cast<std::size_t>(a)];
        p[static_cast<std::size_t>(a)] -= moved;
        p[static_cast<std::size_t>(b)] += moved;
        EXPECT_GT(dispersion(SizeDistribution(n, 1, n - 1, p), spec), d_star) << spec.id();
      }
    }
  }
}

TEST(Dispersion, ZeroProbabilityOnWeightedSizeThrows) {
  const auto spec = SemiValueSpec::shapley(4);
  EXPECT_THROW(dispersion(SizeDistribution(4, 1, 3, {1, 0, 1}), spec), std::domain_error);
}

TEST(TildeQ, FixedPointAtQStar) {
  for (const auto& spec : family_sample(20)) {
    const auto q = q_star(spec);
    const auto qt = tilde_q(q, spec);
    for (int s = 1; s < 20; ++s) EXPECT_NEAR(qt.prob(s), q.prob(s), 1e-12) << spec.id();
  }
}

TEST(TildeQ, UniformShapley) {
  const int n = 7;
  const auto qt = tilde_q(uniform_sizes(n), SemiValueSpec::shapley(n));
  double total = 0.0;
  for (int s = 1; s < n; ++s) total += 1.0 / s + 1.0 / (n - s);
  for (int s = 1; s < n; ++s) {
    EXPECT_NEAR(qt.prob(s), (1.0 / s + 1.0 / (n - s)) / total, 1e-15);
  }
}

TEST(TildeQ, ShapIqOnShapleyIsUniform) {
  // (n / q_s) (1/s + 1/(n-s)) / n^2 with q_s proportional to 1/(s(n-s)) is
  // the same for every s.
  const auto qt = tilde_q(q_shapiq(6), SemiValueSpec::shapley(6));
  for (int s = 1; s < 6; ++s) EXPECT_NEAR(qt.prob(s), 0.2, 1e-15);
}

TEST(QMsr, BanzhafHalfThreePlayers) {
  const auto spec = SemiValueSpec::banzhaf(3);
  const auto q = q_msr(spec);
  EXPECT_EQ(q.lo(), 0);
  EXPECT_EQ(q.hi(), 3);
  const double expected[] = {0.125, 0.375, 0.375, 0.125};
  for (int s = 0; s <= 3; ++s) EXPECT_NEAR(q.prob(s), expected[s], 1e-15);
  EXPECT_NEAR(msr_dispersion(spec), 4.0, 1e-14);
}

TEST(QMsr, InteriorMatchesQStar) {
  for (const auto& spec : family_sample(15)) {
    const auto msr = q_msr(spec);
    const auto star = q_star(spec);
    const double interior = 1.0 - msr.prob(0) - msr.prob(15);
    for (int s = 1; s < 15; ++s) {
      EXPECT_NEAR(msr.prob(s) / interior, star.prob(s), 1e-13) << spec.id();
    }
  }
}

TEST(QMsr, RootDispersionSplits) {
  for (int n : {8, 64, 512}) {
    for (const auto& spec : family_sample(n)) {
      const double lhs = std::sqrt(msr_dispersion(spec));
      const double rhs = spec.m(1) + std::sqrt(optimal_dispersion(spec)) + spec.m(n);
      EXPECT_NEAR(lhs, rhs, 1e-10 * rhs) << spec.id() << " n=" << n;
    }
  }
}

TEST(ZCoefficients, ConstantNormUnderQStar) {
  for (int n : {5, 50, 308}) {
    for (const auto& spec : family_sample(n)) {
      const auto z = z_coefficients(q_star(spec), spec);
      const double target = n * optimal_dispersion(spec);
      for (int s = 1; s < n; ++s) {
        EXPECT_NEAR(z.norm_squared(s) / target, 1.0, 1e-9) << spec.id() << " s=" << s;
      }
    }
  }
}

TEST(ZCoefficients, ConstantNormUnderMsrIncludingEndpoints) {
  for (int n : {5, 50, 308}) {
    for (const auto& spec : family_sample(n)) {
      const auto q = q_msr(spec);
      const auto z = z_coefficients(q, spec);
      const double target = n * msr_dispersion(spec);
      for (int s = 0; s <= n; ++s) {
        EXPECT_NEAR(z.norm_squared(s) / target, 1.0, 1e-9) << spec.id() << " s=" << s;
      }
      EXPECT_NEAR(z.nonmember(0), spec.m(1) / q.prob(0), 1e-12 * z.nonmember(0));
      EXPECT_NEAR(z.member(n), spec.m(n) / q.prob(n), 1e-12 * z.member(n));
    }
  }
}

TEST(ZCoefficients, ShapleyFourPlayersMiddleSize) {
  const auto spec = SemiValueSpec::shapley(4);
  const auto q = q_star(spec);
  const auto z = z_coefficients(q, spec);
  EXPECT_NEAR(z.member(2), 4 * 0.25 / (q.prob(2) * 2), 1e-15);
  EXPECT_NEAR(z.nonmember(2), 4 * 0.25 / (q.prob(2) * 2), 1e-15);
  EXPECT_NEAR(z.norm_squared(2), 4 * optimal_dispersion(spec), 1e-12);
}

TEST(ZCoefficients, VanillaKernelWeights) {
  const int n = 10;
  const double h = harmonic(n - 1);
  const auto z = z_coefficients(q_shapiq(n), SemiValueSpec::shapley(n));
  for (int s = 1; s < n; ++s) {
    EXPECT_NEAR(z.member(s), 2 * h / n * (n - s), 1e-12);
    EXPECT_NEAR(z.nonmember(s), 2 * h / n * s, 1e-12);
  }
}

TEST(OptimalDispersion, StaysBoundedInN) {
  for (int k = 0; k < 4; ++k) {
    const auto small = family_sample(8)[static_cast<std::size_t>(k)];
    const auto large = family_sample(512)[static_cast<std::size_t>(k)];
    EXPECT_LE(optimal_dispersion(large), 2 * optimal_dispersion(small) + 1) << small.id();
  }
}

TEST(Helpers, BinomialAndHarmonic) {
  EXPECT_EQ(binomial(10, 3), 120.0);
  EXPECT_EQ(binomial(60, 30), 118264581564861424.0);
  EXPECT_EQ(binomial(5, 7), 0.0);
  EXPECT_NEAR(harmonic(4), 25.0 / 12, 1e-15);
  EXPECT_NEAR(std::exp(log_binomial(100, 50)) / 1.0089134454556417e29, 1.0, 1e-12);
}

}  // namespace
}  // namespace semival
