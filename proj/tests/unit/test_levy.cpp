#include "invsub/levy.hpp"
#include "invsub/numeric.hpp"
#include "invsub/tools/oracle.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace invsub;
using namespace invsub::levy;

TEST(Phi, PureDrift) {
  EXPECT_NEAR(phi_by_quadrature(1.0, [](double) { return 0.0; }, 0.5, 3.0), 3.0, 1e-12);
  auto m = LevyModel::stable(0.5);
  m.drift = 1.0;
  EXPECT_NEAR(eval_phi(m, 3.0), 3.0 + std::sqrt(3.0), 1e-12);
}

TEST(Phi, StableClosedFormAgainstQuadrature) {
  const double a = 0.5, lambda = 2.0;
  const auto m = LevyModel::stable(a);
  EXPECT_NEAR(eval_phi(m, lambda), std::sqrt(2.0), 1e-12);
  auto density = [a](double s) { return a / std::tgamma(1.0 - a) * std::pow(s, -a - 1.0); };
  EXPECT_NEAR(phi_by_quadrature(0.0, density, a, lambda), std::sqrt(2.0), 1e-8);
}

TEST(Phi, TemperedAgainstQuadrature) {
  const auto m = LevyModel::tempered(0.75, 1.0, 1.0, 2.0);
  auto density = [](double s) {
    return s <= 2.0 ? 0.75 / std::tgamma(0.25) * std::exp(-s) * std::pow(s, -1.75) : 0.0;
  };
  for (double lambda : {0.1, 1.0, 7.0}) EXPECT_NEAR(eval_phi(m, lambda), phi_by_quadrature(0.0, density, 0.75, lambda), 1e-8);
}

TEST(Phi, ExampleMeasureWithExplicitExponent) {
  const double a = 0.4, b = 1.3;
  auto density = [&](double t) {
    return std::sin(a * M_PI) * std::tgamma(1.0 - a) * std::exp(-b * t) * std::pow(t, a - 2.0) * (b * t + 1.0 - a) /
           M_PI;
  };
  for (double lambda : {0.5, 2.0, 10.0})
    EXPECT_NEAR(phi_by_quadrature(0.0, density, 1.0 - a, lambda), lambda / std::pow(lambda + b, a), 1e-7);
}

TEST(TailNu, StableTailAtOne) {
  EXPECT_NEAR(tail_nu(LevyModel::stable(0.5), 1.0), 1.0 / std::tgamma(0.5), 1e-12);
}

TEST(TailNu, NoMassBeyondTruncation) {
  const auto m = LevyModel::tempered(0.6, 0.0, 1.0, 1.5);
  EXPECT_EQ(tail_nu(m, 1.5), 0.0);
  EXPECT_EQ(tail_nu(m, 3.0), 0.0);
}

TEST(TailNu, InfiniteAtZero) { EXPECT_TRUE(std::isinf(tail_nu(LevyModel::stable(0.3), 0.0))); }

TEST(SampleSv, ParetoQuantile) {
  EXPECT_NEAR(quantile_Sv(LevyModel::stable(0.5), 1.0, 0.75), 16.0, 1e-12);
}

TEST(SampleSv, QuantileAtZeroIsLeftEndpoint) {
  for (const auto& m : {LevyModel::stable(0.5), LevyModel::tempered(0.75, 1.0), LevyModel::tempered(0.3, 0.0, 1.0, 4.0)})
    EXPECT_NEAR(quantile_Sv(m, 0.7, 1e-14), 0.7, 1e-9);
}

TEST(SampleSv, DrawsLieAboveV) {
  auto m = LevyModel::tempered(0.6, 2.0, 1.0, 3.0);
  m.zeta = FiniteMeasure::pareto5(1.0);
  Rng rng = make_stream(3, 0);
  for (int i = 0; i < 20000; ++i) EXPECT_GE(sample_Sv(m, 0.4, rng), 0.4);
}

TEST(SampleSv, TemperingAcceptanceMatchesTailRatio) {
  const auto m = LevyModel::tempered(0.75, 1.0);
  const double v = 0.5;
  Rng rng = make_stream(11, 0);
  Counters c;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) sample_Sv(m, v, rng, &c);
  const double proposals = static_cast<double>(n + c.rejections);
  const double rate = static_cast<double>(n) / proposals;
  const double expected = stable_segment_tail(0.75, 1.0, 1.0, v, kInf) / stable_segment_tail(0.75, 1.0, 0.0, v, kInf);
  EXPECT_NEAR(rate, expected, 4.0 * std::sqrt(expected * (1.0 - expected) / proposals));
}

TEST(SampleSv, KsAgainstQuantileFunction) {
  const auto m = LevyModel::tempered(0.75, 1.0, 1.0, 2.0);
  const double v = 0.3;
  auto x = test::draws(5000, 5, [&](Rng& rng) { return sample_Sv(m, v, rng); });
  auto cdf = [&](double s) { return 1.0 - tail_nu(m, s) / tail_nu(m, v); };
  EXPECT_GT(stats::ks_one_sample(x, cdf).p_value, 0.01);
}

TEST(Decompose, AtTruncationLevelOnlyZetaRemains) {
  auto m = LevyModel::tempered(0.5, 0.0, 1.0, 2.0);
  m.zeta = FiniteMeasure::pareto5(2.0);
  const auto d = decompose_at_level(m, 2.0);
  EXPECT_NEAR(d.upsilon, m.zeta.total_mass(), 1e-12);
  EXPECT_NEAR(d.zeta_tilde.total_mass(), 0.5, 1e-12);
}

TEST(Decompose, StableTailMassAtOne) {
  const auto d = decompose_at_level(LevyModel::stable(0.5), 1.0);
  EXPECT_NEAR(d.upsilon, 1.0 / std::tgamma(0.5), 1e-12);
  EXPECT_EQ(d.level, 1.0);
}

TEST(Decompose, PowerLawSegmentQuantile) {
  const double a = 0.5, t = 1.0, r = 4.0;
  const auto d = decompose_at_level(LevyModel::tempered(a, 0.0, 1.0, r), t);
  for (double u : {0.1, 0.5, 0.9}) {
    const double lo = std::pow(t, -a), hi = std::pow(r, -a);
    EXPECT_NEAR(d.zeta_tilde.inverse_cdf(u), std::pow(lo - u * (lo - hi), -1.0 / a), 1e-10);
  }
}

TEST(MittagLeffler, Exponential) { EXPECT_NEAR(mittag_leffler(1.0, 1.0, 1.0), std::exp(1.0), 1e-12); }

TEST(MittagLeffler, ValueAtZero) {
  for (double d : {0.3, 0.75, 1.0, 2.5}) EXPECT_NEAR(mittag_leffler(0.6, d, 0.0), 1.0 / std::tgamma(d), 1e-14);
}

TEST(MittagLeffler, SeriesAgreesWithIntegral) {
  const double s = mittag_leffler_series(0.75, 0.75, 2.0, 200);
  const double q = mittag_leffler_integral(0.75, 0.75, 2.0);
  EXPECT_NEAR(s, q, 1e-8 * std::fabs(s));
}

TEST(PotentialMass, Stable) { EXPECT_NEAR(potential_mass(LevyModel::stable(0.5), 1.0), 1.0 / std::tgamma(1.5), 1e-12); }

TEST(PotentialMass, UntemperedDensity) {
  const auto m = LevyModel::stable(0.7);
  EXPECT_NEAR(potential_density(m, 1.0), 1.0 / std::tgamma(0.7), 1e-12);
}

TEST(PotentialMass, TemperedAgainstRenewalOracle) {
  const auto m = LevyModel::tempered(0.75, 1.0);
  const double u = potential_mass(m, 1.0);
  auto L = test::draws(4000, 17, [&](Rng& rng) { return tools::oracle_crossing(1.0, m, 1e-3, rng).L; });
  EXPECT_LT(test::z_score(L, u), 3.0);
}

TEST(ExpMomentLevy, TruncatedBelowOne) {
  EXPECT_EQ(exp_moment_levy(LevyModel::tempered(0.5, 0.0, 1.0, 1.0), 2.0), 0.0);
}

TEST(ExpMomentLevy, PureStableDiverges) { EXPECT_TRUE(std::isinf(exp_moment_levy(LevyModel::stable(0.5), 1.0))); }

TEST(ExpMomentLevy, TemperedQuadratureSelfConsistent) {
  const auto m = LevyModel::tempered(0.65, 7.0);
  const double a = exp_moment_levy(m, 1.0, 31);
  const double b = exp_moment_levy(m, 1.0, 61);
  EXPECT_LT(std::fabs(a - b), 1e-6 * b);
  const double direct =
      0.65 / std::tgamma(0.35) *
      numeric::integrate([](double s) { return std::exp(-6.0 * s) * std::pow(s, -1.65); }, 1.0, 60.0, 1e-13);
  EXPECT_NEAR(b, direct, 1e-9 * direct);
}

TEST(Model, ValidationRejectsBadParameters) {
  LevyModel m = LevyModel::stable(0.5);
  m.alpha = 1.2;
  EXPECT_THROW(m.validate(), DomainError);
  m = LevyModel::stable(0.5);
  m.q = -1.0;
  EXPECT_THROW(m.validate(), DomainError);
}
