#include "invsub/first_passage.hpp"
#include "invsub/numeric.hpp"
#include "invsub/stable.hpp"
#include "invsub/tools/oracle.hpp"
#include "test_util.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace invsub;
using namespace invsub::first_passage;
using levy::LevyModel;

namespace {

struct Coordinates {
  std::vector<double> L, gamma, Gamma;
};

template <class F>
Coordinates crossings(std::size_t n, std::uint64_t seed, F&& f) {
  Coordinates c;
  Rng rng = make_stream(seed, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = f(rng);
    c.L.push_back(s.L);
    c.gamma.push_back(s.gamma);
    c.Gamma.push_back(s.Gamma);
  }
  return c;
}

void expect_same_law(const Coordinates& a, const Coordinates& b) {
  EXPECT_GT(stats::ks_two_sample(a.L, b.L).p_value, 0.01);
  EXPECT_GT(stats::ks_two_sample(a.gamma, b.gamma).p_value, 0.01);
  EXPECT_GT(stats::ks_two_sample(a.Gamma, b.Gamma).p_value, 0.01);
}

}  // namespace

TEST(StablePositive, LaplaceTransform) {
  const double a = 0.6, scale = 1.7;
  auto x = test::draws(400000, 1, [&](Rng& rng) { return std::exp(-sample_stable_positive(a, scale, rng)); });
  EXPECT_LT(test::z_score(x, std::exp(-scale)), 3.0);
}

TEST(StablePositive, NearOneIsAlmostDeterministic) {
  auto x = test::draws(2001, 2, [](Rng& rng) { return sample_stable_positive(0.999, 1.0, rng); });
  std::nth_element(x.begin(), x.begin() + 1000, x.end());
  EXPECT_NEAR(x[1000], 1.0, 0.05);
}

TEST(StablePositive, SelfSimilarity) {
  const double a = 0.7, u = 3.0;
  auto x = test::draws(5000, 3, [&](Rng& rng) { return sample_stable_positive(a, u, rng); });
  auto y = test::draws(5000, 4, [&](Rng& rng) { return std::pow(u, 1.0 / a) * sample_stable_positive(a, 1.0, rng); });
  EXPECT_GT(stats::ks_two_sample(x, y).p_value, 0.01);
}

TEST(StableCrossing, AgeMeanIsOneMinusAlpha) {
  for (double a : {0.3, 0.75}) {
    auto g = test::draws(100000, 5, [&](Rng& rng) { return sample_stable_crossing(2.0, a, 1.0, rng).gamma / 2.0; });
    EXPECT_LT(test::z_score(g, 1.0 - a), 3.0) << "alpha " << a;
  }
}

TEST(StableCrossing, InverseMean) {
  auto L = test::draws(100000, 6, [](Rng& rng) { return sample_stable_crossing(1.0, 0.75, 1.0, rng).L; });
  EXPECT_LT(test::z_score(L, 1.0 / std::tgamma(1.75)), 3.0);
}

TEST(StableCrossing, OvershootGivenAgeIsPareto) {
  // given gamma = g, P(Gamma > z) = (g/(g+z))^alpha, so (g/(g+Gamma))^alpha is uniform
  const double a = 0.6;
  auto u = test::draws(20000, 7, [&](Rng& rng) {
    const auto s = sample_stable_crossing(1.0, a, 1.0, rng);
    return std::pow(s.gamma / (s.gamma + s.Gamma), a);
  });
  EXPECT_GT(stats::ks_one_sample(u, [](double x) { return std::clamp(x, 0.0, 1.0); }).p_value, 0.01);
}

TEST(StableCrossing, ThetaRescalesTheInverse) {
  const double a = 0.5, theta = 2.5;
  auto x = test::draws(5000, 8, [&](Rng& rng) { return sample_stable_crossing(1.0, a, theta, rng).L; });
  auto y = test::draws(5000, 9, [&](Rng& rng) { return sample_stable_crossing(1.0, a, 1.0, rng).L / theta; });
  EXPECT_GT(stats::ks_two_sample(x, y).p_value, 0.01);
}

TEST(TruncatedCrossing, NoFinitePartReducesToSubSampler) {
  const auto m = LevyModel::tempered(0.6, 0.0, 1.0, 1.5);
  auto a = crossings(8000, 10, [&](Rng& rng) { return sample_truncated_crossing(1.0, m, rng); });
  auto b = crossings(8000, 11, [&](Rng& rng) { return sample_truncated_stable_crossing(1.0, 0.6, 1.0, 1.5, rng); });
  expect_same_law(a, b);
}

TEST(TruncatedCrossing, AgreesWithPathOracle) {
  const auto m = LevyModel::tempered(0.75, 0.0, 1.0, 1.0);
  auto a = crossings(4000, 12, [&](Rng& rng) { return sample_truncated_crossing(1.0, m, rng); });
  auto b = crossings(4000, 13, [&](Rng& rng) { return tools::oracle_crossing(1.0, m, 1e-3, rng); });
  expect_same_law(a, b);
}

TEST(TruncatedCrossing, StableSplitAtOneMatchesStable) {
  auto m = LevyModel::tempered(0.5, 0.0, 1.0, 1.0);
  m.zeta = levy::FiniteMeasure::stable_segment(0.5, 1.0, 0.0, 1.0, kInf);
  auto a = crossings(8000, 14, [&](Rng& rng) { return sample_truncated_crossing(1.0, m, rng); });
  auto b = crossings(8000, 15, [&](Rng& rng) { return sample_stable_crossing(1.0, 0.5, 1.0, rng); });
  expect_same_law(a, b);
}

TEST(TruncatedCrossing, TwiceTheTruncationChainsTwoSubBarriers) {
  const auto m = LevyModel::tempered(0.7, 0.0, 1.0, 0.5);
  Rng rng = make_stream(16, 0);
  Counters c;
  sample_truncated_crossing(1.0, m, rng, &c);
  EXPECT_EQ(c.sub_barriers, 2u);
}

TEST(TemperedCrossing, ZeroTemperingMatchesTruncatedStable) {
  const auto m = LevyModel::tempered(0.75, 0.0, 1.0, 2.0);
  auto a = crossings(10000, 17, [&](Rng& rng) { return sample_tempered_crossing(1.0, m, rng); });
  auto b = crossings(10000, 18, [&](Rng& rng) { return sample_truncated_stable_crossing(1.0, 0.75, 1.0, 2.0, rng); });
  expect_same_law(a, b);
}

TEST(TemperedCrossing, StraddlingJumpMeanMatchesQuadrature) {
  const double a = 0.75, q = 1.0, t = 1.0;
  const auto m = LevyModel::tempered(a, q);
  // E[J] = int_0^t u(s) int_{t-s}^inf w nu_q(w) dw ds, inner = a/G(1-a) q^{a-1} Gamma(1-a, q(t-s));
  // s = w^{1/a} removes the s^{a-1} singularity of the potential density
  auto inner = [&](double x) {
    return a / std::tgamma(1.0 - a) * std::pow(q, a - 1.0) * boost::math::tgamma(1.0 - a, q * x);
  };
  auto f = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double s = std::pow(w, 1.0 / a);
    return levy::potential_density(m, s) * std::pow(s, 1.0 - a) / a * inner(t - s);
  };
  const double expected = numeric::integrate(f, 0.0, std::pow(t, a), 1e-10);
  auto J = test::draws(40000, 19, [&](Rng& rng) {
    const auto s = sample_tempered_crossing(t, m, rng);
    return s.gamma + s.Gamma;
  });
  EXPECT_LT(test::z_score(J, expected), 3.0);
}

TEST(TemperedCrossing, AgreesWithPathOracle) {
  const auto m = LevyModel::tempered(0.75, 1.0, 1.0, 1.0);
  auto a = crossings(4000, 20, [&](Rng& rng) { return sample_crossing(1.0, m, rng); });
  auto b = crossings(4000, 21, [&](Rng& rng) { return tools::oracle_crossing(1.0, m, 1e-3, rng); });
  expect_same_law(a, b);
}

TEST(Crossing, StraddleInvariantAcrossModels) {
  std::vector<LevyModel> models = {LevyModel::stable(0.4), LevyModel::tempered(0.6, 2.0),
                                   LevyModel::tempered(0.5, 0.0, 1.0, 0.3), LevyModel::tempered(0.65, 4.0, 1.0, 1.0)};
  models.back().zeta = levy::FiniteMeasure::pareto5(1.0);
  Rng rng = make_stream(22, 0);
  for (const auto& m : models)
    for (double t : {0.01, 1.0, 3.0})
      for (int i = 0; i < 300; ++i) {
        const auto s = sample_crossing(t, m, rng);
        ASSERT_GE(s.gamma, 0.0);
        ASSERT_LE(t - s.gamma, t);
        ASSERT_GT(s.Gamma, 0.0);
        ASSERT_GT(s.L, 0.0);
      }
}

TEST(Crossing, DriftIsUnsupported) {
  auto m = LevyModel::stable(0.5);
  m.drift = 0.5;
  Rng rng = make_stream(23, 0);
  EXPECT_THROW(sample_crossing(1.0, m, rng), UnsupportedError);
}

TEST(ConditionalSmall, HugeBarrierIsUnconditioned) {
  const auto m = LevyModel::stable(0.6);
  const double E = 0.8;
  auto x = test::draws(5000, 24, [&](Rng& rng) { return sample_conditional_small(E, 1e12, m, rng); });
  auto y = test::draws(5000, 25, [&](Rng& rng) { return sample_stable_positive(0.6, E, rng); });
  EXPECT_GT(stats::ks_two_sample(x, y).p_value, 0.01);
}

TEST(ConditionalSmall, ConditionalMeanMatchesStableDensity) {
  const double a = 0.5, E = 1.0;
  const auto m = LevyModel::stable(a);
  for (double b : {0.05, 0.02}) {
    const double mass = numeric::integrate([&](double s) { return stable_pdf(a, s); }, 0.0, b, 1e-12);
    const double first = numeric::integrate([&](double s) { return s * stable_pdf(a, s); }, 0.0, b, 1e-12);
    Counters c;
    auto x = test::draws(20000, 26, [&](Rng& rng) {
      const double s = sample_conditional_small(E, b, m, rng, &c);
      EXPECT_LT(s, b);
      return s;
    });
    EXPECT_LT(test::z_score(x, first / mass), 3.0) << "barrier " << b;
    if (b == 0.02) {
      EXPECT_GT(c.fallbacks, 0u);
    }
  }
}

TEST(CostFunction, PaperValues) {
  EXPECT_NEAR(frak_c(0.2), 730.0, 0.05 * 730.0);
  EXPECT_NEAR(frak_c(0.1), 94500.0, 0.05 * 94500.0);
  EXPECT_LT(frak_c(0.999), 1.1);
  EXPECT_GE(frak_c(0.999), 1.0);
}

TEST(CostFunction, BoundsScaleWithSubBarrierCount) {
  auto m = LevyModel::tempered(0.5, 0.0, 1.0, 1.0);
  const auto one = expected_cost_bounds(m, 1.0);
  const auto three = expected_cost_bounds(m, 2.5);
  EXPECT_NEAR(three.bound_simplif, 3.0 * one.bound_simplif, 1e-9 * one.bound_simplif);
  EXPECT_NEAR(one.bound_simplif, one.frak_c + 9.0, 1e-9);
}
