#include "invsub/paths.hpp"
#include "test_util.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace invsub;
using namespace invsub::paths;
using levy::LevyModel;

namespace {

const std::vector<double> kTwo = {0.6, 1.5};
const std::vector<double> kOne = {1.5};

}  // namespace

TEST(AgePath, StaysInConstancyWhenTheJumpIsLong) {
  // stable mass only below 0.1, so S_v is the point mass at 5 >= v + dt
  auto m = LevyModel::tempered(0.5, 0.0, 1.0, 0.1);
  m.zeta = levy::FiniteMeasure::point(1.0, 5.0);
  Rng rng = make_stream(1, 0);
  const std::vector<double> grid = {1.0};
  for (int i = 0; i < 100; ++i) {
    const auto p = sample_age_path({1.0, 0.5}, 0.0, grid, m, rng);
    EXPECT_EQ(p[0].x, 1.0);
    EXPECT_EQ(p[0].v, 1.5);
  }
}

TEST(AgePath, GridRefinementKeepsTheLaw) {
  const auto m = LevyModel::stable(0.75);
  std::vector<double> x1, v1, x2, v2;
  Rng a = make_stream(2, 0), b = make_stream(3, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto p = sample_age_path({}, 0.0, kOne, m, a);
    const auto q = sample_age_path({}, 0.0, kTwo, m, b);
    x1.push_back(p[0].x);
    v1.push_back(p[0].v);
    x2.push_back(q[1].x);
    v2.push_back(q[1].v);
  }
  EXPECT_GT(stats::ks_two_sample(x1, x2).p_value, 0.01);
  EXPECT_GT(stats::ks_two_sample(v1, v2).p_value, 0.01);
}

TEST(AgePath, AgeMarginalIsBeta) {
  const double a = 0.75;
  const std::vector<double> grid = {0.3, 0.7, 1.1, 2.0};
  Rng rng = make_stream(4, 0);
  std::vector<std::vector<double>> ratio(grid.size());
  for (int i = 0; i < 5000; ++i) {
    const auto p = sample_age_path({}, 0.0, grid, LevyModel::stable(a), rng);
    for (std::size_t k = 0; k < grid.size(); ++k) ratio[k].push_back(p[k].v / grid[k]);
  }
  auto cdf = [a](double x) { return boost::math::ibeta(1.0 - a, a, std::clamp(x, 0.0, 1.0)); };
  for (auto& r : ratio) EXPECT_GT(stats::ks_one_sample(r, cdf).p_value, 0.01);
}

TEST(LifetimePath, LongLifetimeIsDeterministic) {
  Rng rng = make_stream(5, 0);
  const std::vector<double> grid = {2.0};
  const auto p = sample_lifetime_path({0.7, 5.0}, 0.0, grid, LevyModel::stable(0.5), rng);
  EXPECT_EQ(p[0].x, 0.7);
  EXPECT_EQ(p[0].r, 3.0);
}

TEST(LifetimePath, LifetimeEqualToStepRenews) {
  Rng rng = make_stream(6, 0);
  const std::vector<double> grid = {2.0};
  for (int i = 0; i < 200; ++i) {
    const auto p = sample_lifetime_path({0.7, 2.0}, 0.0, grid, LevyModel::stable(0.5), rng);
    EXPECT_GT(p[0].r, 0.0);
    EXPECT_NEAR(p[0].x, 0.7, 1e-6);
    EXPECT_GE(p[0].x, 0.7);
  }
}

TEST(LifetimePath, ConstantExactlyOnConstancySteps) {
  auto m = LevyModel::tempered(0.6, 1.0);
  const auto grid = uniform_grid(3.0, 300);
  Rng rng = make_stream(7, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = sample_lifetime_path({}, 0.0, grid, m, rng);
    double prev_r = 0.0, prev_x = 0.0, prev_t = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double dt = grid[i] - prev_t;
      ASSERT_GE(p[i].x, prev_x);
      if (prev_r > dt) {
        ASSERT_EQ(p[i].x, prev_x);
      } else {
        ASSERT_GT(p[i].x, prev_x);
      }
      prev_r = p[i].r;
      prev_x = p[i].x;
      prev_t = grid[i];
    }
  }
}

TEST(LifetimePath, GridRefinementKeepsTheLaw) {
  const auto m = LevyModel::tempered(0.75, 1.0, 1.0, 1.0);
  std::vector<double> x1, r1, x2, r2;
  Rng a = make_stream(8, 0), b = make_stream(9, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto p = sample_lifetime_path({}, 0.0, kOne, m, a);
    const auto q = sample_lifetime_path({}, 0.0, kTwo, m, b);
    x1.push_back(p[0].x);
    r1.push_back(p[0].r);
    x2.push_back(q[1].x);
    r2.push_back(q[1].r);
  }
  EXPECT_GT(stats::ks_two_sample(x1, x2).p_value, 0.01);
  EXPECT_GT(stats::ks_two_sample(r1, r2).p_value, 0.01);
}

TEST(TripletPath, ConstancyArithmetic) {
  Rng rng = make_stream(10, 0);
  const std::vector<double> grid = {0.4};
  const auto p = sample_triplet_path({0.2, 1.3, 1.0}, 0.0, grid, LevyModel::stable(0.5), rng);
  EXPECT_DOUBLE_EQ(p[0].g, 0.6);
  EXPECT_EQ(p[0].x, 1.3);
  EXPECT_DOUBLE_EQ(p[0].R, 0.6);
}

TEST(TripletPath, ConstancyRunTelescopes) {
  const auto grid = uniform_grid(1.0, 10);
  Rng rng = make_stream(11, 0);
  const auto p = sample_triplet_path({0.5, 2.0, 50.0}, 0.0, grid, LevyModel::stable(0.5), rng);
  EXPECT_NEAR(p.back().g, 1.5, 1e-12);
  EXPECT_NEAR(p.back().R, 49.0, 1e-12);
  EXPECT_EQ(p.back().x, 2.0);
}

TEST(TripletPath, ProjectionsMatchAgeAndLifetimePaths) {
  const auto m = LevyModel::stable(0.6);
  std::vector<double> tg, tx, tR, ag, ax, lx, lR;
  Rng a = make_stream(12, 0), b = make_stream(13, 0), c = make_stream(14, 0);
  for (int i = 0; i < 8000; ++i) {
    const auto t = sample_triplet_path({}, 0.0, kTwo, m, a);
    const auto g = sample_age_path({}, 0.0, kTwo, m, b);
    const auto l = sample_lifetime_path({}, 0.0, kTwo, m, c);
    tg.push_back(t[1].g);
    tx.push_back(t[1].x);
    tR.push_back(t[1].R);
    ag.push_back(g[1].v);
    ax.push_back(g[1].x);
    lx.push_back(l[1].x);
    lR.push_back(l[1].r);
  }
  EXPECT_GT(stats::ks_two_sample(tg, ag).p_value, 0.01);
  EXPECT_GT(stats::ks_two_sample(tx, ax).p_value, 0.01);
  EXPECT_GT(stats::ks_two_sample(tx, lx).p_value, 0.01);
  EXPECT_GT(stats::ks_two_sample(tR, lR).p_value, 0.01);
}

TEST(TripletPath, RepeatedInitialTimeEmitsInitialState) {
  Rng rng = make_stream(15, 0);
  const std::vector<double> grid = {0.0, 0.5};
  const auto p = sample_triplet_path({0.1, 0.2, 0.3}, 0.0, grid, LevyModel::stable(0.5), rng);
  EXPECT_EQ(p[0].g, 0.1);
  EXPECT_EQ(p[0].x, 0.2);
  EXPECT_EQ(p[0].R, 0.3);
}

TEST(Paths, RejectsDecreasingGrid) {
  Rng rng = make_stream(16, 0);
  const std::vector<double> grid = {0.5, 0.4};
  EXPECT_THROW(sample_lifetime_path({}, 0.0, grid, LevyModel::stable(0.5), rng), DomainError);
}

TEST(StepCost, AllConstancyCostsAtMostFourPerStep) {
  const auto grid = uniform_grid(1.0, 100);
  Rng rng = make_stream(17, 0);
  PathTelemetry tel;
  sample_lifetime_path({0.0, 1e9}, 0.0, grid, LevyModel::stable(0.5), rng, &tel);
  const auto r = step_cost_report(tel, PathKind::Lifetime, 0.0);
  EXPECT_EQ(tel.constancy_steps, 100u);
  EXPECT_LE(r.measured / 100.0, 4.0);
  EXPECT_TRUE(r.within);
}

TEST(StepCost, HundredStepsStayWithinTheBound) {
  const auto m = LevyModel::tempered(0.7, 1.0, 1.0, 1.0);
  const auto grid = uniform_grid(1.0, 100);
  Rng cal = make_stream(18, 0);
  const double K = calibrate_single_time_cost(m, 0.01, 5000, cal);
  int within = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = make_stream(19, static_cast<std::uint64_t>(i));
    PathTelemetry tel;
    sample_lifetime_path({}, 0.0, grid, m, rng, &tel);
    within += step_cost_report(tel, PathKind::Lifetime, K).within;
  }
  EXPECT_EQ(within, 1000);
}

TEST(StepCost, SingleStepIsSingleTimeCostPlusConstant) {
  const auto m = LevyModel::stable(0.5);
  const std::vector<double> grid = {1.0};
  Rng rng = make_stream(20, 0);
  PathTelemetry tel;
  sample_lifetime_path({}, 0.0, grid, m, rng, &tel);
  const auto work = tel.counters.iterations + tel.counters.rejections;
  EXPECT_EQ(tel.ops, work + 1);
  EXPECT_EQ(tel.crossings, 1u);
}
