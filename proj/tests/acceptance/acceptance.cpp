// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Optional argument: a comma separated list of criterion numbers to run.

#include "invsub/first_passage.hpp"
#include "invsub/montecarlo.hpp"
#include "invsub/paths.hpp"
#include "invsub/processes.hpp"
#include "invsub/sde.hpp"
#include "invsub/stats.hpp"
#include "invsub/tools/experiments.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>

using namespace invsub;
using levy::LevyModel;
using processes::ClockKind;
using processes::FellerSpec;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass;
  std::string detail;
};

tools::ExperimentConfig config(const std::string& json, const std::string& experiment) {
  auto c = tools::parse_config(json, experiment);
  c.seed = kSeed;
  c.threads = 0;
  return c;
}

std::string p3(const stats::TestResult& r) { return fmt::format("{:.3g}", r.p_value); }

montecarlo::FunctionalSpec square_norm() {
  montecarlo::FunctionalSpec f;
  f.u = [](std::span<const Eigen::VectorXd> x) { return x.back().squaredNorm(); };
  f.growth_p = 2.0;
  return f;
}

// 1. E|B_{L_t}|^2 = t^a / Gamma(1 + a) inside the 95% interval, N = 1e5
Outcome inverse_clock_mean() {
  bool pass = true;
  std::string d;
  const std::vector<double> grid = {1.0};
  for (double a : {0.5, 0.75}) {
    const auto e = montecarlo::estimate_exact(square_norm(), FellerSpec::brownian(1), LevyModel::stable(a),
                                              ClockKind::Inverse, grid, 100000, kSeed + 1);
    const double target = 1.0 / std::tgamma(1.0 + a);
    const bool ok = std::fabs(e.mean - target) <= e.ci_halfwidth;
    pass = pass && ok;
    d += fmt::format("alpha={} mean={:.5f} target={:.5f} ci=+-{:.5f}; ", a, e.mean, target, e.ci_halfwidth);
  }
  return {pass, d};
}

// 2. gamma_t / t ~ Beta(1 - a, a), one-sample KS p > 0.01, N = 1e5
Outcome dynkin_lamperti() {
  bool pass = true;
  std::string d;
  for (double a : {0.5, 0.75}) {
    Rng rng = make_stream(kSeed + 2, static_cast<std::uint64_t>(a * 100));
    std::vector<double> x(100000);
    for (auto& v : x) v = first_passage::sample_stable_crossing(1.0, a, 1.0, rng).gamma;
    const auto r = stats::ks_one_sample(
        std::move(x), [a](double u) { return boost::math::ibeta(1.0 - a, a, std::clamp(u, 0.0, 1.0)); });
    pass = pass && r.p_value > 0.01;
    d += fmt::format("alpha={} p={}; ", a, p3(r));
  }
  return {pass, d};
}

// 3. exact samplers vs step-1e-4 path-inversion oracle, two-sample KS p > 0.01, N = 1e4
Outcome oracle_equivalence() {
  bool pass = true;
  std::string d;
  const char* cases[] = {R"("alpha": 0.75, "q": 0, "r": "inf")", R"("alpha": 0.75, "q": 1, "r": 1)",
                         R"("alpha": 0.5, "q": 0, "r": 1)"};
  for (const char* c : cases) {
    const auto cfg = config(std::string("{") + c + R"(, "t": 1, "N": 10000, "step": 1e-4})", "validate");
    const auto r = tools::compute_oracle_report(cfg);
    const bool ok = r.L.p_value > 0.01 && r.gamma.p_value > 0.01 && r.Gamma.p_value > 0.01;
    pass = pass && ok;
    d += fmt::format("({}) p_L={} p_g={} p_G={}; ", c, p3(r.L), p3(r.gamma), p3(r.Gamma));
  }
  return {pass, d};
}

// 4. state at t2 via {t2} vs {t1, t2}, two-sample KS p > 0.01, N = 1e4
Outcome grid_refinement() {
  bool pass = true;
  std::string d;
  const std::vector<double> coarse = {1.5}, fine = {0.6, 1.5};
  std::vector<std::pair<std::string, LevyModel>> models = {{"stable 0.75", LevyModel::stable(0.75)},
                                                           {"tempered 0.75,1,1", LevyModel::tempered(0.75, 1.0, 1.0, 1.0)}};
  for (const auto& [name, m] : models) {
    std::vector<double> g1, x1, R1, g2, x2, R2;
    Rng a = make_stream(kSeed + 4, 0), b = make_stream(kSeed + 4, 1);
    for (int i = 0; i < 10000; ++i) {
      const auto p = paths::sample_triplet_path({}, 0.0, coarse, m, a).back();
      const auto q = paths::sample_triplet_path({}, 0.0, fine, m, b).back();
      g1.push_back(p.g), x1.push_back(p.x), R1.push_back(p.R);
      g2.push_back(q.g), x2.push_back(q.x), R2.push_back(q.R);
    }
    const auto kg = stats::ks_two_sample(g1, g2), kx = stats::ks_two_sample(x1, x2), kR = stats::ks_two_sample(R1, R2);
    pass = pass && kg.p_value > 0.01 && kx.p_value > 0.01 && kR.p_value > 0.01;
    d += fmt::format("{}: p_age={} p_L={} p_R={}; ", name, p3(kg), p3(kx), p3(kR));
  }
  return {pass, d};
}

// 5. OU example at h = 1.9e-4: max squared error below 0.1 in >= 95% of 500 replicas
Outcome strong_error() {
  const auto r = tools::compute_strong_error_report(
      config(R"({"sde": "ou", "alpha": 0.8, "t_end": 0.1, "epsilon": 0.1, "replicas": 500, "h": 1.9e-4})",
             "strong-error"));
  const auto geo = tools::compute_strong_error_report(
      config(R"({"sde": "linear_growth", "replicas": 2, "grid_points": 2, "h": 0.01})", "strong-error"));
  const bool geo_ok = std::fabs(geo.planned_h - 8.4e-9) <= 0.05 * 8.4e-9;
  return {r.fraction_below >= 0.95 && geo_ok,
          fmt::format("h={} fraction_below={:.3f} (need >= 0.95); planned h OU={:.4g} geometric={:.4g} (need 8.4e-9 +-5%)",
                      r.h, r.fraction_below, r.planned_h, geo.planned_h)};
}

// 6. log-log slope of the OU squared sup-error over h = 2^-6..2^-12 in 1.0 +- 0.3
Outcome strong_order() {
  const auto r = tools::compute_strong_order_report(config(R"({"j_min": 6, "j_max": 12, "replicas": 1000})", "strong-error"));
  return {std::fabs(r.fit.slope - 1.0) <= 0.3,
          fmt::format("slope={:.3f} se={:.3f} (need 1.0 +- 0.3)", r.fit.slope, r.fit.slope_se)};
}

// 7. BDG constant and the expected-cost function
Outcome constants() {
  const double c02 = first_passage::frak_c(0.2), c01 = first_passage::frak_c(0.1);
  const bool ok = sde::kBdgConstant == 1.30693 && std::fabs(c02 - 730.0) <= 0.05 * 730.0 &&
                  std::fabs(c01 - 94500.0) <= 0.05 * 94500.0;
  return {ok, fmt::format("C1={} c(0.2)={:.2f} (730 +-5%) c(0.1)={:.1f} (94500 +-5%)", sde::kBdgConstant, c02, c01)};
}

// 8. WEB: T-exponent -(1 - a) +- 0.1, C(0.5) = 1.1 +- 0.3, Brownian control within 5% at T/t = 1e4
Outcome web() {
  const auto tc = tools::compute_web_report(config(R"({"alpha": 0.5, "replicas": 10000})", "web"));
  const auto bm = tools::compute_web_report(
      config(R"({"process": "brownian", "replicas": 10000, "T": [10000], "lag_multipliers": [1]})", "web"));
  double control = std::numeric_limits<double>::quiet_NaN();
  for (const auto& c : bm.cells)
    if (c.t == 1.0 && c.T == 10000.0) control = c.mean / c.t;
  const bool ok = std::fabs(tc.exponent_T + 0.5) <= 0.1 && std::fabs(tc.C_alpha - 1.1) <= 0.3 &&
                  std::fabs(control - 1.0) <= 0.05;
  return {ok, fmt::format("exponent={:.4f} (need -0.5 +- 0.1) C={:.4f} (need 1.1 +- 0.3) control={:.4f} (need 1 +- 0.05)",
                          tc.exponent_T, tc.C_alpha, control)};
}

// 9. 500 batch means of N = 1e3 pass Anderson-Darling at 0.01; coverage 95 +- 3% over 1000 runs
Outcome clt() {
  const std::vector<double> grid = {1.0};
  const auto f = square_norm();
  const auto spec = FellerSpec::brownian(1);
  const auto m = LevyModel::stable(0.5);
  const double target = 1.0 / std::tgamma(1.5);
  std::vector<double> z;
  for (std::uint64_t b = 0; b < 500; ++b) {
    const auto e = montecarlo::estimate_exact(f, spec, m, ClockKind::Inverse, grid, 1000, kSeed + 9000 + b);
    z.push_back((e.mean - target) / std::sqrt(e.sample_variance / 1000.0));
  }
  const auto ad = montecarlo::clt_diagnostic(z, 0.01);
  std::size_t covered = 0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    const auto e = montecarlo::estimate_exact(f, spec, m, ClockKind::Inverse, grid, 1000, kSeed + 20000 + r);
    covered += std::fabs(e.mean - target) <= e.ci_halfwidth;
  }
  const double coverage = static_cast<double>(covered) / 1000.0;
  const auto auth = processes::check_moment_conditions(spec, m, ClockKind::Inverse, f.growth_p, 1.0);
  return {ad.pass && auth.clt_ok && std::fabs(coverage - 0.95) <= 0.03,
          fmt::format("AD A2={:.3f} p={:.3g} (need > 0.01) coverage={:.3f} (need 0.95 +- 0.03) authorized={}",
                      ad.statistic, ad.p_value, coverage, auth.clt_ok)};
}

// 10. isotropic stable gates: CLT iff p < aM/2, Berry-Esseen iff p < aM/3
Outcome gates() {
  std::size_t checked = 0, wrong = 0;
  // dyadic grid: values and boundary ties p = aM/2, aM/3 are exact in binary
  for (int i = 1; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const double aM = i / 32.0, p = j / 64.0;
      const auto r = processes::check_moment_conditions(FellerSpec::isotropic_stable(2, aM), LevyModel::stable(0.5),
                                                        ClockKind::Inverse, p, 1.0);
      ++checked;
      wrong += (r.clt_ok != (p < aM / 2.0)) + (r.berry_esseen_ok != (p < aM / 3.0));
    }
  return {wrong == 0, fmt::format("{} grid points, {} mismatches", checked, wrong)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"inverse-clock mean", inverse_clock_mean},  {"Dynkin-Lamperti marginal", dynkin_lamperti},
      {"oracle equivalence", oracle_equivalence},  {"grid refinement", grid_refinement},
      {"strong-error reproduction", strong_error}, {"strong order", strong_order},
      {"constants", constants},                    {"WEB experiment", web},
      {"CLT diagnostic", clt},                     {"moment-condition gates", gates}};
  std::set<int> only;
  if (argc > 1) {
    std::stringstream s(argv[1]);
    for (std::string tok; std::getline(s, tok, ',');) only.insert(std::stoi(tok));
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    fmt::print("{} {:>2} {}: {} [{:.1f} s]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail, secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
