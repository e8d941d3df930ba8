#pragma once

#include <functional>
#include <span>
#include <vector>

namespace invsub::stats {

double mean(std::span<const double> x);
// unbiased sample variance
double variance(std::span<const double> x);

double normal_cdf(double x);
double normal_quantile(double p);

struct TestResult {
  double statistic;
  double p_value;
};

// Kolmogorov asymptotic law with Stephens' finite-sample correction.
double kolmogorov_pvalue(double d, double n_eff);
TestResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf);
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Normality with estimated mean and variance; statistic is the corrected A*^2.
TestResult anderson_darling_normal(std::span<const double> x);

// Two-sided one-sample Student t test of E[x] = mu.
TestResult t_test(std::span<const double> x, double mu);

struct LinearFit {
  double slope;
  double intercept;
  double slope_se;
  std::vector<double> residuals;
};
// slope_se is NaN for two points
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace invsub::stats
