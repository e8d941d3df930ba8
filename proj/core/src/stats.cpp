#include "invsub/stats.hpp"

#include "invsub/errors.hpp"
#include "invsub/numeric.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace invsub::stats {

double mean(std::span<const double> x) {
  if (x.empty()) throw DomainError("mean of empty sample");
  return numeric::pairwise_sum(x) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw DomainError("variance needs two observations");
  const double m = mean(x);
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = (x[i] - m) * (x[i] - m);
  return numeric::pairwise_sum(d) / static_cast<double>(x.size() - 1);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<>(), p);
}

double kolmogorov_pvalue(double d, double n_eff) {
  const double sn = std::sqrt(n_eff);
  const double lam = (sn + 0.12 + 0.11 / sn) * d;
  if (lam < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lam * lam);
    s += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

TestResult ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw DomainError("KS test on empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, kolmogorov_pvalue(d, n)};
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("KS test on empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(i / na - j / nb));
  }
  return {d, kolmogorov_pvalue(d, na * nb / (na + nb))};
}

TestResult anderson_darling_normal(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 8) throw DomainError("Anderson-Darling needs at least 8 observations");
  const double m = mean(x);
  const double sd = std::sqrt(variance(x));
  if (!(sd > 0.0)) throw DomainError("Anderson-Darling undefined for zero variance");
  std::vector<double> z(x.begin(), x.end());
  std::sort(z.begin(), z.end());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = normal_cdf((z[i] - m) / sd);
    const double hi = normal_cdf((z[n - 1 - i] - m) / sd);
    s += (2.0 * i + 1.0) * (std::log(std::max(lo, 1e-300)) + std::log(std::max(1.0 - hi, 1e-300)));
  }
  const double dn = static_cast<double>(n);
  const double a2 = -dn - s / dn;
  const double a = a2 * (1.0 + 0.75 / dn + 2.25 / (dn * dn));
  // D'Agostino & Stephens p-value approximation for the estimated-parameter case
  double p;
  if (a >= 0.6)
    p = std::exp(1.2937 - 5.709 * a + 0.0186 * a * a);
  else if (a >= 0.34)
    p = std::exp(0.9177 - 4.279 * a - 1.38 * a * a);
  else if (a >= 0.2)
    p = 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a);
  else
    p = 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a);
  return {a, std::clamp(p, 0.0, 1.0)};
}

TestResult t_test(std::span<const double> x, double mu) {
  const double n = static_cast<double>(x.size());
  const double se = std::sqrt(variance(x) / n);
  const double t = (mean(x) - mu) / se;
  boost::math::students_t_distribution<> dist(n - 1.0);
  return {t, 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)))};
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("linear fit needs matching samples of size >= 2");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  f.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.residuals[i] = y[i] - f.intercept - f.slope * x[i];
    rss += f.residuals[i] * f.residuals[i];
  }
  f.slope_se = n > 2 ? std::sqrt(rss / (n - 2.0) / sxx) : std::numeric_limits<double>::quiet_NaN();
  return f;
}

}  // namespace invsub::stats
