#include "invsub/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace invsub::numeric {

namespace {

template <unsigned N>
double gk(const std::function<double(double)>& f, double a, double b, double tol, unsigned depth) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, N>::integrate(f, a, b, depth, tol, &err);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 int nodes, unsigned max_depth) {
  if (a == b) return 0.0;
  switch (nodes) {
    case 15: return gk<15>(f, a, b, rel_tol, max_depth);
    case 21: return gk<21>(f, a, b, rel_tol, max_depth);
    case 31: return gk<31>(f, a, b, rel_tol, max_depth);
    case 41: return gk<41>(f, a, b, rel_tol, max_depth);
    case 51: return gk<51>(f, a, b, rel_tol, max_depth);
    default: return gk<61>(f, a, b, rel_tol, max_depth);
  }
}

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 16) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t h = x.size() / 2;
  return pairwise_sum(x.first(h)) + pairwise_sum(x.subspan(h));
}

double sinc(double x) {
  const double ax = std::fabs(x);
  if (ax < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace invsub::numeric
