#pragma once

#include <functional>
#include <span>

namespace invsub::numeric {

// Adaptive Gauss-Kronrod on [a,b]; b may be +inf. nodes is one of 15,21,31,41,51,61.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, int nodes = 61, unsigned max_depth = 15);

// Pairwise (cascade) summation; result depends only on the input order.
double pairwise_sum(std::span<const double> x);

double sinc(double x);

}  // namespace invsub::numeric
