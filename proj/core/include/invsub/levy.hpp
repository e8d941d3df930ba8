#pragma once

#include "invsub/errors.hpp"
#include "invsub/rng.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace invsub {

struct Counters {
  std::uint64_t iterations = 0;   // elementary draws / loop passes
  std::uint64_t rejections = 0;
  std::uint64_t fallbacks = 0;    // numerical-inversion activations
  std::uint64_t sub_barriers = 0; // chained sub-barrier recursions (t > r)

  Counters& operator+=(const Counters& o) {
    iterations += o.iterations;
    rejections += o.rejections;
    fallbacks += o.fallbacks;
    sub_barriers += o.sub_barriers;
    return *this;
  }
};

inline constexpr std::uint64_t kDefaultIterationCap = 1'000'000;

}  // namespace invsub

namespace invsub::levy {

// Finite measure on (0, inf), stored as a sum of simple components.
class FiniteMeasure {
 public:
  FiniteMeasure() = default;

  static FiniteMeasure point(double mass, double location);
  // weight * s^-5 on (1, inf); total mass weight/4.
  static FiniteMeasure pareto5(double weight = 1.0);
  // theta*alpha/Gamma(1-alpha) e^{-qs} s^{-alpha-1} on (lo, hi], hi may be inf.
  static FiniteMeasure stable_segment(double alpha, double theta, double q, double lo, double hi);
  // tail(v) = mass above v; inverse_cdf of the normalised law.
  static FiniteMeasure custom(double mass, std::function<double(double)> tail,
                              std::function<double(double)> inverse_cdf);

  FiniteMeasure operator+(const FiniteMeasure& other) const;

  bool empty() const { return total_mass() <= 0.0; }
  double total_mass() const;
  double tail(double v) const;
  double inverse_cdf(double u) const;
  double sample(Rng& rng) const;
  // draw from the measure restricted to (v, inf), normalised
  double sample_above(double v, Rng& rng) const;

  double laplace_deficit(double lambda) const;             // int (1-e^{-ls}) zeta(ds)
  double exp_moment_above(double c, double level) const;   // int_(level,inf) e^{cs} zeta(ds)
  double first_moment_above(double level) const;           // int_(level,inf) s zeta(ds)

 private:
  enum class Kind { Point, Pareto5, Segment, Custom };
  struct Part {
    Kind kind = Kind::Point;
    double a = 0, b = 0, c = 0, d = 0, e = 0;  // meaning depends on kind
    std::function<double(double)> tail_fn, icdf_fn;
  };
  static Part make_part(Kind k, double a, double b = 0, double c = 0, double d = 0, double e = 0) {
    Part p;
    p.kind = k;
    p.a = a;
    p.b = b;
    p.c = c;
    p.d = d;
    p.e = e;
    return p;
  }
  static double part_mass(const Part& p);
  static double part_tail(const Part& p, double v);
  static double part_icdf(const Part& p, double u);
  static double part_sample(const Part& p, Rng& rng);
  std::vector<Part> parts_;
};

enum class Kind { PureStable, TemperedStable, TruncatedStable, DecomposedGeneral };

// nu(ds) = theta*alpha e^{-qs}/Gamma(1-alpha) s^{-alpha-1} 1{s<=r} ds + zeta(ds), plus drift.
struct LevyModel {
  double drift = 0.0;
  double alpha = 0.5;
  double theta = 1.0;
  double q = 0.0;
  double r = kInf;
  FiniteMeasure zeta;

  static LevyModel stable(double alpha, double theta = 1.0);
  static LevyModel tempered(double alpha, double q, double theta = 1.0, double r = kInf);

  Kind kind() const;
  void validate() const;
  std::string describe() const;
};

double eval_phi(const LevyModel& m, double lambda);
// phi of the stable part alone (no drift, no zeta)
double stable_part_phi(double alpha, double theta, double q, double r, double lambda);
// phi by direct quadrature of a Levy density with a power singularity s^{-index-1} at 0.
double phi_by_quadrature(double drift, const std::function<double(double)>& density, double index,
                         double lambda, double rel_tol = 1e-10);

double tail_nu(const LevyModel& m, double v);
// theta/Gamma(1-alpha) * int_v^hi alpha e^{-qs} s^{-alpha-1} ds
double stable_segment_tail(double alpha, double theta, double q, double v, double hi);

double sample_Sv(const LevyModel& m, double v, Rng& rng, Counters* counters = nullptr,
                 std::uint64_t cap = kDefaultIterationCap);
// generalised inverse CDF of S_v evaluated at u
double quantile_Sv(const LevyModel& m, double v, double u);

struct Decomposition {
  double alpha, theta, q, level;
  FiniteMeasure zeta_tilde;
  double upsilon;
};
Decomposition decompose_at_level(const LevyModel& m, double t);

// E_{beta,delta}(x); returns +inf once the value overflows.
double mittag_leffler(double beta, double delta, double x);
double mittag_leffler_series(double beta, double delta, double x, int max_terms = 400);
double mittag_leffler_integral(double beta, double delta, double x);

double potential_density(const LevyModel& m, double s);
double potential_mass(const LevyModel& m, double t);

// M(c) = int_1^inf e^{cs} nu(ds); +inf when divergent.
double exp_moment_levy(const LevyModel& m, double c, int nodes = 61);

}  // namespace invsub::levy
