#include "invsub/levy.hpp"

#include "invsub/numeric.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace invsub::levy {

namespace {

// G_q(x) with alpha*int_x^inf e^{-qs} s^{-alpha-1} ds = G_q(x); G(inf) = 0.
double G(double alpha, double q, double x) {
  if (std::isinf(x)) return 0.0;
  if (q == 0.0) return std::pow(x, -alpha);
  const double y = q * x;
  if (y < 20.0)
    return std::pow(x, -alpha) * std::exp(-y) - std::pow(q, alpha) * boost::math::tgamma(1.0 - alpha, y);
  // avoid the cancellation between the two terms: substitute s = x + w/q
  const double ex = std::exp(-y);
  if (ex == 0.0) return 0.0;
  auto f = [&](double w) { return std::exp(-w) * std::pow(x + w / q, -alpha - 1.0); };
  return alpha * ex / q * numeric::integrate(f, 0.0, kInf, 1e-13);
}

double tgamma1m(double alpha) { return std::tgamma(1.0 - alpha); }

}  // namespace

double stable_segment_tail(double alpha, double theta, double q, double v, double hi) {
  if (!(v < hi)) return 0.0;
  return theta / tgamma1m(alpha) * (G(alpha, q, v) - G(alpha, q, hi));
}

// ---------------------------------------------------------------- FiniteMeasure

FiniteMeasure FiniteMeasure::point(double mass, double location) {
  if (!(mass >= 0.0) || !(location > 0.0)) throw DomainError("point mass needs mass >= 0, location > 0");
  FiniteMeasure m;
  if (mass > 0.0) m.parts_.push_back(make_part(Kind::Point, location, mass));
  return m;
}

FiniteMeasure FiniteMeasure::pareto5(double weight) {
  if (!(weight >= 0.0)) throw DomainError("pareto weight must be >= 0");
  FiniteMeasure m;
  if (weight > 0.0) m.parts_.push_back(make_part(Kind::Pareto5, weight));
  return m;
}

FiniteMeasure FiniteMeasure::stable_segment(double alpha, double theta, double q, double lo, double hi) {
  if (!(lo > 0.0)) throw DomainError("stable segment must start above 0");
  FiniteMeasure m;
  if (lo < hi) m.parts_.push_back(make_part(Kind::Segment, alpha, theta, q, lo, hi));
  return m;
}

FiniteMeasure FiniteMeasure::custom(double mass, std::function<double(double)> tail,
                                    std::function<double(double)> inverse_cdf) {
  if (!(mass >= 0.0) || !std::isfinite(mass)) throw DomainError("custom measure needs finite mass");
  FiniteMeasure m;
  if (mass > 0.0) {
    Part p = make_part(Kind::Custom, 0.0, mass);
    p.tail_fn = std::move(tail);
    p.icdf_fn = std::move(inverse_cdf);
    m.parts_.push_back(std::move(p));
  }
  return m;
}

FiniteMeasure FiniteMeasure::operator+(const FiniteMeasure& other) const {
  FiniteMeasure m = *this;
  m.parts_.insert(m.parts_.end(), other.parts_.begin(), other.parts_.end());
  return m;
}

double FiniteMeasure::part_mass(const Part& p) {
  switch (p.kind) {
    case Kind::Point: return p.b;
    case Kind::Pareto5: return p.a / 4.0;
    case Kind::Segment: return stable_segment_tail(p.a, p.b, p.c, p.d, p.e);
    case Kind::Custom: return p.b;
  }
  return 0.0;
}

double FiniteMeasure::part_tail(const Part& p, double v) {
  switch (p.kind) {
    case Kind::Point: return p.a > v ? p.b : 0.0;
    case Kind::Pareto5: return v <= 1.0 ? p.a / 4.0 : p.a * std::pow(v, -4.0) / 4.0;
    case Kind::Segment: return stable_segment_tail(p.a, p.b, p.c, std::max(v, p.d), p.e);
    case Kind::Custom: return v <= 0.0 ? p.b : p.tail_fn(v);
  }
  return 0.0;
}

double FiniteMeasure::part_icdf(const Part& p, double u) {
  switch (p.kind) {
    case Kind::Point: return p.a;
    case Kind::Pareto5: return std::pow(1.0 - u, -0.25);
    case Kind::Segment: {
      const double alpha = p.a, lo = p.d, hi = p.e;
      if (p.c == 0.0) {
        const double a = std::pow(lo, -alpha);
        const double b = std::isinf(hi) ? 0.0 : std::pow(hi, -alpha);
        return std::pow(a - u * (a - b), -1.0 / alpha);
      }
      // bisection on the tail
      const double mass = part_mass(p);
      const double target = (1.0 - u) * mass;
      double a = lo, b = std::isinf(hi) ? 2.0 * lo : hi;
      while (std::isinf(hi) && part_tail(p, b) > target) b *= 2.0;
      for (int i = 0; i < 200 && (b - a) > 1e-15 * b; ++i) {
        const double mid = 0.5 * (a + b);
        (part_tail(p, mid) > target ? a : b) = mid;
      }
      return 0.5 * (a + b);
    }
    case Kind::Custom: return p.icdf_fn(u);
  }
  return 0.0;
}

double FiniteMeasure::part_sample(const Part& p, Rng& rng) {
  if (p.kind == Kind::Segment && p.c > 0.0) {
    Part base = p;
    base.c = 0.0;
    for (std::uint64_t i = 0; i < kDefaultIterationCap; ++i) {
      const double s = part_icdf(base, uniform01(rng));
      if (uniform01(rng) < std::exp(-p.c * (s - p.d))) return s;
    }
    throw SamplerError("tempered segment rejection exceeded cap", kDefaultIterationCap, 0.0);
  }
  return part_icdf(p, uniform01(rng));
}

double FiniteMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& p : parts_) s += part_mass(p);
  return s;
}

double FiniteMeasure::tail(double v) const {
  double s = 0.0;
  for (const auto& p : parts_) s += part_tail(p, v);
  return s;
}

double FiniteMeasure::inverse_cdf(double u) const {
  if (parts_.empty()) throw DomainError("inverse_cdf of the zero measure");
  if (parts_.size() == 1) return part_icdf(parts_[0], u);
  // generalised inverse: smallest s with 1 - tail(s)/mass >= u
  const double mass = total_mass();
  const double target = (1.0 - u) * mass;
  double a = 0.0, b = 1.0;
  while (tail(b) > target) b *= 2.0;
  for (int i = 0; i < 200 && (b - a) > 1e-15 * b; ++i) {
    const double mid = 0.5 * (a + b);
    (tail(mid) > target ? a : b) = mid;
  }
  return b;
}

double FiniteMeasure::sample(Rng& rng) const {
  if (parts_.empty()) throw DomainError("sampling from the zero measure");
  if (parts_.size() == 1) return part_sample(parts_[0], rng);
  double pick = uniform01(rng) * total_mass();
  for (const auto& p : parts_) {
    const double m = part_mass(p);
    if (pick < m) return part_sample(p, rng);
    pick -= m;
  }
  return part_sample(parts_.back(), rng);
}

double FiniteMeasure::sample_above(double v, Rng& rng) const {
  const double total = tail(v);
  if (!(total > 0.0)) throw DomainError("no mass above the requested level");
  double pick = uniform01(rng) * total;
  const Part* chosen = &parts_.back();
  for (const auto& p : parts_) {
    const double m = part_tail(p, v);
    if (pick < m) {
      chosen = &p;
      break;
    }
    pick -= m;
  }
  const Part& p = *chosen;
  switch (p.kind) {
    case Kind::Point: return p.a;
    case Kind::Pareto5: return std::max(v, 1.0) * std::pow(uniform01(rng), -0.25);
    case Kind::Segment: {
      Part q = p;
      q.d = std::max(v, p.d);
      return part_sample(q, rng);
    }
    case Kind::Custom: {
      const double f = 1.0 - p.tail_fn(v) / p.b;
      return p.icdf_fn(f + uniform01(rng) * (1.0 - f));
    }
  }
  return v;
}

double FiniteMeasure::laplace_deficit(double lambda) const {
  double s = 0.0;
  for (const auto& p : parts_) {
    switch (p.kind) {
      case Kind::Point: s += p.b * -std::expm1(-lambda * p.a); break;
      case Kind::Pareto5: s += p.a * (0.25 - boost::math::expint(5, lambda)); break;
      case Kind::Segment: {
        const double k = p.b / tgamma1m(p.a);
        s += k * ((G(p.a, p.c, p.d) - G(p.a, p.c, p.e)) -
                  (G(p.a, p.c + lambda, p.d) - G(p.a, p.c + lambda, p.e)));
        break;
      }
      case Kind::Custom: {
        auto f = [&](double u) { return -std::expm1(-lambda * p.icdf_fn(u)); };
        s += p.b * numeric::integrate(f, 0.0, 1.0, 1e-10);
        break;
      }
    }
  }
  return s;
}

double FiniteMeasure::exp_moment_above(double c, double level) const {
  double s = 0.0;
  for (const auto& p : parts_) {
    switch (p.kind) {
      case Kind::Point:
        if (p.a > level) s += p.b * std::exp(c * p.a);
        break;
      case Kind::Pareto5:
        if (c > 0.0) return kInf;
        s += p.a * boost::math::expint(5, -c * std::max(level, 1.0)) * std::pow(std::max(level, 1.0), -4.0);
        break;
      case Kind::Segment: {
        const double lo = std::max(level, p.d);
        if (!(lo < p.e)) break;
        if (std::isinf(p.e) && c > p.c) return kInf;
        const double k = p.b * p.a / tgamma1m(p.a);
        auto f = [&](double x) { return std::exp((c - p.c) * x) * std::pow(x, -p.a - 1.0); };
        s += k * numeric::integrate(f, lo, p.e, 1e-12);
        break;
      }
      case Kind::Custom: {
        const double f0 = 1.0 - p.tail_fn(level) / p.b;
        auto f = [&](double u) { return std::exp(c * p.icdf_fn(u)); };
        s += p.b * numeric::integrate(f, f0, 1.0, 1e-10);
        break;
      }
    }
  }
  return s;
}

double FiniteMeasure::first_moment_above(double level) const {
  double s = 0.0;
  for (const auto& p : parts_) {
    switch (p.kind) {
      case Kind::Point:
        if (p.a > level) s += p.b * p.a;
        break;
      case Kind::Pareto5: s += p.a * std::pow(std::max(level, 1.0), -3.0) / 3.0; break;
      case Kind::Segment: {
        const double lo = std::max(level, p.d);
        if (!(lo < p.e)) break;
        const double k = p.b * p.a / tgamma1m(p.a);
        if (p.c == 0.0) {
          if (std::isinf(p.e)) return kInf;
          s += k * (std::pow(p.e, 1.0 - p.a) - std::pow(lo, 1.0 - p.a)) / (1.0 - p.a);
        } else {
          auto f = [&](double x) { return std::exp(-p.c * x) * std::pow(x, -p.a); };
          s += k * numeric::integrate(f, lo, p.e, 1e-12);
        }
        break;
      }
      case Kind::Custom: {
        const double f0 = 1.0 - p.tail_fn(level) / p.b;
        s += p.b * numeric::integrate([&](double u) { return p.icdf_fn(u); }, f0, 1.0, 1e-10);
        break;
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------- LevyModel

LevyModel LevyModel::stable(double alpha, double theta) {
  LevyModel m;
  m.alpha = alpha;
  m.theta = theta;
  m.validate();
  return m;
}

LevyModel LevyModel::tempered(double alpha, double q, double theta, double r) {
  LevyModel m;
  m.alpha = alpha;
  m.theta = theta;
  m.q = q;
  m.r = r;
  m.validate();
  return m;
}

Kind LevyModel::kind() const {
  if (!zeta.empty()) return Kind::DecomposedGeneral;
  if (q > 0.0) return Kind::TemperedStable;
  if (std::isfinite(r)) return Kind::TruncatedStable;
  return Kind::PureStable;
}

void LevyModel::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  if (!(theta > 0.0)) throw DomainError("theta must be positive");
  if (!(q >= 0.0)) throw DomainError("q must be nonnegative");
  if (!(r > 0.0)) throw DomainError("r must be positive");
  if (!(drift >= 0.0)) throw DomainError("drift must be nonnegative");
  if (!std::isfinite(zeta.total_mass())) throw DomainError("zeta must be a finite measure");
}

std::string LevyModel::describe() const {
  std::ostringstream os;
  os << "alpha=" << alpha << " theta=" << theta << " q=" << q << " r=" << r << " drift=" << drift
     << " zeta_mass=" << zeta.total_mass();
  return os.str();
}

double stable_part_phi(double alpha, double theta, double q, double r, double lambda) {
  if (lambda == 0.0) return 0.0;
  double v = theta * (std::pow(q + lambda, alpha) - std::pow(q, alpha));
  if (std::isfinite(r)) v -= theta / tgamma1m(alpha) * (G(alpha, q, r) - G(alpha, q + lambda, r));
  return v;
}

double eval_phi(const LevyModel& m, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("eval_phi needs lambda >= 0");
  const double v = m.drift * lambda + stable_part_phi(m.alpha, m.theta, m.q, m.r, lambda) +
                   m.zeta.laplace_deficit(lambda);
  if (!std::isfinite(v)) throw DomainError("invalid LevyModel: phi is not finite");
  return v;
}

double phi_by_quadrature(double drift, const std::function<double(double)>& density, double index,
                         double lambda, double rel_tol) {
  // s = u^{1/(1-index)} flattens (1-e^{-ls}) s^{-index-1} near 0
  const double p = 1.0 / (1.0 - index);
  auto near = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double s = std::pow(u, p);
    return -std::expm1(-lambda * s) * density(s) * p * std::pow(u, p - 1.0);
  };
  // s = w^{-1/index} turns an s^{-index-1} tail into a bounded integrand on (0,1]
  const double k = 1.0 / index;
  auto far = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double s = std::pow(w, -k);
    if (!std::isfinite(s)) return 0.0;
    return -std::expm1(-lambda * s) * density(s) * k * s / w;
  };
  return drift * lambda + numeric::integrate(near, 0.0, 1.0, rel_tol) + numeric::integrate(far, 0.0, 1.0, rel_tol);
}

double tail_nu(const LevyModel& m, double v) {
  if (v < 0.0 || std::isnan(v)) throw DomainError("tail_nu needs v > 0");
  if (v == 0.0) return kInf;
  const double s = stable_segment_tail(m.alpha, m.theta, m.q, v, m.r) + m.zeta.tail(v);
  return std::isfinite(s) ? s : kInf;
}

double sample_Sv(const LevyModel& m, double v, Rng& rng, Counters* counters, std::uint64_t cap) {
  if (!(v > 0.0)) throw DomainError("sample_Sv needs v > 0");
  const double ts = stable_segment_tail(m.alpha, m.theta, m.q, v, m.r);
  const double tz = m.zeta.tail(v);
  if (!(ts + tz > 0.0)) throw DomainError("sample_Sv: no Levy mass beyond v");
  if (counters) ++counters->iterations;
  if (uniform01(rng) * (ts + tz) >= ts) return m.zeta.sample_above(v, rng);

  const double a = std::pow(v, -m.alpha);
  const double b = std::isinf(m.r) ? 0.0 : std::pow(m.r, -m.alpha);
  auto pareto = [&] { return std::pow(a - uniform01(rng) * (a - b), -1.0 / m.alpha); };
  if (m.q == 0.0) return pareto();
  for (std::uint64_t i = 1; i <= cap; ++i) {
    const double s = pareto();
    if (uniform01(rng) < std::exp(-m.q * s)) return s;
    if (counters) ++counters->rejections;
  }
  throw SamplerError("sample_Sv: tempering rejection exceeded the iteration cap", cap,
                     stable_segment_tail(m.alpha, m.theta, m.q, v, m.r) /
                         stable_segment_tail(m.alpha, m.theta, 0.0, v, m.r));
}

double quantile_Sv(const LevyModel& m, double v, double u) {
  if (!(v > 0.0) || !(u >= 0.0 && u < 1.0)) throw DomainError("quantile_Sv domain");
  if (m.q == 0.0 && m.zeta.empty()) {
    const double a = std::pow(v, -m.alpha);
    const double b = std::isinf(m.r) ? 0.0 : std::pow(m.r, -m.alpha);
    return std::pow(a - u * (a - b), -1.0 / m.alpha);
  }
  const double tv = tail_nu(m, v);
  const double target = (1.0 - u) * tv;
  double lo = v, hi = 2.0 * v;
  while (tail_nu(m, hi) > target) hi *= 2.0;
  for (int i = 0; i < 200 && (hi - lo) > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (tail_nu(m, mid) > target ? lo : hi) = mid;
  }
  return hi;
}

Decomposition decompose_at_level(const LevyModel& m, double t) {
  if (!(t > 0.0)) throw DomainError("decompose_at_level needs t > 0");
  if (t > m.r) throw DomainError("decompose_at_level needs t <= r; subdivide the barrier first");
  Decomposition d{m.alpha, m.theta, m.q, t, FiniteMeasure{}, 0.0};
  if (t < m.r) d.zeta_tilde = FiniteMeasure::stable_segment(m.alpha, m.theta, m.q, t, m.r);
  d.zeta_tilde = d.zeta_tilde + m.zeta;
  d.upsilon = d.zeta_tilde.total_mass();
  return d;
}

// ---------------------------------------------------------------- Mittag-Leffler

double mittag_leffler_series(double beta, double delta, double x, int max_terms) {
  if (!(beta > 0.0 && delta > 0.0)) throw DomainError("Mittag-Leffler needs beta, delta > 0");
  if (x == 0.0) return 1.0 / std::tgamma(delta);
  const double lx = std::log(std::fabs(x));
  double sum = 0.0;
  double prev = kInf;
  for (int n = 0; n < max_terms; ++n) {
    const double mag = std::exp(n * lx - std::lgamma(beta * n + delta));
    const double term = (x < 0.0 && (n % 2)) ? -mag : mag;
    sum += term;
    if (mag < 1e-16 * std::fabs(sum) && mag < prev) break;
    prev = mag;
  }
  return sum;
}

double mittag_leffler_integral(double beta, double delta, double x) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("integral continuation needs beta in (0,1)");
  if (!(delta < 1.0 + beta)) throw DomainError("integral continuation needs delta < 1 + beta");
  const double pi = std::numbers::pi;
  const double s1 = std::sin(pi * (1.0 - delta));
  const double s2 = std::sin(pi * (1.0 - delta + beta));
  const double cb = std::cos(pi * beta);
  auto K = [&](double c) {
    if (c <= 0.0) return 0.0;
    return std::pow(c, (1.0 - delta) / beta) * std::exp(-std::pow(c, 1.0 / beta)) *
           (c * s1 - x * s2) / (c * c - 2.0 * c * x * cb + x * x) / (beta * pi);
  };
  const double ax = std::fabs(x);
  double v = numeric::integrate(K, 0.0, ax, 1e-13) + numeric::integrate(K, ax, kInf, 1e-13);
  if (x > 0.0) v += std::pow(x, (1.0 - delta) / beta) * std::exp(std::pow(x, 1.0 / beta)) / beta;
  return v;
}

double mittag_leffler(double beta, double delta, double x) {
  double v;
  if (std::fabs(x) <= 5.0 || beta >= 1.0 || delta >= 1.0 + beta) {
    const int terms = 400 + static_cast<int>(4.0 * std::pow(std::fabs(x), 1.0 / beta));
    v = mittag_leffler_series(beta, delta, x, terms);
  } else {
    v = mittag_leffler_integral(beta, delta, x);
  }
  return std::isfinite(v) ? v : kInf;
}

// ---------------------------------------------------------------- potential

namespace {
void require_closed_form_potential(const LevyModel& m) {
  if (m.drift != 0.0 || !m.zeta.empty() || std::isfinite(m.r))
    throw UnsupportedError("no closed-form potential for this model kind");
}
}  // namespace

double potential_density(const LevyModel& m, double s) {
  require_closed_form_potential(m);
  if (!(s > 0.0)) throw DomainError("potential density needs s > 0");
  if (m.q == 0.0) return std::pow(s, m.alpha - 1.0) / (m.theta * std::tgamma(m.alpha));
  return std::exp(-m.q * s) * std::pow(s, m.alpha - 1.0) *
         mittag_leffler(m.alpha, m.alpha, std::pow(m.q * s, m.alpha)) / m.theta;
}

double potential_mass(const LevyModel& m, double t) {
  require_closed_form_potential(m);
  if (!(t > 0.0)) throw DomainError("potential mass needs t > 0");
  if (m.q == 0.0) return std::pow(t, m.alpha) / (m.theta * std::tgamma(1.0 + m.alpha));
  // s = w^{1/alpha} removes the s^{alpha-1} singularity
  const double qa = std::pow(m.q, m.alpha);
  auto f = [&](double w) {
    return std::exp(-m.q * std::pow(w, 1.0 / m.alpha)) * mittag_leffler(m.alpha, m.alpha, qa * w);
  };
  return numeric::integrate(f, 0.0, std::pow(t, m.alpha), 1e-11) / (m.theta * m.alpha);
}

double exp_moment_levy(const LevyModel& m, double c, int nodes) {
  if (!(c > 0.0)) throw DomainError("exp_moment_levy needs c > 0");
  double s = 0.0;
  if (m.r > 1.0) {
    if (std::isinf(m.r) && c > m.q) return kInf;
    const double k = m.theta * m.alpha / tgamma1m(m.alpha);
    auto f = [&](double x) { return std::exp((c - m.q) * x) * std::pow(x, -m.alpha - 1.0); };
    s += k * numeric::integrate(f, 1.0, m.r, 1e-12, nodes);
  }
  const double z = m.zeta.exp_moment_above(c, 1.0);
  if (!std::isfinite(z)) return kInf;
  return s + z;
}

}  // namespace invsub::levy
