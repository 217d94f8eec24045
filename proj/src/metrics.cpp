#include "stein/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stein {

double normal_cdf(double x) {
  if (x < -NormalEval::range) return 0.0;
  if (x > NormalEval::range) return 1.0;
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

Rational tv_distance(const ExactDist& p, const ExactDist& q) {
  const long lo = std::min(p.lo(), q.lo());
  const long hi = std::max(p.hi(), q.hi());
  Rational sum = 0;
  for (long k = lo; k <= hi; ++k) sum += abs(Rational(p.pmf(k) - q.pmf(k)));
  return sum / 2;
}

double tv_distance_float(const FloatDist& p, const FloatDist& q) {
  const long lo = std::min(p.offset, q.offset);
  const long hi = std::max(p.hi(), q.hi());
  double sum = 0.0;
  for (long k = lo; k <= hi; ++k) sum += std::abs(p.pmf(k) - q.pmf(k));
  return 0.5 * sum;
}

double kolmogorov_vs_normal(const ExactDist& d, const Rational& mu,
                            double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("kolmogorov_vs_normal: sigma <= 0");
  Rational cumulative = 0;
  double worst = 0.0;
  long k = d.offset();
  for (const auto& p : d.probs()) {
    const double x = Rational(k - mu).get_d() / sigma;
    const double phi = normal_cdf(x);
    const double left = cumulative.get_d();
    cumulative += p;
    const double right = cumulative.get_d();
    worst = std::max({worst, std::abs(left - phi), std::abs(right - phi)});
    ++k;
  }
  return worst;
}

double local_limit_stat(const ExactDist& d, const Rational& mu, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("local_limit_stat: sigma <= 0");
  auto gap = [&](long k) {
    const double density = normal_pdf(Rational(k - mu).get_d() / sigma) / sigma;
    return std::abs(d.pmf(k).get_d() - density);
  };
  double worst = 0.0;
  for (long k = d.lo(); k <= d.hi(); ++k) worst = std::max(worst, gap(k));
  // Off the support only the density term remains; once past mu it decreases
  // monotonically, so the first off-support point beyond mu bounds the rest.
  const double mu_d = mu.get_d();
  for (long k = d.lo() - 1;; --k) {
    worst = std::max(worst, gap(k));
    if (static_cast<double>(k) < mu_d) break;
  }
  for (long k = d.hi() + 1;; ++k) {
    worst = std::max(worst, gap(k));
    if (static_cast<double>(k) > mu_d) break;
  }
  return std::sqrt(sigma) * worst;
}

}  // namespace stein
