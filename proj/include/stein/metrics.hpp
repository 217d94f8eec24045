// Distances between integer-supported laws and the normal distribution.

#ifndef STEIN_METRICS_HPP_
#define STEIN_METRICS_HPP_

#include "stein/distributions.hpp"

namespace stein {

/// Absolute-error guarantee of normal_cdf / normal_pdf on |x| <= 12.
/// Outside that range the CDF tails are below 1e-30 and are returned as 0/1.
struct NormalEval {
  static constexpr double accuracy = 1e-12;
  static constexpr double range = 12.0;
};

double normal_cdf(double x);
double normal_pdf(double x);

/// Exact total variation distance, computed as half the L1 distance between
/// the probability mass functions over the union of the supports.
Rational tv_distance(const ExactDist& p, const ExactDist& q);

/// Half-L1 distance between float-backed laws. The result is within
/// p.omitted_mass + q.omitted_mass of the distance between the untruncated
/// laws.
double tv_distance_float(const FloatDist& p, const FloatDist& q);

/// sup_x |P[(X - mu)/sigma <= x] - Phi(x)|, attained at a support point or
/// its left limit.
double kolmogorov_vs_normal(const ExactDist& d, const Rational& mu,
                            double sigma);

/// sigma^{1/2} sup_k |P[X = k] - phi((k - mu)/sigma)/sigma| over all integers.
double local_limit_stat(const ExactDist& d, const Rational& mu, double sigma);

}  // namespace stein

#endif  // STEIN_METRICS_HPP_
