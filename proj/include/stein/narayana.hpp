// The Narayana law, its birth-death exchangeable pair, the moment ladder
// obtained from that pair, and the certification of the 12/n bound.

#ifndef STEIN_NARAYANA_HPP_
#define STEIN_NARAYANA_HPP_

#include "stein/distributions.hpp"
#include "stein/polynomial.hpp"
#include "stein/stein_core.hpp"
#include "stein/surd.hpp"

namespace stein::narayana {

/// Chain on {1..n}:
///   up(k)   = (n-k)(n-k+1) / (n(n-1))
///   down(k) = k(k-1) / (n(n-1))
///   stay(k) = 2(k-1)(n-k) / (n(n-1))
/// Throws std::domain_error for n < 2.
BirthDeathKernel kernel(long n);

struct Instance {
  long n;
  ExactDist dist;
  BirthDeathKernel kernel;
  Rational mu;
  Rational sigma2;
  Rational lambda;  // 2/(n-1)
};

Instance make_instance(long n);

/// E K .. E K^4 from the closed forms.
MomentSet closed_moments(long n);

/// The polynomial q_r(K) = up(K)((K+1)^r - K^r) + down(K)((K-1)^r - K^r),
/// whose expectation vanishes under the stationary law.
Polynomial stationarity_polynomial(long n, unsigned r);

/// Moments recovered from the pair alone: E K from q_1, E K^2 from q_2,
/// E K^3 from symmetry of K - mu, E K^4 from q_4 after the K^5 and K^6
/// coefficients cancel. Throws std::logic_error if a cancellation fails.
MomentSet moment_ladder(long n);

/// (n+1)(n-2) / ((2n-1)^2 (2n-3)(n-1)).
Rational var_s_closed(long n);

/// Each intermediate step of the Var S computation, evaluated two ways.
struct VarSIdentities {
  Rational var_s_kernel;  // from the kernel under pi
  Rational var_s_closed;
  Rational var_product;   // Var[(K-1)(n-K)] by summation
  Rational mean_product;  // E[(K-1)(n-K)] by summation
  Rational mean_product_sq;  // E[(K-1)^2 (n-K)^2] by summation

  bool scaling_identity = false;   // Var S = 4/(n^2(n-1)^2) Var[(K-1)(n-K)]
  bool mean_product_identity = false;
  bool mean_product_sq_identity = false;
  bool var_product_identity = false;
  bool closed_matches_kernel = false;

  bool all_hold() const {
    return scaling_identity && mean_product_identity && mean_product_sq_identity &&
           var_product_identity && closed_matches_kernel;
  }
};

VarSIdentities var_s_identities(long n);

struct Theorem1Report {
  long n = 0;
  BoundReport pair_bound;    // abstract bound via the kernel
  Surd intermediate;         // the explicit n-dependent bound
  Rational twelve_over_n;
  bool tv_le_intermediate = false;
  bool intermediate_le_twelve = false;
  bool intermediate_equals_pair_bound = false;
  bool radicand_below_half = false;
  bool tail_coefficient_le_11_2 = false;  // 5.6 n(2n-1)/((n-1)(n+1)) <= 11.2

  bool all_hold() const {
    return tv_le_intermediate && intermediate_le_twelve &&
           intermediate_equals_pair_bound && radicand_below_half &&
           tail_coefficient_le_11_2;
  }
};

Theorem1Report theorem1_certify(long n);

/// (1/n) sqrt(n^2 (n-2) / ((2n-3)(n-1)(n+1))) + 5.6 (2n-1) / ((n-1)(n+1)).
Surd intermediate_bound(long n);

struct CorollaryChecks {
  double kolmogorov = 0.0;
  double kolmogorov_bound = 0.0;  // 1.59 / sqrt(n)
  bool kolmogorov_ok = false;
  bool sigma2_ge_n_over_8 = false;
  double local_limit = 0.0;         // sigma^{1/2} sup_k |gap|
  double local_limit_scaled = 0.0;  // local_limit * sqrt(n)
};

CorollaryChecks corollary_checks(long n);

}  // namespace stein::narayana

#endif  // STEIN_NARAYANA_HPP_
