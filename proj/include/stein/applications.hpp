// Sums of independent indicators and the hypergeometric law, both
// approximated by the translated symmetric binomial through the abstract
// exchangeable-pair bound.

#ifndef STEIN_APPLICATIONS_HPP_
#define STEIN_APPLICATIONS_HPP_

#include <span>
#include <vector>

#include "stein/distributions.hpp"
#include "stein/stein_core.hpp"
#include "stein/surd.hpp"

namespace stein::applications {

// ---------------------------------------------------------------------------
// Poisson-binomial

struct PBInstance {
  std::vector<Rational> p;
  ExactDist dist;
  Rational mu;      // sum p_i
  Rational sigma2;  // sum p_i (1 - p_i)
  Rational lambda;  // 1 / |p|

  bool degenerate() const { return sigma2 == 0; }
};

/// Throws std::domain_error for an empty list or p_i outside [0, 1].
PBInstance make_pb_instance(std::span<const Rational> p);

/// Var S(xi) = (1/n^2) sum (1 - 2 p_i)^2 p_i (1 - p_i), where the pair
/// resamples one uniformly chosen indicator.
Rational pb_var_s(std::span<const Rational> p);

/// The pair resampling one uniformly chosen indicator, projected onto the
/// sum: up(k) = P[X' = X + 1 | X = k], down(k) = P[X' = X - 1 | X = k].
BirthDeathKernel pb_induced_kernel(std::span<const Rational> p);

struct Theorem3Report {
  BoundReport report;   // tv against bound6
  Surd pair_form;       // abstract bound with lambda = 1/n and pb_var_s
  bool forms_agree = false;
  bool degenerate = false;
  bool binhat_undefined = false;  // see BinHatParams::defined
};

/// (1.4 + 0.5 sqrt(sum (1 - 2p_i)^2 p_i (1 - p_i))) / sum p_i (1 - p_i).
Surd bound6(std::span<const Rational> p);

/// (2 + sqrt(sum p_i^3 (1 - p_i))) / sum p_i (1 - p_i).
Surd bound7(std::span<const Rational> p);

Theorem3Report theorem3_certify(std::span<const Rational> p);

struct Eq7Comparison {
  Surd bound6;
  Surd bound7;
  bool six_is_smaller = false;
  double tv_translated_poisson = 0.0;
  double tv_tp_error = 0.0;  // truncation allowance on the float distance
  Rational tv_binhat;
  bool tp_within_bound7 = false;
};

Eq7Comparison eq7_tp_comparison(std::span<const Rational> p);

// ---------------------------------------------------------------------------
// Hypergeometric

struct HypInstance {
  long N, n, m;
  ExactDist dist;
  Rational mu;      // nm/N
  Rational sigma2;  // mn(N-m)(N-n) / ((N-1) N^2)
  Rational lambda;  // N / (m (N - m + 1))
  BirthDeathKernel kernel;
};

/// up(k)   = ((m-k)/m) ((n-k)/(N-m+1))
/// down(k) = (k/m) ((N-m-n+k)/(N-m+1))
/// Requires 1 <= m < N and 1 <= n < N. Throws std::domain_error otherwise,
/// or if a stay probability would be negative.
BirthDeathKernel hyp_kernel(long N, long n, long m);

HypInstance make_hyp_instance(long N, long n, long m);

Rational hyp_variance(long N, long n, long m);

struct HypVariancePolynomial {
  bool s_matches_closed_form = false;  // S(k) = lambda(mn + (N-2m-2n)k + 2k^2)/N
  Rational variance_direct;           // Var((N-2m-2n)X + 2X^2) by summation
  Rational variance_closed;           // sigma^2 [bracket] / ((N-3)(N-2)(N-1))
  bool identity_holds = false;
  // Term-wise estimates (each term of the bracket divided by (N-3)(N-2)(N-1)).
  bool term_13n = false;
  bool term_45n = false;
  bool term_72n = false;
  bool first_inequality = false;
  bool second_inequality = false;

  bool all_hold() const {
    return s_matches_closed_form && identity_holds && term_13n && term_45n &&
           term_72n && first_inequality && second_inequality;
  }
};

/// Requires N >= 4 in addition to the kernel's parameter range.
HypVariancePolynomial hyp_s_and_varpoly(long N, long n, long m);

/// sqrt(6 (N-2m)^2 (N-2n)^2 / N^3 + 130) / (2 N^{1/2} sigma) + 1.4 / sigma^2.
Surd bound8(long N, long n, long m);

struct Theorem4Report {
  BoundReport report;   // tv against bound8
  BoundReport pair;     // tv against the abstract bound with exact Var S
  bool pair_le_bound8 = false;
  bool binhat_undefined = false;
};

Theorem4Report theorem4_certify(long N, long n, long m);

}  // namespace stein::applications

#endif  // STEIN_APPLICATIONS_HPP_
