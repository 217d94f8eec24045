// Exchangeable pairs from birth-death kernels, the Stein operator of the
// translated symmetric binomial, and the abstract total variation bound.
//
// A pair (X, X') is represented by the stationary law of X together with
// the one-step kernel that produces X'. Detailed balance certifies
// exchangeability; the ±1 step structure is built into the kernel type.

#ifndef STEIN_STEIN_CORE_HPP_
#define STEIN_STEIN_CORE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stein/distributions.hpp"
#include "stein/surd.hpp"

namespace stein {

/// One-step transition probabilities of a birth-death chain on [lo, hi].
class BirthDeathKernel {
 public:
  /// `up[i]` and `down[i]` belong to state lo + i. Throws std::domain_error
  /// if a probability is negative, up + down > 1, up(hi) != 0 or
  /// down(lo) != 0.
  BirthDeathKernel(long lo, std::vector<Rational> up, std::vector<Rational> down);

  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(up_.size()) - 1; }
  bool contains(long k) const { return k >= lo() && k <= hi(); }

  const Rational& up(long k) const;
  const Rational& down(long k) const;
  Rational stay(long k) const { return 1 - up(k) - down(k); }

 private:
  size_t index(long k) const;

  long lo_;
  std::vector<Rational> up_;
  std::vector<Rational> down_;
};

struct PairDiagnostics {
  std::optional<Rational> lambda;  // empty when every state is central
  Rational linearity_residual;
  Rational reversibility_residual;
  std::vector<Rational> s_values;  // S(k) for k = lo..hi
  Rational mean_s;
  Rational var_s;

  bool exact_pair() const {
    return lambda.has_value() && *lambda > 0 && linearity_residual == 0 &&
           reversibility_residual == 0;
  }
};

struct BoundReport {
  bool valid = false;  // hypotheses of the bound verified exactly
  bool holds = false;  // tv_exact <= bound, decided exactly
  Rational tv_exact;
  Surd bound;
  double slack_ratio = 0.0;  // tv / bound
  Surd term_var_s;           // sqrt(Var S) / (2 lambda sigma^2)
  Rational term_tail;        // 1.4 / sigma^2
  std::vector<std::pair<std::string, std::string>> params;
  std::string note;
};

/// max over adjacent states of |pi(i) up(i) - pi(i+1) down(i+1)|.
/// Throws std::domain_error when the kernel's states differ from the support.
Rational check_reversibility(const BirthDeathKernel& kernel, const ExactDist& pi);

/// Fits lambda in E[X' - mu | X] = (1 - lambda)(X - mu) at the first
/// non-central state and reports the worst residual over all states.
PairDiagnostics extract_lambda(const BirthDeathKernel& kernel, const ExactDist& pi);

/// S(k) = P[X' != X | X = k].
Rational s_function(const BirthDeathKernel& kernel, long k);

Rational var_s(const BirthDeathKernel& kernel, const ExactDist& pi);

/// sqrt(var_s) / (2 lambda sigma2) + 1.4 / sigma2.
Surd theorem2_bound(const Rational& lambda, const Rational& sigma2,
                    const Rational& var_s);

/// Exact TV between pi and Bi-hat(mu, sigma2) against the abstract bound.
/// Hypothesis failures (non-exchangeable pair, nonlinear regression, moment
/// mismatch) produce a report with valid == false instead of throwing.
BoundReport certify(const BirthDeathKernel& kernel, const ExactDist& pi,
                    const Rational& mu, const Rational& sigma2);

using IntFunction = std::function<Rational(long)>;

struct TestFunction {
  std::string name;
  IntFunction eval;
};

/// Monomials x^0..x^max_degree followed by `random_count` seeded rational
/// valued functions that are arbitrary on [lo - 1, hi + 2] and zero outside.
std::vector<TestFunction> make_test_functions(long lo, long hi, int max_degree,
                                              int random_count, std::uint64_t seed);

/// a(k) = n t^2 - (k - mu) t - delta/4.
Rational stein_a(const BinHatParams& params, long k);

/// (Bg)(k) = (k - mu) Theta g(k) - sigma^2 Delta g(k) + a(k) Delta g(k).
Rational stein_operator(const IntFunction& g, long k, const BinHatParams& params);

/// max_g |E (Bg)(Z)| for Z ~ law.
Rational characterization_residual(const ExactDist& law, const BinHatParams& params,
                                   const std::vector<TestFunction>& functions);

/// characterization_residual with Z ~ Bi-hat(params); zero for every g.
Rational characterization_check(const BinHatParams& params,
                                const std::vector<TestFunction>& functions);

/// A law differing from `d` by swapping the masses of two atoms with unequal
/// probability (chosen from `seed`). Laws with all masses equal instead get
/// half of the first atom moved onto the last one (or one step right for a
/// point mass).
ExactDist perturbed_law(const ExactDist& d, std::uint64_t seed);

/// Worst residual of the two pair identities
///   E[(X - mu) g(X)]       = (1/lambda)     E[up(X) Delta g(X)]
///   E[(X - mu) Theta g(X)] = (1/(2 lambda)) E[S(X) Delta g(X)]
/// over the supplied test functions.
Rational pair_identity_check(const BirthDeathKernel& kernel, const ExactDist& pi,
                             const Rational& mu, const Rational& lambda,
                             const std::vector<TestFunction>& functions);

/// Exact evaluation of the tail and |a| estimates used by the abstract bound.
struct TailEstimates {
  Rational sigma2;
  Rational outside_t;          // P[X not in {shift, ..., shift + n_hat}]
  Rational deviation_mass;     // P[|X - mu| >= 2 sigma^2 - 1]
  std::optional<Rational> chebyshev;  // sigma^2 / (2 sigma^2 - 1)^2
  Rational point61;            // 0.61 / sigma^2
  Rational e_abs_a;            // E|a(X)|
  Surd a_majorant;             // n t^2 + sigma t + delta/4

  bool large_variance = false;  // sigma^2 >= 1.4
  bool outside_le_deviation = false;
  bool deviation_le_chebyshev = false;
  bool chebyshev_le_point61 = false;
  bool e_abs_a_le_majorant = false;
  bool majorant_le_three_quarters = false;
  bool e_abs_a_le_three_quarters = false;

  /// Every inequality that is claimed in the sigma^2 >= 1.4 regime.
  bool all_hold() const {
    return outside_le_deviation && deviation_le_chebyshev &&
           chebyshev_le_point61 && e_abs_a_le_majorant &&
           majorant_le_three_quarters && e_abs_a_le_three_quarters;
  }
};

/// `params.sigma2` plays the role of Var X; callers pass the law's variance.
TailEstimates tail_and_a_estimates(const ExactDist& pi, const BinHatParams& params);

}  // namespace stein

#endif  // STEIN_STEIN_CORE_HPP_
