// Integer-supported distributions with exact rational probabilities.

#ifndef STEIN_DISTRIBUTIONS_HPP_
#define STEIN_DISTRIBUTIONS_HPP_

#include <span>
#include <vector>

#include "stein/rational.hpp"

namespace stein {

/// A probability distribution on consecutive integers
/// {offset, offset + 1, ..., offset + size() - 1}.
///
/// Invariants enforced on construction: entries are nonnegative, sum to
/// exactly one, and the first and last entries are nonzero (zeros at either
/// end are trimmed and the offset adjusted).
class ExactDist {
 public:
  /// Throws std::domain_error when the invariants cannot be met.
  ExactDist(long offset, std::vector<Rational> probs);

  /// Normalizes nonnegative integer weights by their sum.
  static ExactDist from_weights(long offset, std::span<const Integer> weights);

  static ExactDist point_mass(long at);

  long offset() const { return offset_; }
  long lo() const { return offset_; }
  long hi() const { return offset_ + static_cast<long>(probs_.size()) - 1; }
  size_t size() const { return probs_.size(); }
  std::span<const Rational> probs() const { return probs_; }

  /// P[X = k]; zero off the support.
  Rational pmf(long k) const;
  bool contains(long k) const { return k >= lo() && k <= hi(); }

  Rational mean() const;
  Rational variance() const;

  /// E f(X) for an arbitrary rational-valued f.
  template <class F>
  Rational expect(F&& f) const {
    Rational acc = 0;
    for (size_t i = 0; i < probs_.size(); ++i) {
      acc += probs_[i] * f(offset_ + static_cast<long>(i));
    }
    return acc;
  }

  friend bool operator==(const ExactDist&, const ExactDist&) = default;

 private:
  long offset_;
  std::vector<Rational> probs_;
};

/// Float-backed distribution for laws with infinite support. `omitted_mass`
/// bounds the probability lying outside the stored window.
struct FloatDist {
  long offset = 0;
  std::vector<double> probs;
  double omitted_mass = 0.0;

  double pmf(long k) const;
  long hi() const { return offset + static_cast<long>(probs.size()) - 1; }
  static FloatDist from_exact(const ExactDist& d);
};

/// Rounding data for the translated almost-symmetric binomial
/// Bi(n_hat, 1/2 - t) + shift with mean mu and variance close to sigma2.
struct BinHatParams {
  Rational mu;
  Rational sigma2;
  long n_hat = 0;  // ceil(4 sigma2)
  Rational delta;  // <-4 sigma2>, so n_hat = 4 sigma2 + delta
  Rational t;      // <-mu + 2 sigma2 + delta/2> / n_hat
  long shift = 0;  // -floor(-mu + 2 sigma2 + delta/2)

  /// Success probability of the underlying binomial, 1/2 - t.
  Rational success_probability() const;

  /// False when 1/2 - t < 0, which can only happen for n_hat = 1.
  bool defined() const { return success_probability() >= 0; }
};

/// Raw moments E X^r for r = 1..4. Entries past the requested order are 0.
struct MomentSet {
  Rational m1, m2, m3, m4;
  friend bool operator==(const MomentSet&, const MomentSet&) = default;
};

Integer catalan(long n);

/// N(n, k) = C(n, k-1) C(n, k) / n. Throws std::domain_error unless 1 <= k <= n.
Integer narayana_number(long n, long k);

/// pi(k) = N(n, k) / C_n on {1, ..., n}.
ExactDist narayana_dist(long n);

struct MeanVar {
  Rational mean;
  Rational variance;
};

/// mu_n = (n+1)/2, sigma_n^2 = (n-1)(n+1)/(4(2n-1)). Requires n >= 2.
MeanVar narayana_mean_var(long n);

/// Law of a sum of independent Bernoulli(p_i) indicators.
ExactDist poisson_binomial_dist(std::span<const Rational> p);

/// Number of good items among n drawn without replacement from N items of
/// which m are good.
ExactDist hypergeometric_dist(long N, long n, long m);

BinHatParams binhat_params(const Rational& mu, const Rational& sigma2);
ExactDist binhat_dist(const BinHatParams& params);

/// Translated Poisson TP(mu, sigma2): Poisson(sigma2 + <mu - sigma2>) shifted
/// by floor(mu - sigma2), truncated on the right once the remaining tail
/// mass is below `truncation_mass`.
FloatDist translated_poisson_dist(const Rational& mu, const Rational& sigma2,
                                  double truncation_mass = 1e-12);

/// Exact raw moments up to order `up_to` (1..4).
MomentSet raw_moments(const ExactDist& d, int up_to = 4);

}  // namespace stein

#endif  // STEIN_DISTRIBUTIONS_HPP_
