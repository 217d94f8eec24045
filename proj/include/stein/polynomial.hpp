// Dense univariate polynomials with rational coefficients, used to expand
// the stationarity identities of birth-death pairs symbolically.

#ifndef STEIN_POLYNOMIAL_HPP_
#define STEIN_POLYNOMIAL_HPP_

#include <span>
#include <vector>

#include "stein/rational.hpp"

namespace stein {

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);  // lowest degree first
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(unsigned degree, const Rational& c = 1);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coefficient(unsigned power) const;
  std::span<const Rational> coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x) const;

  /// E p(X) given raw moments m[0] = 1, m[1] = E X, ...
  Rational expectation(std::span<const Rational> moments) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// (x + shift)^power expanded.
Polynomial shifted_power(const Rational& shift, unsigned power);

}  // namespace stein

#endif  // STEIN_POLYNOMIAL_HPP_
