#include "stein/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace stein {

Polynomial::Polynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(unsigned degree, const Rational& c) {
  std::vector<Rational> coeffs(degree + 1, Rational(0));
  coeffs[degree] = c;
  return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coefficient(unsigned power) const {
  return power < coeffs_.size() ? coeffs_[power] : Rational(0);
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational Polynomial::expectation(std::span<const Rational> moments) const {
  if (coeffs_.size() > moments.size()) {
    throw std::domain_error("Polynomial::expectation: not enough moments");
  }
  Rational acc = 0;
  for (size_t j = 0; j < coeffs_.size(); ++j) acc += coeffs_[j] * moments[j];
  return acc;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + b * Polynomial::constant(-1);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial shifted_power(const Rational& shift, unsigned power) {
  std::vector<Rational> coeffs(power + 1);
  for (unsigned j = 0; j <= power; ++j) {
    coeffs[j] = Rational(binomial(power, j)) * pow(shift, power - j);
  }
  return Polynomial(std::move(coeffs));
}

}  // namespace stein
