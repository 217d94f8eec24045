#include "stein/surd.hpp"

#include <cmath>
#include <stdexcept>

namespace stein {

Surd::Surd(Rational base, Rational radicand)
    : base_(std::move(base)), radicand_(std::move(radicand)) {
  if (radicand_ < 0) throw std::domain_error("negative radicand");
}

Surd Surd::scaled_root(const Rational& coefficient, const Rational& radicand,
                       const Rational& base) {
  if (coefficient < 0) throw std::domain_error("negative surd coefficient");
  return Surd(base, coefficient * coefficient * radicand);
}

double Surd::to_double() const {
  return base_.get_d() + std::sqrt(radicand_.get_d());
}

namespace {

int sign(const Rational& x) { return sgn(x); }

// Sign of sqrt(r) - sqrt(s) - d for r, s >= 0.
int sign_of_root_difference(const Rational& r, const Rational& s,
                            const Rational& d) {
  if (d >= 0) {
    // sqrt(r) vs d + sqrt(s); both sides nonnegative, square them.
    const Rational lhs = r - d * d - s;  // compare lhs with 2 d sqrt(s)
    if (lhs < 0) return -1;
    if (lhs == 0) return (d == 0 || s == 0) ? 0 : -1;
    const Rational rhs2 = 4 * d * d * s;
    return sign(lhs * lhs - rhs2);
  }
  // d < 0: sqrt(r) + |d| vs sqrt(s).
  const Rational ad = -d;
  const Rational lhs = s - r - ad * ad;  // compare with 2 |d| sqrt(r)
  if (lhs < 0) return 1;
  const Rational rhs2 = 4 * ad * ad * r;
  return -sign(lhs * lhs - rhs2);
}

}  // namespace

std::strong_ordering compare(const Surd& lhs, const Surd& rhs) {
  // lhs - rhs = sqrt(r) - sqrt(s) - (b - a)
  const int s = sign_of_root_difference(lhs.radicand_, rhs.radicand_,
                                        rhs.base_ - lhs.base_);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace stein
